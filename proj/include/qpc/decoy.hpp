// Copyright 2026 The qpc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPC_DECOY_HPP
#define QPC_DECOY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qpc/qstate.hpp"
#include "qpc/rng.hpp"
#include "qpc/simnet.hpp"

namespace qpc {

/// A check qubit: where it sits, how it was prepared, and (once measured)
/// the basis and outcome the checking party obtained.
struct DecoyRecord {
    std::size_t position = 0;
    PrepLabel prepared = PrepLabel::Zero;
    std::optional<Basis> measured_basis;
    std::optional<int> outcome;
};

enum class RevealMode { OneByOne, Batch };

struct CheckPolicy {
    RevealMode reveal = RevealMode::OneByOne;
    double threshold = 0.0;  // tolerated conflict rate; 0 is the ideal scenario
    double fraction = 1.0;   // portion of decoys revealed and checked

    bool ideal() const { return threshold == 0.0; }
};

/// k decoys with labels uniform over {0, 1, +, -}. Positions are unset
/// until insert().
std::vector<DecoyRecord> generate(std::size_t k, Rng& rng);

struct Insertion {
    QuantumPayload merged;
    std::vector<std::size_t> code_positions;
};

/// Interleaves code qubits (order preserved) with the decoys' prepared states.
/// The decoy slots are a uniform random subset of the merged sequence; each
/// record's position is filled in.
Insertion insert(QuantumPayload code, std::vector<DecoyRecord>& decoys, Rng& rng);

/// Same-basis measurement that disagrees with the prepared bit.
bool conflicts(const DecoyRecord& r);

enum class CheckStatus { Pass, FailConflict, FailRate };

struct CheckResult {
    CheckStatus status = CheckStatus::Pass;
    std::size_t first_conflict = 0;  // index into the checked records
    std::size_t same_basis = 0;
    std::size_t conflicts = 0;
    double error_rate = 0.0;

    bool passed() const { return status == CheckStatus::Pass; }
};

/// Checks records in order. With OneByOne reveal and a zero threshold the
/// check stops at the first conflict; otherwise the conflict rate among
/// same-basis records is compared with the threshold. Cross-basis records
/// carry no information and are left out of the denominator.
CheckResult verify(std::span<const DecoyRecord> records, const CheckPolicy& policy);

/// Indices of the ceil(fraction * count) records to reveal, uniformly chosen,
/// in increasing order.
std::vector<std::size_t> select_portion(std::size_t count, double fraction, Rng& rng);

}  // namespace qpc

#endif  // QPC_DECOY_HPP
