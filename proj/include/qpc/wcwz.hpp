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

// Entanglement-based group comparison (the WCWZ protocol).
//
// Each party splits its hash into groups of m bits. Per group, each party
// prepares one Bell pair per bit (Phi+ or Psi+ at random), sends the first
// halves to the partner among decoys, gets them back with the partner's
// hash bits encoded as X, encodes its own bits, and Bell-measures each
// reunited pair. A pair returns to its recorded label iff the two bits
// agree, since X^a X^b = I exactly when a == b.
//
// The original form compares only the first group, so it can report equal
// hashes that differ later. The fixed form repeats per group until a
// difference is found or all groups pass.

#ifndef QPC_WCWZ_HPP
#define QPC_WCWZ_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qpc/adversary.hpp"
#include "qpc/decoy.hpp"
#include "qpc/hashperm.hpp"
#include "qpc/outcome.hpp"
#include "qpc/qstate.hpp"
#include "qpc/simnet.hpp"

namespace qpc::wcwz {

struct Params {
    std::size_t n = 6;
    std::size_t m = 2;
    std::size_t k = 8;
    bool fixed = true;
    CheckPolicy policy{RevealMode::Batch, 0.0, 1.0};
    PermKey key = PermKey::identity();

    void validate() const;
};

/// ceil(n/m) groups of m bits; the last group is shorter when m does not divide n.
std::vector<BitString> partition_hash(const BitString& h, std::size_t m);

/// X on the travelling half of each pair whose bit is 1.
std::vector<Ket4> encode_sequence(std::vector<Ket4> halves, const BitString& bits);

struct GroupState {
    std::vector<BellLabel> initial_bells;
    std::vector<Ket4> travelling;
    std::vector<bool> encodings_applied;
};

enum class GroupStatus { Compared, EveDetected, Inconsistent };

struct GroupResult {
    GroupStatus status = GroupStatus::Compared;
    /// Per-position "pair returned to its initial label", as seen by each owner.
    std::vector<bool> alice_identical;
    std::vector<bool> bob_identical;
    std::string check_site;

    bool all_identical() const;
};

/// One pass of steps 3-8 over a group. `round` is used for logging only.
GroupResult compare_group(const BitString& group_a, const BitString& group_b, const Params& params,
                          const AttackStrategy& adversary, Channel& channel, Rng& rng, std::size_t round = 1);

struct RunResult {
    Outcome outcome;
    Transcript transcript;
    BitString hash_a;
    BitString hash_b;
};

RunResult run(const BitString& a, const BitString& b, const Params& params, const AttackStrategy& adversary, Rng& rng,
              bool record_events = true);

/// Forward leg only: m pair halves among k decoys, tapped by `adversary`,
/// decoys measured in the announced preparation basis. True if the check passes.
bool forward_decoy_trial(std::size_t m, std::size_t k, const CheckPolicy& policy, const AttackStrategy& adversary,
                         Rng& rng);

}  // namespace qpc::wcwz

#endif  // QPC_WCWZ_HPP
