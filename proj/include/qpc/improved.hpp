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

// Bit-by-bit comparison without entanglement or quantum memory.
//
// For every hash bit each direction runs a probe-and-return exchange. The
// prober sends k+1 random BB84 qubits. The encoder measures k of them at
// once as decoys, applies a bit flip (iY) for bit 1 to the one left over (the code qubit), hides
// it among k fresh decoys and sends the sequence straight back. The prober
// measures the whole return in one random bulk basis. Forward decoys are
// then checked one by one, which tells the prober where the code qubit was;
// if its preparation basis differs from the bulk basis the exchange is
// discarded and restarted. After both directions, a portion of each return
// sequence's decoys is checked, both encoders disclose their return code
// positions under the schedule, each prober decodes the encoded bit as
// (measured ^ prepared), and the two verdicts are cross-checked.
//
// Step names used in transcripts: probe, encode, bulk_measure,
// forward_decoy_check, basis_match, return_decoy_check, code_disclosure,
// decode, cross_check.

#ifndef QPC_IMPROVED_HPP
#define QPC_IMPROVED_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpc/adversary.hpp"
#include "qpc/decoy.hpp"
#include "qpc/hashperm.hpp"
#include "qpc/outcome.hpp"
#include "qpc/simnet.hpp"

namespace qpc::improved {

struct Params {
    std::size_t n = 6;
    std::size_t k = 8;
    double check_fraction = 0.5;
    CheckPolicy policy{RevealMode::OneByOne, 0.0, 1.0};
    Schedule schedule = Schedule::simultaneous();
    PermKey key = PermKey::identity();
    std::size_t max_retries = 64;
    /// Encode with X alone. X fixes |+> and |->, so an X-basis code qubit
    /// then always decodes as 0; kept to exhibit that failure. The default
    /// encoding is iY = XZ, a bit flip in both bases.
    bool literal_x = false;

    /// Full-protocol validation (k >= 1). Single-exchange analysis helpers
    /// also accept k = 0.
    void validate() const;
};

/// AtoB: Alice probes and Bob encodes his bit; BtoA the reverse.
enum class Direction { AtoB, BtoA };

inline Party prober_of(Direction d) { return d == Direction::AtoB ? Party::Alice : Party::Bob; }
inline Party encoder_of(Direction d) { return other(prober_of(d)); }
std::string_view to_string(Direction d);

struct BitRoundState {
    Direction direction = Direction::AtoB;
    PrepLabel code_prep = PrepLabel::Zero;
    std::size_t code_position_forward = 0;
    std::size_t code_position_return = 0;
    Basis receiver_bulk_basis = Basis::Z;  // the prober's basis for the returned sequence
    std::size_t retries = 0;
};

/// One direction after the basis-matched exchange, before the return-decoy
/// check and disclosure.
struct PendingTransfer {
    BitRoundState state;
    std::vector<int> bulk_outcomes;          // prober's results on the returned sequence
    std::vector<DecoyRecord> return_decoys;  // encoder's fresh decoys
    std::uint64_t forward_message = 0;
    std::uint64_t return_message = 0;
    /// Encoder's own belief of the bit it conveyed.
    int intended_bit = 0;
    /// AdaptAfterDisclosure cheater: slot of the spare code qubit that
    /// decodes to the opposite value of the real one.
    std::optional<std::size_t> spare_position;
};

struct PhaseAbort {
    std::string site;
};

std::variant<PendingTransfer, PhaseAbort> probe_and_encode(int owner_bit, Direction direction, const Params& params,
                                                           const AttackStrategy& adversary, Channel& channel,
                                                           Rng& rng, std::size_t round = 1);

/// The encoder reveals the states of a check_fraction portion of its return
/// decoys; the prober compares them with its bulk-basis results.
CheckResult return_decoy_check(const PendingTransfer& pending, const Params& params, Channel& channel, Rng& rng);

/// X^bit (literal) or (XZ)^bit on the code qubit.
Ket encode_bit(const Ket& code, int bit, bool literal_x = false);

/// Prober's decoding: unchanged state means 0, flipped means 1.
int decode(const PendingTransfer& pending, std::size_t disclosed_position);

struct TransferResult {
    std::optional<int> learned_bit;  // nullopt when a check aborted the exchange
    std::string abort_site;
    BitRoundState state;
    std::uint64_t forward_message = 0;
    std::uint64_t return_message = 0;
    Transcript transcript;
};

/// One direction end to end: probe_and_encode, return-decoy check, the
/// encoder's disclosure and decoding.
TransferResult transfer_bit(int owner_bit, Direction direction, const Params& params, const AttackStrategy& adversary,
                            Rng& rng, bool record_events = true);

struct RunResult {
    Outcome outcome;
    Transcript transcript;
    BitString hash_a;
    BitString hash_b;
    std::vector<int> alice_learned;  // Alice's decoded copy of Bob's hash bits
    std::vector<int> bob_learned;
    std::size_t rejected_disclosures = 0;
    std::size_t retries = 0;
};

RunResult run(const BitString& a, const BitString& b, const Params& params, const AttackStrategy& adversary, Rng& rng,
              bool record_events = true);

/// Forward probe only: k+1 qubits tapped by `adversary`, k of them measured
/// by the encoder in random bases and checked. True if the check passes.
bool forward_decoy_trial(std::size_t k, const CheckPolicy& policy, const AttackStrategy& adversary, Rng& rng);

}  // namespace qpc::improved

#endif  // QPC_IMPROVED_HPP
