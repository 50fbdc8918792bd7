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

// Attack strategies.
//
// External strategies are channel taps applied to quantum payloads in flight.
// A tap sees only the payload it intercepts, its own parameters, its rng and
// a TapContext. The context carries experiment-harness conditioning (e.g.
// "assume Eve guessed the receiver's basis"); strategies that do not opt in
// through an `oracle_*` flag never read it.
//
// Internal strategies are not taps: the protocol engines consult them when
// the named party acts.

#ifndef QPC_ADVERSARY_HPP
#define QPC_ADVERSARY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpc/common.hpp"
#include "qpc/qstate.hpp"
#include "qpc/rng.hpp"

namespace qpc {

struct NoAttack {};

/// Measure-and-resend in a uniformly random basis per intercepted qubit.
struct InterceptResend {
    double alpha = 1.0;  // per-qubit interception probability
    bool forward = true;
    bool returns = true;
    /// Conditioning: intercept exactly this many of the payload's decoy
    /// slots (uniformly chosen from TapContext::decoy_positions) instead of
    /// Bernoulli(alpha) per qubit.
    std::optional<std::size_t> oracle_decoy_count;
};

/// Measure every qubit of a returned sequence in one basis and resend.
struct GuessBasisReturn {
    std::optional<Basis> guess;  // nullopt: uniform per message
    bool oracle_correct = false;  // use the receiver's true bulk basis
};

/// Flip `count` uniformly chosen qubits of a returned sequence without
/// measuring. The flip is X unless `oracle_bulk_basis` is set, in which case
/// it is the bit flip of the receiver's bulk basis (X for Z, Z for X).
struct XFlip {
    std::size_t count = 1;
    bool oracle_bulk_basis = false;
};

enum class CheatPolicy {
    /// Encode a coin flip instead of the own hash bit on the code qubit.
    AlterCodeQubit,
    /// Keep a spare code qubit and try to choose which one to disclose after
    /// seeing the opponent's disclosure.
    AdaptAfterDisclosure,
};

/// Dishonest legitimate party.
struct InternalCheat {
    Party party = Party::Alice;
    CheatPolicy policy = CheatPolicy::AlterCodeQubit;
};

/// Coin flipping: the second mover picks its bit to force `target`.
struct AdaptiveSecondMover {
    int target = 0;
};

using AttackStrategy = std::variant<NoAttack, InterceptResend, GuessBasisReturn, XFlip, InternalCheat, AdaptiveSecondMover>;

std::string describe(const AttackStrategy& s);

/// Parses "none", "intercept:<alpha>", "guess-return[:Z|X|oracle]",
/// "xflip:<count>[:oracle]", "cheat:<alice|bob>:<alter-code|adapt>",
/// "adaptive:<0|1>".
AttackStrategy parse_attack(const std::string& spec);

bool is_external(const AttackStrategy& s);

struct TapContext {
    Leg leg = Leg::Forward;
    std::optional<Basis> bulk_basis;
    std::vector<std::size_t> decoy_positions;
};

struct EveObservation {
    std::uint64_t message = 0;
    Leg leg = Leg::Forward;
    std::size_t position = 0;
    Basis basis = Basis::Z;
    int outcome = 0;
};

/// Everything Eve's taps have produced. Adversary decisions are functions of
/// (strategy, rng, EveView) only.
struct EveView {
    std::vector<EveObservation> observed;
    std::size_t flips_applied = 0;

    const EveObservation* find(std::uint64_t message, std::size_t position) const;
};

/// Applies `strategy` to a payload in flight on message `message_id`.
void tap_quantum(std::vector<Qubit>& payload, const AttackStrategy& strategy, const TapContext& context, Rng& rng,
                 EveView& view, std::uint64_t message_id);

/// Eve's guess of a bit encoded by X^bit on a code qubit, given her view and
/// the publicly disclosed code positions of the probe and return messages.
/// Uses both observations when she measured both in the same basis;
/// otherwise guesses uniformly.
int eve_guess_encoded_bit(const EveView& view, std::uint64_t forward_message, std::size_t forward_position,
                          std::uint64_t return_message, std::size_t return_position, Rng& rng);

}  // namespace qpc

#endif  // QPC_ADVERSARY_HPP
