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

// Monte Carlo estimators for the attack analyses: intercept-resend escape,
// bit spoiling by flips, internal cheating and Eve's guessing success.

#ifndef QPC_ATTACKS_HPP
#define QPC_ATTACKS_HPP

#include <cstddef>
#include <cstdint>

#include "qpc/adversary.hpp"
#include "qpc/common.hpp"
#include "qpc/improved.hpp"
#include "qpc/simnet.hpp"

namespace qpc::attacks {

constexpr std::size_t kMinTrials = 1000;

/// Which forward leg is attacked. Improved: k decoys among k+1 probe qubits,
/// checked in the encoder's random bases. Wcwz: one pair half among k decoys,
/// measured in the announced preparation bases.
enum class Target { Improved, Wcwz };

/// Exact: Eve intercepts exactly alpha*k decoys (alpha*k must be an
/// integer). PerQubit: each qubit independently with probability alpha.
enum class Targeting { Exact, PerQubit };

/// Fraction of trials in which the forward decoy check passes under
/// intercept-resend.
Estimate escape_probability_mc(Target target, double alpha, std::size_t k, std::size_t trials, std::uint64_t seed,
                               Targeting targeting = Targeting::Exact);

struct SpoilingResult {
    Estimate undetected_flip;  // decoded bit flipped and every check passed
    Estimate detected;         // some check failed
};

/// One improved-protocol transfer per trial with `count` flips in the bulk
/// basis on the return leg (a correct basis guess).
SpoilingResult spoiling_success_mc(std::size_t k, std::size_t trials, std::uint64_t seed, std::size_t count = 1,
                                   double check_fraction = 0.5);

struct CheatEffect {
    /// Rounds in which the honest party finds its own bit equal to the bit it
    /// decoded from the cheater.
    Estimate agreement;
    std::size_t rejected_disclosures = 0;
    std::size_t inconsistent = 0;
};

/// Improved-protocol runs with uniformly random inputs of length n (identity
/// hash key), with `cheat` acting for one party.
CheatEffect internal_cheat_effect_mc(const InternalCheat& cheat, std::size_t trials, std::uint64_t seed,
                                     const Schedule& schedule = Schedule::simultaneous(), std::size_t n = 1,
                                     std::size_t k = 8);

/// Agreement frequency with both parties honest, same setting as above.
Estimate honest_agreement_mc(std::size_t trials, std::uint64_t seed, std::size_t n = 1, std::size_t k = 8);

/// P(Eve's best guess of the transferred bit is right and no check fails)
/// for one improved-protocol transfer under an external strategy.
Estimate eve_success_mc(const AttackStrategy& strategy, std::size_t k, std::size_t trials, std::uint64_t seed);

}  // namespace qpc::attacks

#endif  // QPC_ATTACKS_HPP
