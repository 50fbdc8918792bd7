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

#include "qpc/attacks.hpp"

#include <cmath>
#include <stdexcept>

#include "qpc/parallel.hpp"
#include "qpc/wcwz.hpp"

namespace qpc::attacks {

namespace {

void require_trials(std::size_t trials) {
    if (trials < kMinTrials) {
        throw std::invalid_argument("Monte Carlo estimates need at least 1000 trials");
    }
}

struct SpoilTally {
    HitCount flipped;
    std::size_t detected = 0;

    void merge(const SpoilTally& o) {
        flipped.merge(o.flipped);
        detected += o.detected;
    }
};

struct CheatTally {
    HitCount agree;
    std::size_t rejected = 0;
    std::size_t inconsistent = 0;

    void merge(const CheatTally& o) {
        agree.merge(o.agree);
        rejected += o.rejected;
        inconsistent += o.inconsistent;
    }
};

CheatTally agreement_runs(const AttackStrategy& adversary, Party honest, std::size_t trials, std::uint64_t seed,
                          const Schedule& schedule, std::size_t n, std::size_t k) {
    improved::Params p;
    p.n = n;
    p.k = k;
    p.schedule = schedule;
    return run_trials<CheatTally>(trials, seed, [&](Rng& rng, std::size_t, CheatTally& acc) {
        const BitString a = BitString::random(n, rng);
        const BitString b = BitString::random(n, rng);
        const auto r = improved::run(a, b, p, adversary, rng, false);
        acc.rejected += r.rejected_disclosures;
        acc.inconsistent += r.outcome.verdict == Verdict::Inconsistent ? 1 : 0;
        const auto& own = honest == Party::Alice ? r.hash_a : r.hash_b;
        const auto& learned = honest == Party::Alice ? r.alice_learned : r.bob_learned;
        for (std::size_t i = 0; i < learned.size(); ++i) {
            ++acc.agree.trials;
            acc.agree.hits += own[i] == learned[i] ? 1 : 0;
        }
    });
}

}  // namespace

Estimate escape_probability_mc(Target target, double alpha, std::size_t k, std::size_t trials, std::uint64_t seed,
                               Targeting targeting) {
    require_trials(trials);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    InterceptResend eve{alpha, true, false, std::nullopt};
    if (targeting == Targeting::Exact) {
        const double ak = alpha * static_cast<double>(k);
        if (std::abs(ak - std::round(ak)) > 1e-9) {
            throw std::invalid_argument("exact targeting needs alpha*k to be an integer");
        }
        eve.oracle_decoy_count = static_cast<std::size_t>(std::llround(ak));
    }
    const AttackStrategy adversary = eve;
    const CheckPolicy policy{target == Target::Improved ? RevealMode::OneByOne : RevealMode::Batch, 0.0, 1.0};
    const auto count = run_trials<HitCount>(trials, seed, [&](Rng& rng, std::size_t, HitCount& acc) {
        const bool passed = target == Target::Improved ? improved::forward_decoy_trial(k, policy, adversary, rng)
                                                       : wcwz::forward_decoy_trial(1, k, policy, adversary, rng);
        ++acc.trials;
        acc.hits += passed ? 1 : 0;
    });
    return Estimate::proportion(count.hits, count.trials);
}

SpoilingResult spoiling_success_mc(std::size_t k, std::size_t trials, std::uint64_t seed, std::size_t count,
                                   double check_fraction) {
    require_trials(trials);
    if (count < 1 || count > k + 1) {
        throw std::invalid_argument("flip count must lie in [1, k+1]");
    }
    improved::Params p;
    p.n = 1;
    p.k = k;
    p.check_fraction = check_fraction;
    const AttackStrategy adversary = XFlip{count, true};
    const auto tally = run_trials<SpoilTally>(trials, seed, [&](Rng& rng, std::size_t, SpoilTally& acc) {
        const int bit = rng.bit();
        const auto r = improved::transfer_bit(bit, improved::Direction::AtoB, p, adversary, rng, false);
        ++acc.flipped.trials;
        if (!r.learned_bit) {
            ++acc.detected;
        } else if (*r.learned_bit != bit) {
            ++acc.flipped.hits;
        }
    });
    return {Estimate::proportion(tally.flipped.hits, tally.flipped.trials),
            Estimate::proportion(tally.detected, tally.flipped.trials)};
}

CheatEffect internal_cheat_effect_mc(const InternalCheat& cheat, std::size_t trials, std::uint64_t seed,
                                     const Schedule& schedule, std::size_t n, std::size_t k) {
    require_trials(trials);
    const auto t = agreement_runs(cheat, other(cheat.party), trials, seed, schedule, n, k);
    return {Estimate::proportion(t.agree.hits, t.agree.trials), t.rejected, t.inconsistent};
}

Estimate honest_agreement_mc(std::size_t trials, std::uint64_t seed, std::size_t n, std::size_t k) {
    require_trials(trials);
    const auto t = agreement_runs(NoAttack{}, Party::Bob, trials, seed, Schedule::simultaneous(), n, k);
    return Estimate::proportion(t.agree.hits, t.agree.trials);
}

Estimate eve_success_mc(const AttackStrategy& strategy, std::size_t k, std::size_t trials, std::uint64_t seed) {
    require_trials(trials);
    if (!is_external(strategy)) {
        throw std::invalid_argument("eve_success_mc needs an external strategy");
    }
    improved::Params p;
    p.n = 1;
    p.k = k;
    const auto count = run_trials<HitCount>(trials, seed, [&](Rng& rng, std::size_t, HitCount& acc) {
        const int bit = rng.bit();
        const auto r = improved::transfer_bit(bit, improved::Direction::AtoB, p, strategy, rng, false);
        ++acc.trials;
        if (!r.learned_bit) {
            return;
        }
        const int guess = eve_guess_encoded_bit(r.transcript.eve, r.forward_message, r.state.code_position_forward,
                                                r.return_message, r.state.code_position_return, rng);
        acc.hits += guess == bit ? 1 : 0;
    });
    return Estimate::proportion(count.hits, count.trials);
}

}  // namespace qpc::attacks
