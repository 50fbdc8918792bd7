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

#include "qpc/coinflip.hpp"

#include <cmath>
#include <stdexcept>

#include "qpc/parallel.hpp"

namespace qpc::coinflip {

namespace {

const Adaptive* adaptive(const CfStrategy& s) { return std::get_if<Adaptive>(&s); }

}  // namespace

CfStrategy parse_strategy(const std::string& spec) {
    if (spec == "honest") {
        return Honest{};
    }
    if (spec == "adaptive:0" || spec == "adaptive:1") {
        return Adaptive{spec.back() - '0'};
    }
    throw std::invalid_argument("unknown coin-flip strategy '" + spec + "' (honest | adaptive:0 | adaptive:1)");
}

std::string describe(const CfStrategy& s) {
    if (const auto* a = adaptive(s)) {
        return "adaptive:" + std::to_string(a->target);
    }
    return "honest";
}

void validate(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, std::size_t round) {
    const auto first = schedule.first_mover(round);
    for (Party p : {Party::Alice, Party::Bob}) {
        if (adaptive(p == Party::Alice ? alice : bob) == nullptr) {
            continue;
        }
        if (!first) {
            throw std::invalid_argument("an adaptive coin-flip party needs a sequential schedule");
        }
        if (*first == p) {
            throw std::invalid_argument(std::string(to_string(p)) + " moves first and cannot adapt");
        }
    }
}

CfResult run_cf(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, Rng& rng,
                std::size_t round) {
    validate(schedule, alice, bob, round);
    auto builder = [&rng](const CfStrategy& s) -> AnnouncementBuilder<int> {
        if (const auto* a = adaptive(s)) {
            const int target = a->target;
            return [target](const std::optional<int>& opponent) { return *opponent ^ target; };
        }
        return [&rng](const std::optional<int>&) { return rng.bit(); };
    };
    const auto ex = simultaneous_exchange<int>(builder(alice), builder(bob), schedule, round);
    CfResult r;
    r.a = ex.bob_received;
    r.b = ex.alice_received;
    r.c = r.a ^ r.b;
    return r;
}

Estimate bias_estimate(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, std::size_t trials,
                       std::uint64_t seed) {
    validate(schedule, alice, bob);
    const auto count = run_trials<HitCount>(trials, seed, [&](Rng& rng, std::size_t, HitCount& acc) {
        ++acc.trials;
        acc.hits += run_cf(schedule, alice, bob, rng).c == 0 ? 1 : 0;
    });
    Estimate e = Estimate::proportion(count.hits, count.trials);
    e.value = std::abs(e.value - 0.5);
    return e;
}

double analytic_bias(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, std::size_t round) {
    validate(schedule, alice, bob, round);
    // validate() leaves an adaptive party only in the second-mover seat.
    return adaptive(alice) || adaptive(bob) ? 0.5 : 0.0;
}

}  // namespace qpc::coinflip
