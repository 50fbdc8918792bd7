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

#include <gtest/gtest.h>

namespace qpc::coinflip {
namespace {

TEST(RunCf, XorOfContributions) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        const auto r = run_cf(Schedule::simultaneous(), Honest{}, Honest{}, rng);
        EXPECT_EQ(r.c, r.a ^ r.b);
    }
}

TEST(RunCf, SecondMoverForcesTarget) {
    for (int target : {0, 1}) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            Rng rng(seed);
            ASSERT_EQ(run_cf(Schedule::ordered(Party::Alice), Honest{}, Adaptive{target}, rng).c, target);
        }
    }
    Rng rng(1);
    EXPECT_EQ(run_cf(Schedule::alternating(), Adaptive{1}, Honest{}, rng, 1).c, 1);
}

TEST(RunCf, AdaptationNeedsASequentialSecondSeat) {
    Rng rng(2);
    EXPECT_THROW(run_cf(Schedule::simultaneous(), Honest{}, Adaptive{0}, rng), std::invalid_argument);
    EXPECT_THROW(run_cf(Schedule::ordered(Party::Bob), Honest{}, Adaptive{0}, rng), std::invalid_argument);
    EXPECT_THROW(run_cf(Schedule::ordered(Party::Alice), Adaptive{0}, Adaptive{1}, rng), std::invalid_argument);
}

TEST(Bias, Estimates) {
    const auto sim = bias_estimate(Schedule::simultaneous(), Honest{}, Honest{}, 100000, 3);
    EXPECT_LE(sim.value, 3 * sim.std_error);
    EXPECT_EQ(analytic_bias(Schedule::simultaneous(), Honest{}, Honest{}), 0.0);
    const auto ord = bias_estimate(Schedule::ordered(Party::Bob), Honest{}, Honest{}, 100000, 4);
    EXPECT_LE(ord.value, 3 * ord.std_error);
    const auto forced = bias_estimate(Schedule::ordered(Party::Alice), Honest{}, Adaptive{0}, 1000, 5);
    EXPECT_EQ(forced.value, 0.5);
    EXPECT_EQ(analytic_bias(Schedule::ordered(Party::Alice), Honest{}, Adaptive{0}), 0.5);
}

TEST(Strategy, Parse) {
    EXPECT_TRUE(std::holds_alternative<Honest>(parse_strategy("honest")));
    EXPECT_EQ(std::get<Adaptive>(parse_strategy("adaptive:1")).target, 1);
    EXPECT_EQ(describe(parse_strategy("adaptive:0")), "adaptive:0");
    EXPECT_THROW(parse_strategy("adaptive:2"), std::invalid_argument);
}

}  // namespace
}  // namespace qpc::coinflip
