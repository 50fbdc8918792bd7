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

// XOR coin flipping: each party contributes a bit and the coin is a ^ b.
// With simultaneous announcements neither bit can depend on the other, so
// one honest party makes the coin uniform. With ordered announcements the
// second mover can force any outcome.

#ifndef QPC_COINFLIP_HPP
#define QPC_COINFLIP_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "qpc/common.hpp"
#include "qpc/rng.hpp"
#include "qpc/simnet.hpp"

namespace qpc::coinflip {

struct Honest {};

/// Picks its bit after hearing the opponent's so that a ^ b == target.
struct Adaptive {
    int target = 0;
};

using CfStrategy = std::variant<Honest, Adaptive>;

/// "honest" or "adaptive:<0|1>".
CfStrategy parse_strategy(const std::string& spec);
std::string describe(const CfStrategy& s);

/// Throws std::invalid_argument when an adaptive party could never hear its
/// opponent first under the schedule (Simultaneous, or first mover).
void validate(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, std::size_t round = 1);

struct CfResult {
    int a = 0;
    int b = 0;
    int c = 0;
};

CfResult run_cf(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, Rng& rng,
                std::size_t round = 1);

/// |P(c=0) - 1/2| with the standard error of P(c=0).
Estimate bias_estimate(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, std::size_t trials,
                       std::uint64_t seed);

/// Exact bias: 0 when some party plays honestly without being overridden by
/// an adaptive second mover, 1/2 when an adaptive party moves second.
double analytic_bias(const Schedule& schedule, const CfStrategy& alice, const CfStrategy& bob, std::size_t round = 1);

}  // namespace qpc::coinflip

#endif  // QPC_COINFLIP_HPP
