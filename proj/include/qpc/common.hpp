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

#ifndef QPC_COMMON_HPP
#define QPC_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qpc {

enum class Party { Alice, Bob };

inline constexpr Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

inline std::string_view to_string(Party p) { return p == Party::Alice ? "alice" : "bob"; }

/// Role of a quantum message in a probe-and-return exchange.
enum class Leg { Forward, Return };

inline std::string_view to_string(Leg l) { return l == Leg::Forward ? "forward" : "return"; }

/// Raised when a run violates a protocol rule that the state machine enforces
/// (e.g. a second disclosure, or a retry budget running out).
class ProtocolError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo proportion with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;

    static Estimate proportion(std::size_t hits, std::size_t trials) {
        if (trials == 0) {
            return {};
        }
        const double p = static_cast<double>(hits) / static_cast<double>(trials);
        return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
    }

    /// True when `expected` lies within `sigmas` standard errors. A zero
    /// standard error (degenerate sample) requires an exact match.
    bool within(double expected, double sigmas) const { return std::abs(value - expected) <= sigmas * std_error; }

    /// Same test, with the binomial standard error of the expected proportion.
    bool within_expected(double expected, double sigmas) const {
        const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
        return std::abs(value - expected) <= sigmas * se;
    }
};

}  // namespace qpc

#endif  // QPC_COMMON_HPP
