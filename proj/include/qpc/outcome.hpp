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

#ifndef QPC_OUTCOME_HPP
#define QPC_OUTCOME_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qpc {

enum class Verdict { Equal, Differ, EveDetected, Inconsistent };

std::string_view to_string(Verdict v);

/// Terminal result of one comparison run.
struct Outcome {
    Verdict verdict = Verdict::Equal;
    /// 1-based round (group for WCWZ, bit for the improved protocol) at which
    /// the run stopped; for Equal, the number of rounds completed.
    std::size_t round = 0;
    /// Differ: 0-based hash-bit indices found to differ (never empty).
    std::vector<std::size_t> positions;
    /// Hash bits compared up to and including the final round; what each
    /// party learns about the other's hash on abort.
    std::size_t bits_revealed = 0;
    /// EveDetected: which check fired.
    std::string check_site;

    static Outcome equal(std::size_t rounds, std::size_t bits) { return {Verdict::Equal, rounds, {}, bits, {}}; }
    static Outcome differ(std::size_t round, std::vector<std::size_t> positions, std::size_t bits);
    static Outcome eve_detected(std::size_t round, std::string site) {
        return {Verdict::EveDetected, round, {}, 0, std::move(site)};
    }
    static Outcome inconsistent(std::size_t round) { return {Verdict::Inconsistent, round, {}, 0, {}}; }
};

nlohmann::json to_json(const Outcome& o);

}  // namespace qpc

#endif  // QPC_OUTCOME_HPP
