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

#include "qpc/outcome.hpp"

#include <stdexcept>

namespace qpc {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Equal: return "equal";
        case Verdict::Differ: return "differ";
        case Verdict::EveDetected: return "eve_detected";
        case Verdict::Inconsistent: return "inconsistent";
    }
    return "?";
}

Outcome Outcome::differ(std::size_t round, std::vector<std::size_t> positions, std::size_t bits) {
    if (positions.empty()) {
        throw std::invalid_argument("a Differ outcome needs at least one differing position");
    }
    return {Verdict::Differ, round, std::move(positions), bits, {}};
}

nlohmann::json to_json(const Outcome& o) {
    nlohmann::json j{{"verdict", std::string(to_string(o.verdict))}, {"round", o.round}};
    if (o.verdict == Verdict::Differ) {
        j["positions"] = o.positions;
    }
    if (o.verdict == Verdict::Differ || o.verdict == Verdict::Equal) {
        j["bits_revealed"] = o.bits_revealed;
    }
    if (o.verdict == Verdict::EveDetected) {
        j["check_site"] = o.check_site;
    }
    return j;
}

}  // namespace qpc
