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

#include "qpc/decoy.hpp"

#include <cmath>
#include <stdexcept>

namespace qpc {

std::vector<DecoyRecord> generate(std::size_t k, Rng& rng) {
    std::vector<DecoyRecord> out(k);
    for (auto& r : out) {
        r.prepared = static_cast<PrepLabel>(rng.below(4));
    }
    return out;
}

Insertion insert(QuantumPayload code, std::vector<DecoyRecord>& decoys, Rng& rng) {
    const std::size_t total = code.size() + decoys.size();
    Insertion out;
    out.merged.reserve(total);
    out.code_positions.reserve(code.size());
    std::size_t decoys_left = decoys.size();
    std::size_t next_code = 0;
    std::size_t next_decoy = 0;
    for (std::size_t pos = 0; pos < total; ++pos) {
        // Selection sampling: the decoy slots form a uniform subset.
        if (decoys_left > 0 && rng.below(total - pos) < decoys_left) {
            decoys[next_decoy].position = pos;
            out.merged.emplace_back(prepare(decoys[next_decoy].prepared));
            ++next_decoy;
            --decoys_left;
        } else {
            out.code_positions.push_back(pos);
            out.merged.push_back(std::move(code[next_code++]));
        }
    }
    return out;
}

bool conflicts(const DecoyRecord& r) {
    return r.measured_basis && r.outcome && *r.measured_basis == basis_of(r.prepared) && *r.outcome != bit_of(r.prepared);
}

CheckResult verify(std::span<const DecoyRecord> records, const CheckPolicy& policy) {
    CheckResult res;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (!r.measured_basis || !r.outcome) {
            throw std::invalid_argument("verify: decoy record without measurement data");
        }
        if (*r.measured_basis != basis_of(r.prepared)) {
            continue;
        }
        ++res.same_basis;
        if (*r.outcome != bit_of(r.prepared)) {
            if (res.conflicts == 0) {
                res.first_conflict = i;
            }
            ++res.conflicts;
            if (policy.reveal == RevealMode::OneByOne && policy.ideal()) {
                res.status = CheckStatus::FailConflict;
                res.error_rate = static_cast<double>(res.conflicts) / static_cast<double>(res.same_basis);
                return res;
            }
        }
    }
    res.error_rate = res.same_basis ? static_cast<double>(res.conflicts) / static_cast<double>(res.same_basis) : 0.0;
    if (res.error_rate > policy.threshold) {
        res.status = CheckStatus::FailRate;
    }
    return res;
}

std::vector<std::size_t> select_portion(std::size_t count, double fraction, Rng& rng) {
    if (fraction < 0.0 || fraction > 1.0) {
        throw std::invalid_argument("check fraction must lie in [0, 1]");
    }
    std::size_t needed = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(count) - 1e-9));
    std::vector<std::size_t> out;
    out.reserve(needed);
    for (std::size_t i = 0; i < count && needed > 0; ++i) {
        if (rng.below(count - i) < needed) {
            out.push_back(i);
            --needed;
        }
    }
    return out;
}

}  // namespace qpc
