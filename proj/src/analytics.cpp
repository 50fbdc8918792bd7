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

#include "qpc/analytics.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qpc::analytics {

namespace {

void require_m(std::size_t m) {
    if (m < 1) {
        throw std::invalid_argument("m must be at least 1");
    }
}

double sum_to(std::size_t groups, std::size_t m) {
    double total = 0.0;
    for (std::size_t i = 1; i <= groups; ++i) {
        total += static_cast<double>(i * m) * abort_prob(i, m);
    }
    return total;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

}  // namespace

double p_group_identical(std::size_t m) {
    require_m(m);
    return std::ldexp(1.0, -static_cast<int>(m));
}

double p_abort_any(std::size_t m) { return 1.0 - p_group_identical(m); }

double abort_prob(std::size_t i, std::size_t m) {
    require_m(m);
    if (i < 1) {
        throw std::invalid_argument("abort round i must be at least 1");
    }
    // ldexp underflows cleanly to 0 for large exponents.
    const double e = static_cast<double>(m) * static_cast<double>(i - 1);
    const double head = e > 2000.0 ? 0.0 : std::ldexp(1.0, -static_cast<int>(e));
    return head * p_abort_any(m);
}

double leakage(std::size_t n, std::size_t m) {
    require_m(m);
    if (n % m != 0) {
        throw std::invalid_argument("leakage: m must divide n");
    }
    return sum_to(n / m, m);
}

double leakage_formula(std::size_t n, std::size_t m) {
    require_m(m);
    return sum_to((n + m - 1) / m, m);
}

double leakage_asymptote(std::size_t m) {
    require_m(m);
    const double p = std::ldexp(1.0, static_cast<int>(m));
    return static_cast<double>(m) * p / (p - 1.0);
}

double eve_escape_closed(double alpha, std::size_t k) { return std::pow(7.0 / 8.0, alpha * static_cast<double>(k)); }

double eve_escape_bernoulli(double alpha, std::size_t k) {
    return std::pow(1.0 - alpha / 8.0, static_cast<double>(k));
}

double eve_escape_announced_basis(double alpha, std::size_t k) {
    return std::pow(3.0 / 4.0, alpha * static_cast<double>(k));
}

double spoiling_closed(std::size_t k) { return 1.0 / static_cast<double>(k + 1); }

double flip_all_detection_closed(std::size_t k, double fraction) {
    const auto checked = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(k)));
    return 1.0 - std::ldexp(1.0, -static_cast<int>(checked));
}

void LeakageTally::add(const Outcome& o) {
    ++runs;
    if (o.verdict == Verdict::Differ) {
        ++differ_rounds[o.round];
        bits_sum += o.bits_revealed;
        bits_sq_sum += static_cast<std::uint64_t>(o.bits_revealed) * o.bits_revealed;
    }
}

void LeakageTally::merge(const LeakageTally& other) {
    runs += other.runs;
    for (const auto& [round, count] : other.differ_rounds) {
        differ_rounds[round] += count;
    }
    bits_sum += other.bits_sum;
    bits_sq_sum += other.bits_sq_sum;
}

LeakageEstimate estimate(const LeakageTally& tally) {
    LeakageEstimate e;
    e.runs = tally.runs;
    if (tally.runs == 0) {
        return e;
    }
    const double n = static_cast<double>(tally.runs);
    e.value = static_cast<double>(tally.bits_sum) / n;
    if (tally.runs > 1) {
        const double var = (static_cast<double>(tally.bits_sq_sum) - n * e.value * e.value) / (n - 1.0);
        e.std_error = std::sqrt(std::max(var, 0.0) / n);
    }
    for (const auto& [round, count] : tally.differ_rounds) {
        e.abort_histogram[round] = static_cast<double>(count) / n;
    }
    return e;
}

LeakageEstimate empirical_leakage(std::span<const Outcome> outcomes) {
    if (outcomes.empty()) {
        throw std::invalid_argument("empirical_leakage: no outcomes");
    }
    LeakageTally tally;
    for (const auto& o : outcomes) {
        tally.add(o);
    }
    return estimate(tally);
}

nlohmann::json to_json(const LeakageReport& r) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [round, freq] : r.empirical.abort_histogram) {
        hist[std::to_string(round)] = freq;
    }
    nlohmann::json j{{"n", r.n},
                     {"m", r.m},
                     {"seed", r.seed},
                     {"runs", r.empirical.runs},
                     {"empirical_I", r.empirical.value},
                     {"empirical_I_stderr", r.empirical.std_error},
                     {"abort_histogram", hist}};
    j["analytic_I"] = r.analytic_I ? nlohmann::json(*r.analytic_I) : nlohmann::json(nullptr);
    return j;
}

Table fig1(std::size_t m_lo, std::size_t m_hi, std::size_t n) {
    Table t{{"m", "I"}, {}};
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
        t.rows.push_back({static_cast<double>(m), leakage_formula(n, m)});
    }
    return t;
}

Table fig2(const std::vector<std::size_t>& ns) {
    Table t{{"n", "I_m1", "I_m2", "I_m13"}, {}};
    for (std::size_t n : ns) {
        std::vector<std::optional<double>> row{static_cast<double>(n)};
        for (std::size_t m : {1, 2, 13}) {
            row.push_back(n % m == 0 && n > 0 ? std::optional<double>(leakage(n, m)) : std::nullopt);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<std::size_t> fig2_default_grid() {
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= 120; ++n) {
        ns.push_back(n);
    }
    return ns;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        os << (c ? "," : "") << csv_field(t.header[c]);
    }
    os << "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "");
            if (row[c]) {
                os << format_double(*row[c]);
            }
        }
        os << "\r\n";
    }
}

nlohmann::json to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size() && c < t.header.size(); ++c) {
            r[t.header[c]] = row[c] ? nlohmann::json(*row[c]) : nlohmann::json(nullptr);
        }
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"columns", t.header}, {"rows", rows}};
}

}  // namespace qpc::analytics
