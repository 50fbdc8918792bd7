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

// Closed-form leakage and detection formulas, empirical estimators over
// run outcomes, and the tables behind the two leakage figures.

#ifndef QPC_ANALYTICS_HPP
#define QPC_ANALYTICS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpc/outcome.hpp"

namespace qpc::analytics {

/// Probability that all m bits of a group agree for uniform hashes: 2^-m.
double p_group_identical(std::size_t m);
/// 1 - 2^-m.
double p_abort_any(std::size_t m);
/// Probability that the comparison stops at group i: 2^{-m(i-1)} (1 - 2^-m).
double abort_prob(std::size_t i, std::size_t m);

/// Expected bits learned before abort, sum over i of i*m*abort_prob(i, m)
/// for i = 1..n/m. Requires m | n.
double leakage(std::size_t n, std::size_t m);
/// The same sum with upper limit ceil(n/m), accepted for any m.
double leakage_formula(std::size_t n, std::size_t m);
/// n -> infinity limit m 2^m / (2^m - 1).
double leakage_asymptote(std::size_t m);

/// Intercept-resend escape probability (7/8)^{alpha k}.
double eve_escape_closed(double alpha, std::size_t k);
/// Escape probability when each of k decoys is intercepted independently
/// with probability alpha: (1 - alpha/8)^k.
double eve_escape_bernoulli(double alpha, std::size_t k);
/// Escape probability when the checker measures intercepted decoys in their
/// preparation basis: (3/4)^{alpha k}.
double eve_escape_announced_basis(double alpha, std::size_t k);
/// One flip in the bulk basis lands on the code qubit: 1/(k+1).
double spoiling_closed(std::size_t k);
/// Flipping every qubit of a return sequence in the bulk basis, with
/// ceil(fraction*k) decoys checked: 1 - 2^-checked.
double flip_all_detection_closed(std::size_t k, double fraction);

/// Reference values of the earlier single-party-leakage protocol (n = 6).
/// For display only.
struct ReferenceConstants {
    static constexpr double he2016_n6_alice = 1.43;
    static constexpr double he2016_n6_bob = 1.05;
};

/// Integer tallies of outcomes; merging is order-insensitive.
struct LeakageTally {
    std::size_t runs = 0;
    std::map<std::size_t, std::size_t> differ_rounds;  // round -> count
    std::uint64_t bits_sum = 0;
    std::uint64_t bits_sq_sum = 0;

    void add(const Outcome& o);
    void merge(const LeakageTally& other);
};

struct LeakageEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t runs = 0;
    std::map<std::size_t, double> abort_histogram;  // round -> frequency
};

/// Mean bits revealed over all runs, counting full-match runs as 0.
LeakageEstimate estimate(const LeakageTally& tally);
/// Throws std::invalid_argument on empty input.
LeakageEstimate empirical_leakage(std::span<const Outcome> outcomes);

struct LeakageReport {
    std::optional<double> analytic_I;  // set when m | n
    LeakageEstimate empirical;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

nlohmann::json to_json(const LeakageReport& r);

/// Header plus rows; a missing cell is written blank (CSV) or null (JSON).
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
};

/// Rows (m, I(n, m)) for m in [m_lo, m_hi].
Table fig1(std::size_t m_lo = 1, std::size_t m_hi = 20, std::size_t n = 360360);
/// Rows (n, I(n,1), I(n,2), I(n,13)), blank where m does not divide n.
Table fig2(const std::vector<std::size_t>& ns);
/// n = 1..120.
std::vector<std::size_t> fig2_default_grid();

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
nlohmann::json to_json(const Table& t);

}  // namespace qpc::analytics

#endif  // QPC_ANALYTICS_HPP
