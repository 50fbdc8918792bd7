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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace qpc::analytics {
namespace {

// Exact rational evaluation of the leakage sum for small n:
// sum_{i=1}^{G} i m (2^m - 1) / 2^{m i}, over the common denominator 2^{m G}.
double leakage_oracle_exact(unsigned n, unsigned m) {
    const unsigned groups = n / m;
    const unsigned __int128 denom = static_cast<unsigned __int128>(1) << (m * groups);
    unsigned __int128 num = 0;
    for (unsigned i = 1; i <= groups; ++i) {
        num += static_cast<unsigned __int128>(i) * m * ((1u << m) - 1) << (m * (groups - i));
    }
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(denom));
}

// Series limit by brute summation in long double.
long double series_limit(unsigned m) {
    long double s = 0;
    const long double q = std::ldexp(1.0L, -static_cast<int>(m));
    long double qi = 1;  // q^{i-1}
    for (unsigned i = 1; i < 20000 && qi > 0; ++i) {
        s += static_cast<long double>(i) * m * qi * (1 - q);
        qi *= q;
    }
    return s;
}

TEST(AbortProbability, Complementary) {
    EXPECT_EQ(p_group_identical(1), 0.5);
    EXPECT_EQ(p_group_identical(2), 0.25);
    for (std::size_t m = 1; m <= 30; ++m) {
        EXPECT_EQ(p_group_identical(m) + p_abort_any(m), 1.0);
    }
    EXPECT_THROW(p_group_identical(0), std::invalid_argument);
}

TEST(AbortRound, AbortProbabilities) {
    EXPECT_EQ(abort_prob(1, 2), 0.75);
    EXPECT_EQ(abort_prob(2, 1), 0.25);
    for (std::size_t m : {1, 2, 3}) {
        double s = 0;
        for (std::size_t i = 1; i <= 200; ++i) {
            s += abort_prob(i, m);
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
    EXPECT_THROW(abort_prob(0, 1), std::invalid_argument);
    EXPECT_THROW(abort_prob(1, 0), std::invalid_argument);
}

TEST(Leakage, GoldenValues) {
    EXPECT_EQ(leakage(6, 2), 2.53125);
    EXPECT_EQ(leakage(6, 1), 1.875);
    EXPECT_EQ(leakage(6, 2), leakage_oracle_exact(6, 2));
    for (unsigned n = 1; n <= 24; ++n) {
        for (unsigned m = 1; m <= n && m * (n / m) <= 100; ++m) {
            if (n % m == 0) {
                EXPECT_NEAR(leakage(n, m), leakage_oracle_exact(n, m), 1e-12) << n << "," << m;
            }
        }
    }
    EXPECT_THROW(leakage(7, 2), std::invalid_argument);
    EXPECT_THROW(leakage(6, 0), std::invalid_argument);
}

TEST(Leakage, AsymptoteAndMonotoneApproach) {
    EXPECT_EQ(leakage_asymptote(1), 2.0);
    EXPECT_NEAR(leakage_asymptote(2), 8.0 / 3.0, 1e-15);
    for (unsigned m = 1; m <= 20; ++m) {
        EXPECT_NEAR(leakage_asymptote(m), static_cast<double>(series_limit(m)), 1e-12) << m;
        EXPECT_NEAR(leakage_formula(360360, m), leakage_asymptote(m), 1e-9) << m;
    }
    // The gap to the limit shrinks like 2^-n, so strict growth is only
    // visible in doubles while n is well below 52.
    double prev = 0;
    for (std::size_t n = 2; n <= 200; n += 2) {
        const double v = leakage(n, 2);
        if (n <= 40) {
            EXPECT_GT(v, prev) << n;
            EXPECT_LT(v, leakage_asymptote(2)) << n;
        } else {
            EXPECT_GE(v, prev) << n;
            EXPECT_LE(v, leakage_asymptote(2)) << n;
        }
        prev = v;
    }
}

TEST(Leakage, ThresholdClaim) {
    EXPECT_GE(leakage(360360, 14), 14.0);
    for (std::size_t m = 14; m <= 30; ++m) {
        for (std::size_t g = 2; g <= 40; ++g) {
            EXPECT_GE(leakage(g * m, m), 14.0) << "n=" << g * m << " m=" << m;
        }
    }
}

TEST(Leakage, CrossoverAnchors) {
    for (std::size_t n = 2; n <= 10; n += 2) {
        EXPECT_GT(leakage(n, 2), ReferenceConstants::he2016_n6_alice);
    }
    for (std::size_t n = 13; n <= 60; n += 13) {
        EXPECT_GT(leakage(n, 13), ReferenceConstants::he2016_n6_alice);
    }
}

TEST(Escape, ClosedForms) {
    EXPECT_EQ(eve_escape_closed(0.0, 8), 1.0);
    EXPECT_NEAR(eve_escape_closed(1.0, 8), 0.34361, 1e-5);
    double prev = 1.0;
    for (std::size_t k = 1; k <= 64; ++k) {
        EXPECT_LT(eve_escape_closed(0.5, k), prev);
        prev = eve_escape_closed(0.5, k);
    }
    EXPECT_NEAR(eve_escape_bernoulli(1.0, 8), eve_escape_closed(1.0, 8), 1e-15);
    EXPECT_NEAR(eve_escape_announced_basis(1.0, 2), 0.5625, 1e-15);
    EXPECT_EQ(spoiling_closed(9), 0.1);
    EXPECT_EQ(flip_all_detection_closed(16, 0.5), 1.0 - 1.0 / 256);
}

TEST(Empirical, Leakage) {
    std::vector<Outcome> all_first(10, Outcome::differ(1, {0}, 1));
    EXPECT_EQ(empirical_leakage(all_first).value, 1.0);
    EXPECT_EQ(empirical_leakage(all_first).std_error, 0.0);
    std::vector<Outcome> mixed{Outcome::differ(1, {0}, 2), Outcome::equal(3, 6), Outcome::differ(2, {3}, 4),
                               Outcome::equal(3, 6)};
    const auto e = empirical_leakage(mixed);
    EXPECT_EQ(e.value, 1.5);
    EXPECT_EQ(e.abort_histogram.at(1), 0.25);
    EXPECT_EQ(e.abort_histogram.at(2), 0.25);
    // Sample sd of {2, 0, 4, 0} is sqrt(11/3); divided by sqrt(4).
    EXPECT_NEAR(e.std_error, std::sqrt(11.0 / 3.0) / 2.0, 1e-12);
    EXPECT_THROW(empirical_leakage(std::vector<Outcome>{}), std::invalid_argument);
}

TEST(Figures, Fig1) {
    const auto t = fig1();
    ASSERT_EQ(t.rows.size(), 20u);
    EXPECT_EQ(*t.rows[0][0], 1.0);
    EXPECT_NEAR(*t.rows[0][1], 2.0, 1e-12);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        EXPECT_GT(*t.rows[i][1], *t.rows[i - 1][1]);
    }
}

TEST(Figures, Fig2) {
    const auto t = fig2({1, 6, 13, 26});
    EXPECT_EQ(t.header, (std::vector<std::string>{"n", "I_m1", "I_m2", "I_m13"}));
    EXPECT_EQ(*t.rows[1][1], 1.875);
    EXPECT_EQ(*t.rows[1][2], 2.53125);
    EXPECT_FALSE(t.rows[0][2].has_value());
    EXPECT_FALSE(t.rows[1][3].has_value());
    EXPECT_TRUE(t.rows[2][3].has_value());
    EXPECT_FALSE(t.rows[2][2].has_value());

    std::ostringstream os;
    write_csv(os, t);
    EXPECT_EQ(os.str().substr(0, os.str().find("\r\n")), "n,I_m1,I_m2,I_m13");
    EXPECT_NE(os.str().find("1,0.5,,\r\n"), std::string::npos);
    EXPECT_NE(os.str().find("6,1.875,2.53125,\r\n"), std::string::npos);
}

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(2.53125), "2.53125");
    const double x = leakage_asymptote(13);
    EXPECT_EQ(std::stod(format_double(x)), x);
}

}  // namespace
}  // namespace qpc::analytics
