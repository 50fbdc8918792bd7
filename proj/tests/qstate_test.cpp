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

#include "qpc/qstate.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qpc/rng.hpp"

namespace qpc {
namespace {

using C = std::complex<double>;
const double r = 1.0 / std::sqrt(2.0);

// Plain 2x2 / 4x4 matrix products, independent of the library's gates.
std::array<C, 2> mul2(const std::array<std::array<C, 2>, 2>& m, const std::array<C, 2>& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

std::array<C, 4> mul4(const std::array<std::array<C, 4>, 4>& m, const std::array<C, 4>& v) {
    std::array<C, 4> out{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

// X tensor I in the |q0 q1> ordering.
const std::array<std::array<C, 4>, 4> kXI{{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}};

void expect_ket(const Ket& k, C a0, C a1) {
    EXPECT_NEAR(std::abs(k.amps[0] - a0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(k.amps[1] - a1), 0.0, 1e-12);
}

void expect_ket4(const Ket4& k, const std::array<C, 4>& v) {
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(k.amps[i] - v[i]), 0.0, 1e-12) << "amplitude " << i;
    }
}

TEST(Prepare, BasisStates) {
    expect_ket(prepare(PrepLabel::Zero), 1, 0);
    expect_ket(prepare(PrepLabel::One), 0, 1);
    expect_ket(prepare(PrepLabel::Plus), r, r);
    expect_ket(prepare(PrepLabel::Minus), r, -r);
}

TEST(ApplyX, MatchesMatrixProduct) {
    const std::array<std::array<C, 2>, 2> x{{{0, 1}, {1, 0}}};
    expect_ket(apply_x(prepare(PrepLabel::Zero)), 0, 1);
    expect_ket(apply_x(prepare(PrepLabel::Plus)), r, r);
    expect_ket(apply_x(prepare(PrepLabel::Minus)), -r, r);
    for (auto l : {PrepLabel::Zero, PrepLabel::One, PrepLabel::Plus, PrepLabel::Minus}) {
        const auto want = mul2(x, prepare(l).amps);
        expect_ket(apply_x(prepare(l)), want[0], want[1]);
    }
}

TEST(ApplyZ, SwapsPlusAndMinus) {
    expect_ket(apply_z(prepare(PrepLabel::Plus)), r, -r);
    expect_ket(apply_z(prepare(PrepLabel::Minus)), r, r);
    expect_ket(apply_z(prepare(PrepLabel::One)), 0, -1);
}

TEST(Measure, EigenstateIsDeterministic) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(measure(prepare(PrepLabel::Zero), Basis::Z, rng).bit, 0);
        EXPECT_EQ(measure(prepare(PrepLabel::Minus), Basis::X, rng).bit, 1);
    }
}

TEST(Measure, UnbiasedAcrossBases) {
    Rng rng(2);
    const int trials = 100000;
    int zeros_plus_in_z = 0;
    int plus_from_one = 0;
    for (int i = 0; i < trials; ++i) {
        zeros_plus_in_z += measure(prepare(PrepLabel::Plus), Basis::Z, rng).bit == 0;
        plus_from_one += measure(prepare(PrepLabel::One), Basis::X, rng).bit == 0;
    }
    EXPECT_NEAR(zeros_plus_in_z / double(trials), 0.5, 0.005);
    EXPECT_NEAR(plus_from_one / double(trials), 0.5, 0.005);
}

TEST(Measure, CollapseIsIdempotent) {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto first = measure(prepare(PrepLabel::Plus), Basis::Z, rng);
        EXPECT_EQ(measure(first.collapsed, Basis::Z, rng).bit, first.bit);
        const auto second = measure(prepare(PrepLabel::Zero), Basis::X, rng);
        EXPECT_EQ(measure(second.collapsed, Basis::X, rng).bit, second.bit);
    }
}

TEST(Measure, GlobalPhaseDoesNotChangeBornProbabilities) {
    for (auto l : {PrepLabel::Zero, PrepLabel::One, PrepLabel::Plus, PrepLabel::Minus}) {
        for (double phase : {0.3, 1.7, -2.9}) {
            for (auto b : {Basis::Z, Basis::X}) {
                const auto p = born_probabilities(prepare(l), b);
                const auto q = born_probabilities(with_global_phase(prepare(l), phase), b);
                EXPECT_NEAR(p[0], q[0], 1e-12);
                EXPECT_NEAR(p[1], q[1], 1e-12);
            }
        }
    }
}

TEST(Measure, SameSeedSameSequence) {
    Rng a(77);
    Rng b(77);
    for (int i = 0; i < 200; ++i) {
        EXPECT_EQ(measure(prepare(PrepLabel::Plus), Basis::Z, a).bit, measure(prepare(PrepLabel::Plus), Basis::Z, b).bit);
    }
}

TEST(Bell, Vectors) {
    expect_ket4(prepare_bell(BellLabel::PhiPlus), {r, 0, 0, r});
    expect_ket4(prepare_bell(BellLabel::PsiPlus), {0, r, r, 0});
    expect_ket4(prepare_bell(BellLabel::PhiMinus), {r, 0, 0, -r});
    expect_ket4(prepare_bell(BellLabel::PsiMinus), {0, r, -r, 0});
}

TEST(Bell, XOnTravellingHalf) {
    for (auto l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
        expect_ket4(apply_x_first(prepare_bell(l)), mul4(kXI, prepare_bell(l).amps));
        expect_ket4(apply_x_first(apply_x_first(prepare_bell(l))), prepare_bell(l).amps);
    }
    expect_ket4(apply_x_first(prepare_bell(BellLabel::PhiPlus)), prepare_bell(BellLabel::PsiPlus).amps);
    expect_ket4(apply_x_first(prepare_bell(BellLabel::PsiPlus)), prepare_bell(BellLabel::PhiPlus).amps);
}

TEST(Bell, MeasureEigenstates) {
    Rng rng(5);
    for (auto l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
        for (int i = 0; i < 100; ++i) {
            EXPECT_EQ(bell_measure(prepare_bell(l), rng), l);
        }
    }
}

TEST(Bell, ProductStateSplitsEvenly) {
    Rng rng(6);
    const Ket4 zz{{1, 0, 0, 0}};
    // Projector norms: |<Phi+-|00>|^2 = 1/2 each, 0 for the Psi states.
    const auto p = bell_probabilities(zz);
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[1], 0.5, 1e-12);
    EXPECT_NEAR(p[2] + p[3], 0.0, 1e-12);
    const int trials = 100000;
    int phi_plus = 0;
    for (int i = 0; i < trials; ++i) {
        const auto l = bell_measure(zz, rng);
        ASSERT_TRUE(l == BellLabel::PhiPlus || l == BellLabel::PhiMinus);
        phi_plus += l == BellLabel::PhiPlus;
    }
    EXPECT_NEAR(phi_plus / double(trials), 0.5, 0.005);
}

TEST(Bell, PartialMeasurementCorrelates) {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto m = measure_first(prepare_bell(BellLabel::PhiPlus), Basis::Z, rng);
        // Phi+ collapses to |00> or |11>.
        const auto& a = m.collapsed.amps;
        EXPECT_NEAR(std::norm(a[m.bit ? 3 : 0]), 1.0, 1e-12);
        EXPECT_NEAR(norm_squared(m.collapsed), 1.0, 1e-12);
    }
}

TEST(Norms, OperationsPreserveUnitNorm) {
    Rng rng(8);
    for (auto l : {PrepLabel::Zero, PrepLabel::One, PrepLabel::Plus, PrepLabel::Minus}) {
        EXPECT_NEAR(norm_squared(apply_x(prepare(l))), 1.0, 1e-12);
        EXPECT_NEAR(norm_squared(apply_z(prepare(l))), 1.0, 1e-12);
        EXPECT_NEAR(norm_squared(measure(prepare(l), Basis::X, rng).collapsed), 1.0, 1e-12);
    }
    for (auto l : {BellLabel::PhiPlus, BellLabel::PsiMinus}) {
        EXPECT_NEAR(norm_squared(apply_z_first(apply_x_first(prepare_bell(l)))), 1.0, 1e-12);
    }
}

TEST(Labels, BitsAndBases) {
    EXPECT_EQ(bit_of(PrepLabel::Plus), 0);
    EXPECT_EQ(bit_of(PrepLabel::Minus), 1);
    EXPECT_EQ(basis_of(PrepLabel::One), Basis::Z);
    EXPECT_EQ(label_for(Basis::X, 1), PrepLabel::Minus);
}

}  // namespace
}  // namespace qpc
