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

#include <cmath>
#include <numbers>

namespace qpc {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Eigenvectors of each basis, indexed by outcome bit.
std::array<Ket, 2> eigenvectors(Basis b) {
    if (b == Basis::Z) {
        return {Ket{{Amplitude{1.0}, Amplitude{0.0}}}, Ket{{Amplitude{0.0}, Amplitude{1.0}}}};
    }
    return {Ket{{Amplitude{kInvSqrt2}, Amplitude{kInvSqrt2}}},
            Ket{{Amplitude{kInvSqrt2}, Amplitude{-kInvSqrt2}}}};
}

Amplitude inner(const Ket& bra, const Ket& ket) {
    return std::conj(bra.amps[0]) * ket.amps[0] + std::conj(bra.amps[1]) * ket.amps[1];
}

Amplitude inner(const Ket4& bra, const Ket4& ket) {
    Amplitude s{0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        s += std::conj(bra.amps[i]) * ket.amps[i];
    }
    return s;
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

std::string_view to_string(PrepLabel p) {
    switch (p) {
        case PrepLabel::Zero: return "0";
        case PrepLabel::One: return "1";
        case PrepLabel::Plus: return "+";
        case PrepLabel::Minus: return "-";
    }
    return "?";
}

std::string_view to_string(BellLabel b) {
    switch (b) {
        case BellLabel::PhiPlus: return "Phi+";
        case BellLabel::PhiMinus: return "Phi-";
        case BellLabel::PsiPlus: return "Psi+";
        case BellLabel::PsiMinus: return "Psi-";
    }
    return "?";
}

Basis basis_of(PrepLabel label) {
    return (label == PrepLabel::Zero || label == PrepLabel::One) ? Basis::Z : Basis::X;
}

int bit_of(PrepLabel label) { return (label == PrepLabel::One || label == PrepLabel::Minus) ? 1 : 0; }

PrepLabel label_for(Basis basis, int bit) {
    if (basis == Basis::Z) {
        return bit ? PrepLabel::One : PrepLabel::Zero;
    }
    return bit ? PrepLabel::Minus : PrepLabel::Plus;
}

double norm_squared(const Ket& k) { return std::norm(k.amps[0]) + std::norm(k.amps[1]); }

double norm_squared(const Ket4& k) {
    double s = 0.0;
    for (const auto& a : k.amps) {
        s += std::norm(a);
    }
    return s;
}

Ket prepare(PrepLabel label) { return eigenvectors(basis_of(label))[static_cast<std::size_t>(bit_of(label))]; }

Ket apply_x(const Ket& k) { return Ket{{k.amps[1], k.amps[0]}}; }

Ket apply_z(const Ket& k) { return Ket{{k.amps[0], -k.amps[1]}}; }

Ket with_global_phase(const Ket& k, double phase) {
    const Amplitude f = std::polar(1.0, phase);
    return Ket{{f * k.amps[0], f * k.amps[1]}};
}

std::array<double, 2> born_probabilities(const Ket& k, Basis basis) {
    const auto ev = eigenvectors(basis);
    return {std::norm(inner(ev[0], k)), std::norm(inner(ev[1], k))};
}

Measurement measure(const Ket& k, Basis basis, Rng& rng) {
    const auto p = born_probabilities(k, basis);
    const double u = rng.uniform() * (p[0] + p[1]);
    const int bit = u < p[0] ? 0 : 1;
    return {bit, eigenvectors(basis)[static_cast<std::size_t>(bit)]};
}

Ket4 prepare_bell(BellLabel label) {
    const double s = kInvSqrt2;
    switch (label) {
        case BellLabel::PhiPlus: return Ket4{{Amplitude{s}, Amplitude{0.0}, Amplitude{0.0}, Amplitude{s}}};
        case BellLabel::PhiMinus: return Ket4{{Amplitude{s}, Amplitude{0.0}, Amplitude{0.0}, Amplitude{-s}}};
        case BellLabel::PsiPlus: return Ket4{{Amplitude{0.0}, Amplitude{s}, Amplitude{s}, Amplitude{0.0}}};
        case BellLabel::PsiMinus: return Ket4{{Amplitude{0.0}, Amplitude{s}, Amplitude{-s}, Amplitude{0.0}}};
    }
    return {};
}

Ket4 apply_x_first(const Ket4& k) { return Ket4{{k.amps[2], k.amps[3], k.amps[0], k.amps[1]}}; }

Ket4 apply_z_first(const Ket4& k) { return Ket4{{k.amps[0], k.amps[1], -k.amps[2], -k.amps[3]}}; }

std::array<double, 4> bell_probabilities(const Ket4& k) {
    std::array<double, 4> p{};
    for (std::size_t i = 0; i < 4; ++i) {
        p[i] = std::norm(inner(prepare_bell(static_cast<BellLabel>(i)), k));
    }
    return p;
}

BellLabel bell_measure(const Ket4& k, Rng& rng) {
    const auto p = bell_probabilities(k);
    const double total = p[0] + p[1] + p[2] + p[3];
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        acc += p[i];
        if (u < acc) {
            return static_cast<BellLabel>(i);
        }
    }
    return BellLabel::PsiMinus;
}

PartialMeasurement measure_first(const Ket4& k, Basis basis, Rng& rng) {
    const auto ev = eigenvectors(basis);
    // Partner-qubit conditional amplitudes for each outcome on q0.
    std::array<Ket, 2> rest{};
    std::array<double, 2> p{};
    for (std::size_t b = 0; b < 2; ++b) {
        const Amplitude c0 = std::conj(ev[b].amps[0]);
        const Amplitude c1 = std::conj(ev[b].amps[1]);
        rest[b].amps[0] = c0 * k.amps[0] + c1 * k.amps[2];
        rest[b].amps[1] = c0 * k.amps[1] + c1 * k.amps[3];
        p[b] = norm_squared(rest[b]);
    }
    const double u = rng.uniform() * (p[0] + p[1]);
    const std::size_t bit = u < p[0] ? 0 : 1;
    const double scale = 1.0 / std::sqrt(p[bit]);
    const Ket& e = ev[bit];
    const Ket& r = rest[bit];
    Ket4 out{{e.amps[0] * r.amps[0] * scale, e.amps[0] * r.amps[1] * scale, e.amps[1] * r.amps[0] * scale,
              e.amps[1] * r.amps[1] * scale}};
    return {static_cast<int>(bit), out};
}

}  // namespace qpc
