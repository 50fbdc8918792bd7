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

// Exact one- and two-qubit pure states.
//
// Every state the protocols prepare has amplitudes in {0, +-1, +-1/sqrt(2)},
// but adversaries may apply arbitrary unitaries, so amplitudes are kept as
// full complex numbers. Two-qubit registers are ordered |q0 q1>, with q0 the
// most significant index bit; q0 is the particle that travels.

#ifndef QPC_QSTATE_HPP
#define QPC_QSTATE_HPP

#include <array>
#include <complex>
#include <string_view>
#include <variant>

#include "qpc/rng.hpp"

namespace qpc {

using Amplitude = std::complex<double>;

inline constexpr double kStateTolerance = 1e-12;

struct Ket {
    std::array<Amplitude, 2> amps{Amplitude{1.0}, Amplitude{0.0}};
    friend bool operator==(const Ket&, const Ket&) = default;
};

struct Ket4 {
    std::array<Amplitude, 4> amps{Amplitude{1.0}, Amplitude{0.0}, Amplitude{0.0}, Amplitude{0.0}};
    friend bool operator==(const Ket4&, const Ket4&) = default;
};

/// A qubit on the wire: either a standalone state, or the first (travelling)
/// half of a pair whose partner stays with its owner. The pair's joint state
/// travels with the message; channel operations only touch q0.
using Qubit = std::variant<Ket, Ket4>;

enum class Basis { Z, X };

enum class PrepLabel { Zero, One, Plus, Minus };

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

std::string_view to_string(Basis b);
std::string_view to_string(PrepLabel p);
std::string_view to_string(BellLabel b);

Basis basis_of(PrepLabel label);
/// Bit value of a label within its basis: Zero/Plus -> 0, One/Minus -> 1.
int bit_of(PrepLabel label);
PrepLabel label_for(Basis basis, int bit);

double norm_squared(const Ket& k);
double norm_squared(const Ket4& k);

Ket prepare(PrepLabel label);
Ket apply_x(const Ket& k);
/// Phase flip; exchanges |+> and |->.
Ket apply_z(const Ket& k);
/// Multiplies every amplitude by exp(i * phase).
Ket with_global_phase(const Ket& k, double phase);

/// Born probabilities of outcomes 0 and 1 in `basis`.
std::array<double, 2> born_probabilities(const Ket& k, Basis basis);

struct Measurement {
    int bit = 0;
    Ket collapsed;
};

/// Projective measurement; one uniform draw from `rng`.
Measurement measure(const Ket& k, Basis basis, Rng& rng);

Ket4 prepare_bell(BellLabel label);
/// X on the travelling qubit (X tensor I).
Ket4 apply_x_first(const Ket4& k);
Ket4 apply_z_first(const Ket4& k);

/// Probabilities over {PhiPlus, PhiMinus, PsiPlus, PsiMinus}, in enum order.
std::array<double, 4> bell_probabilities(const Ket4& k);

/// Bell-basis measurement by cumulative-probability inversion.
BellLabel bell_measure(const Ket4& k, Rng& rng);

struct PartialMeasurement {
    int bit = 0;
    Ket4 collapsed;
};

/// Measures only the travelling qubit q0 of a pair.
PartialMeasurement measure_first(const Ket4& k, Basis basis, Rng& rng);

}  // namespace qpc

#endif  // QPC_QSTATE_HPP
