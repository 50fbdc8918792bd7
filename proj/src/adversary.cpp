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

#include "qpc/adversary.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qpc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Measures q0 of a slot in `basis` and replaces it with the collapsed state.
int measure_slot(Qubit& q, Basis basis, Rng& rng) {
    return std::visit(Overloaded{[&](Ket& k) {
                                     auto m = measure(k, basis, rng);
                                     k = m.collapsed;
                                     return m.bit;
                                 },
                                 [&](Ket4& k) {
                                     auto m = measure_first(k, basis, rng);
                                     k = m.collapsed;
                                     return m.bit;
                                 }},
                      q);
}

void flip_slot(Qubit& q, Basis basis) {
    std::visit(Overloaded{[&](Ket& k) { k = basis == Basis::Z ? apply_x(k) : apply_z(k); },
                          [&](Ket4& k) { k = basis == Basis::Z ? apply_x_first(k) : apply_z_first(k); }},
               q);
}

Basis random_basis(Rng& rng) { return rng.bit() ? Basis::X : Basis::Z; }

// Uniform `count`-subset of `pool`, in increasing order (selection sampling).
std::vector<std::size_t> sample_subset(const std::vector<std::size_t>& pool, std::size_t count, Rng& rng) {
    std::vector<std::size_t> out;
    std::size_t needed = std::min(count, pool.size());
    std::size_t remaining = pool.size();
    for (std::size_t p : pool) {
        if (needed == 0) {
            break;
        }
        if (rng.below(remaining) < needed) {
            out.push_back(p);
            --needed;
        }
        --remaining;
    }
    return out;
}

}  // namespace

std::string describe(const AttackStrategy& s) {
    return std::visit(
        Overloaded{[](const NoAttack&) { return std::string("none"); },
                   [](const InterceptResend& a) {
                       std::ostringstream os;
                       os << "intercept:" << a.alpha;
                       if (a.oracle_decoy_count) {
                           os << ":decoys=" << *a.oracle_decoy_count;
                       }
                       return os.str();
                   },
                   [](const GuessBasisReturn& g) {
                       if (g.oracle_correct) {
                           return std::string("guess-return:oracle");
                       }
                       return std::string("guess-return:") + (g.guess ? std::string(to_string(*g.guess)) : "random");
                   },
                   [](const XFlip& x) {
                       return "xflip:" + std::to_string(x.count) + (x.oracle_bulk_basis ? ":oracle" : "");
                   },
                   [](const InternalCheat& c) {
                       return "cheat:" + std::string(to_string(c.party)) + ":" +
                              (c.policy == CheatPolicy::AlterCodeQubit ? "alter-code" : "adapt");
                   },
                   [](const AdaptiveSecondMover& a) { return "adaptive:" + std::to_string(a.target); }},
        s);
}

AttackStrategy parse_attack(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& tag = parts[0];
    auto fail = [&]() -> AttackStrategy { throw std::invalid_argument("unrecognized attack spec: " + spec); };
    if (tag == "none" && parts.size() == 1) {
        return NoAttack{};
    }
    if (tag == "intercept") {
        InterceptResend a;
        if (parts.size() >= 2) {
            a.alpha = std::stod(parts[1]);
        }
        if (a.alpha < 0.0 || a.alpha > 1.0 || parts.size() > 2) {
            return fail();
        }
        return a;
    }
    if (tag == "guess-return") {
        GuessBasisReturn g;
        if (parts.size() == 2) {
            if (parts[1] == "Z") {
                g.guess = Basis::Z;
            } else if (parts[1] == "X") {
                g.guess = Basis::X;
            } else if (parts[1] == "oracle") {
                g.oracle_correct = true;
            } else if (parts[1] != "random") {
                return fail();
            }
        } else if (parts.size() > 2) {
            return fail();
        }
        return g;
    }
    if (tag == "xflip") {
        XFlip x;
        if (parts.size() >= 2) {
            x.count = static_cast<std::size_t>(std::stoul(parts[1]));
        }
        if (parts.size() == 3) {
            if (parts[2] != "oracle") {
                return fail();
            }
            x.oracle_bulk_basis = true;
        }
        if (x.count < 1 || parts.size() > 3) {
            return fail();
        }
        return x;
    }
    if (tag == "cheat" && parts.size() == 3) {
        InternalCheat c;
        if (parts[1] == "alice") {
            c.party = Party::Alice;
        } else if (parts[1] == "bob") {
            c.party = Party::Bob;
        } else {
            return fail();
        }
        if (parts[2] == "alter-code") {
            c.policy = CheatPolicy::AlterCodeQubit;
        } else if (parts[2] == "adapt") {
            c.policy = CheatPolicy::AdaptAfterDisclosure;
        } else {
            return fail();
        }
        return c;
    }
    if (tag == "adaptive" && parts.size() == 2 && (parts[1] == "0" || parts[1] == "1")) {
        return AdaptiveSecondMover{parts[1] == "1" ? 1 : 0};
    }
    return fail();
}

bool is_external(const AttackStrategy& s) {
    return std::holds_alternative<InterceptResend>(s) || std::holds_alternative<GuessBasisReturn>(s) ||
           std::holds_alternative<XFlip>(s);
}

const EveObservation* EveView::find(std::uint64_t message, std::size_t position) const {
    for (const auto& o : observed) {
        if (o.message == message && o.position == position) {
            return &o;
        }
    }
    return nullptr;
}

void tap_quantum(std::vector<Qubit>& payload, const AttackStrategy& strategy, const TapContext& context, Rng& rng,
                 EveView& view, std::uint64_t message_id) {
    auto record = [&](std::size_t pos, Basis b, int outcome) {
        view.observed.push_back(EveObservation{message_id, context.leg, pos, b, outcome});
    };
    std::visit(Overloaded{[&](const InterceptResend& a) {
                              if ((context.leg == Leg::Forward && !a.forward) ||
                                  (context.leg == Leg::Return && !a.returns)) {
                                  return;
                              }
                              if (a.oracle_decoy_count) {
                                  for (std::size_t pos :
                                       sample_subset(context.decoy_positions, *a.oracle_decoy_count, rng)) {
                                      const Basis b = random_basis(rng);
                                      record(pos, b, measure_slot(payload[pos], b, rng));
                                  }
                                  return;
                              }
                              for (std::size_t pos = 0; pos < payload.size(); ++pos) {
                                  if (rng.bernoulli(a.alpha)) {
                                      const Basis b = random_basis(rng);
                                      record(pos, b, measure_slot(payload[pos], b, rng));
                                  }
                              }
                          },
                          [&](const GuessBasisReturn& g) {
                              if (context.leg != Leg::Return) {
                                  return;
                              }
                              Basis b;
                              if (g.oracle_correct && context.bulk_basis) {
                                  b = *context.bulk_basis;
                              } else if (g.guess) {
                                  b = *g.guess;
                              } else {
                                  b = random_basis(rng);
                              }
                              for (std::size_t pos = 0; pos < payload.size(); ++pos) {
                                  record(pos, b, measure_slot(payload[pos], b, rng));
                              }
                          },
                          [&](const XFlip& x) {
                              if (context.leg != Leg::Return || payload.empty()) {
                                  return;
                              }
                              const Basis b =
                                  (x.oracle_bulk_basis && context.bulk_basis) ? *context.bulk_basis : Basis::Z;
                              std::vector<std::size_t> all(payload.size());
                              for (std::size_t i = 0; i < all.size(); ++i) {
                                  all[i] = i;
                              }
                              for (std::size_t pos : sample_subset(all, x.count, rng)) {
                                  flip_slot(payload[pos], b);
                                  ++view.flips_applied;
                              }
                          },
                          [](const auto&) {}},
               strategy);
}

int eve_guess_encoded_bit(const EveView& view, std::uint64_t forward_message, std::size_t forward_position,
                          std::uint64_t return_message, std::size_t return_position, Rng& rng) {
    const EveObservation* f = view.find(forward_message, forward_position);
    const EveObservation* r = view.find(return_message, return_position);
    if (f && r && f->basis == r->basis) {
        return f->outcome ^ r->outcome;
    }
    return rng.bit();
}

}  // namespace qpc
