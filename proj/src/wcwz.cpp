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

#include "qpc/wcwz.hpp"

#include <array>
#include <stdexcept>

namespace qpc::wcwz {

namespace {

constexpr std::array<Party, 2> kParties{Party::Alice, Party::Bob};

std::size_t side(Party p) { return p == Party::Alice ? 0 : 1; }

std::string site_name(std::string_view step, Party owner) {
    return std::string(step) + ":" + std::string(to_string(owner)) + "->" + std::string(to_string(other(owner)));
}

Announcement decoy_disclosure(const std::vector<DecoyRecord>& decoys) {
    Announcement a{"decoy_positions_bases", {}, {}, {}, {}};
    for (const auto& d : decoys) {
        a.positions.push_back(d.position);
        a.bases.push_back(basis_of(d.prepared));
    }
    return a;
}

// The holder measures each announced decoy slot in the announced basis.
// Returns the completed records for the preparer to check.
std::vector<DecoyRecord> measure_announced(QuantumPayload& payload, const std::vector<DecoyRecord>& prepared,
                                           const Announcement& disclosure, Rng& rng) {
    std::vector<DecoyRecord> out = prepared;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::size_t pos = disclosure.positions[j];
        const Basis basis = disclosure.bases[j];
        auto m = measure(std::get<Ket>(payload[pos]), basis, rng);
        out[j].measured_basis = basis;
        out[j].outcome = m.bit;
    }
    return out;
}

Announcement outcome_report(const std::vector<DecoyRecord>& measured) {
    Announcement a{"decoy_outcomes", {}, {}, {}, {}};
    for (const auto& r : measured) {
        a.bits.push_back(*r.outcome);
    }
    return a;
}

std::vector<Ket4> extract_pairs(const QuantumPayload& payload, const std::vector<std::size_t>& positions) {
    std::vector<Ket4> out;
    out.reserve(positions.size());
    for (std::size_t pos : positions) {
        out.push_back(std::get<Ket4>(payload[pos]));
    }
    return out;
}

QuantumPayload as_payload(std::vector<Ket4> pairs) {
    QuantumPayload out;
    out.reserve(pairs.size());
    for (auto& p : pairs) {
        out.emplace_back(std::move(p));
    }
    return out;
}

TapContext context_for(Leg leg, const std::vector<DecoyRecord>& decoys) {
    TapContext ctx;
    ctx.leg = leg;
    for (const auto& d : decoys) {
        ctx.decoy_positions.push_back(d.position);
    }
    return ctx;
}

}  // namespace

void Params::validate() const {
    if (n < 1 || n > kMaxBitStringLength) {
        throw std::invalid_argument("wcwz: n must lie in [1, 2^24]");
    }
    if (m < 1 || m > n) {
        throw std::invalid_argument("wcwz: group size m must satisfy 1 <= m <= n");
    }
    if (policy.threshold < 0.0 || policy.threshold > 1.0 || policy.fraction <= 0.0 || policy.fraction > 1.0) {
        throw std::invalid_argument("wcwz: invalid check policy");
    }
}

std::vector<BitString> partition_hash(const BitString& h, std::size_t m) {
    if (m < 1 || m > h.size()) {
        throw std::invalid_argument("partition_hash: requires 1 <= m <= n");
    }
    std::vector<BitString> groups;
    for (std::size_t offset = 0; offset < h.size(); offset += m) {
        groups.push_back(h.slice(offset, std::min(m, h.size() - offset)));
    }
    return groups;
}

std::vector<Ket4> encode_sequence(std::vector<Ket4> halves, const BitString& bits) {
    if (halves.size() != bits.size()) {
        throw std::invalid_argument("encode_sequence: length mismatch");
    }
    for (std::size_t i = 0; i < halves.size(); ++i) {
        if (bits[i]) {
            halves[i] = apply_x_first(halves[i]);
        }
    }
    return halves;
}

bool GroupResult::all_identical() const {
    for (std::size_t i = 0; i < alice_identical.size(); ++i) {
        if (!alice_identical[i] || !bob_identical[i]) {
            return false;
        }
    }
    return true;
}

GroupResult compare_group(const BitString& group_a, const BitString& group_b, const Params& params,
                          const AttackStrategy& adversary, Channel& channel, Rng& rng, std::size_t round) {
    if (group_a.size() != group_b.size()) {
        throw std::invalid_argument("compare_group: groups differ in length");
    }
    Transcript& tr = channel.transcript();
    const std::size_t len = group_a.size();
    const std::size_t k = params.k;
    auto bits_of = [&](Party p) -> const BitString& { return p == Party::Alice ? group_a : group_b; };

    // Step 3: Bell pairs, Phi+ or Psi+ at random; the second halves stay home.
    std::array<GroupState, 2> state;
    for (Party p : kParties) {
        auto& s = state[side(p)];
        for (std::size_t i = 0; i < len; ++i) {
            const BellLabel label = rng.bit() ? BellLabel::PsiPlus : BellLabel::PhiPlus;
            s.initial_bells.push_back(label);
            s.travelling.push_back(prepare_bell(label));
        }
        tr.count_bell_pairs(len);
        tr.retain(p, len);
        tr.log(channel.tick(), to_string(p), "prepare_bell_pairs", [&] {
            nlohmann::json labels = nlohmann::json::array();
            for (auto l : s.initial_bells) {
                labels.push_back(std::string(to_string(l)));
            }
            return nlohmann::json{{"round", round}, {"labels", labels}};
        });
    }

    // Step 4: first halves among decoys, sent both ways.
    std::array<std::vector<DecoyRecord>, 2> forward_decoys;
    std::array<Insertion, 2> forward;
    std::array<std::uint64_t, 2> forward_id{};
    for (Party p : kParties) {
        const std::size_t s = side(p);
        forward_decoys[s] = generate(k, rng);
        tr.count_decoys(k);
        tr.count_prepared(k);
        forward[s] = insert(as_payload(state[s].travelling), forward_decoys[s], rng);
        forward_id[s] = channel.post(Message{p, other(p), 0, Leg::Forward, std::move(forward[s].merged)});
    }
    for (Party p : kParties) {
        channel.tap(forward_id[side(p)], adversary, context_for(Leg::Forward, forward_decoys[side(p)]), rng);
    }
    std::array<QuantumPayload, 2> at_partner;
    for (Party p : kParties) {
        at_partner[side(p)] = std::get<QuantumPayload>(channel.deliver(forward_id[side(p)]).body);
    }

    // Step 5: owners disclose decoy positions and bases; partners measure
    // them and report outcomes; owners check.
    GroupResult result;
    for (Party p : kParties) {
        const std::size_t s = side(p);
        const Announcement disclosure = channel.announce(p, decoy_disclosure(forward_decoys[s]));
        auto measured = measure_announced(at_partner[s], forward_decoys[s], disclosure, rng);
        tr.consume(other(p), k);
        channel.announce(other(p), outcome_report(measured));
        const CheckResult check = verify(measured, params.policy);
        tr.log(channel.tick(), to_string(p), "decoy_check", [&] {
            return nlohmann::json{{"site", site_name("step5", p)},
                                  {"passed", check.passed()},
                                  {"conflicts", check.conflicts},
                                  {"same_basis", check.same_basis}};
        });
        if (!check.passed() && result.check_site.empty()) {
            result.status = GroupStatus::EveDetected;
            result.check_site = site_name("step5", p);
        }
    }
    if (result.status == GroupStatus::EveDetected) {
        return result;
    }

    // Step 6: each partner encodes its own bits on the received halves and
    // returns them among fresh decoys.
    std::array<std::vector<DecoyRecord>, 2> return_decoys;
    std::array<std::uint64_t, 2> return_id{};
    std::array<std::vector<std::size_t>, 2> return_code_positions;
    for (Party p : kParties) {
        const std::size_t s = side(p);
        const Party partner = other(p);
        auto halves = extract_pairs(at_partner[s], forward[s].code_positions);
        halves = encode_sequence(std::move(halves), bits_of(partner));
        state[s].encodings_applied.assign(len, false);
        for (std::size_t i = 0; i < len; ++i) {
            state[s].encodings_applied[i] = bits_of(partner)[i] != 0;
        }
        return_decoys[s] = generate(k, rng);
        tr.count_decoys(k);
        tr.count_prepared(k);
        Insertion ins = insert(as_payload(std::move(halves)), return_decoys[s], rng);
        return_code_positions[s] = ins.code_positions;
        tr.consume(partner, len);
        return_id[s] = channel.post(Message{partner, p, 0, Leg::Return, std::move(ins.merged)});
    }
    for (Party p : kParties) {
        channel.tap(return_id[side(p)], adversary, context_for(Leg::Return, return_decoys[side(p)]), rng);
    }
    std::array<QuantumPayload, 2> returned;
    for (Party p : kParties) {
        returned[side(p)] = std::get<QuantumPayload>(channel.deliver(return_id[side(p)]).body);
    }

    // Step 7: both partners disclose the return decoys simultaneously.
    AnnouncementBuilder<Announcement> alice_builder = [&](const std::optional<Announcement>&) {
        return decoy_disclosure(return_decoys[side(Party::Bob)]);
    };
    AnnouncementBuilder<Announcement> bob_builder = [&](const std::optional<Announcement>&) {
        return decoy_disclosure(return_decoys[side(Party::Alice)]);
    };
    auto exchanged = simultaneous_exchange(alice_builder, bob_builder, Schedule::simultaneous(), round);
    channel.announce(Party::Alice, exchanged.bob_received);
    channel.announce(Party::Bob, exchanged.alice_received);
    for (Party p : kParties) {
        const std::size_t s = side(p);
        const Announcement& disclosure = p == Party::Alice ? exchanged.alice_received : exchanged.bob_received;
        auto measured = measure_announced(returned[s], return_decoys[s], disclosure, rng);
        tr.consume(p, k);
        channel.announce(p, outcome_report(measured));
        const CheckResult check = verify(measured, params.policy);
        tr.log(channel.tick(), to_string(other(p)), "decoy_check", [&] {
            return nlohmann::json{{"site", site_name("step7", other(p))},
                                  {"passed", check.passed()},
                                  {"conflicts", check.conflicts},
                                  {"same_basis", check.same_basis}};
        });
        if (!check.passed() && result.check_site.empty()) {
            result.status = GroupStatus::EveDetected;
            result.check_site = site_name("step7", other(p));
        }
    }
    if (result.status == GroupStatus::EveDetected) {
        return result;
    }

    // Step 8: owners add their own encoding and Bell-measure the reunited pairs.
    for (Party p : kParties) {
        const std::size_t s = side(p);
        auto pairs = encode_sequence(extract_pairs(returned[s], return_code_positions[s]), bits_of(p));
        std::vector<bool>& identical = p == Party::Alice ? result.alice_identical : result.bob_identical;
        identical.resize(len);
        for (std::size_t i = 0; i < len; ++i) {
            identical[i] = bell_measure(pairs[i], rng) == state[s].initial_bells[i];
        }
        tr.consume(p, len);
        tr.release(p, len);
        tr.log(channel.tick(), to_string(p), "bell_compare", [&] {
            return nlohmann::json{{"round", round}, {"identical", identical}};
        });
    }
    const bool alice_says_equal = [&] {
        for (bool b : result.alice_identical) {
            if (!b) return false;
        }
        return true;
    }();
    const bool bob_says_equal = [&] {
        for (bool b : result.bob_identical) {
            if (!b) return false;
        }
        return true;
    }();
    const auto a_verdict = channel.announce(Party::Alice, Announcement{"verdict", {}, {}, {}, {alice_says_equal ? 1 : 0}});
    const auto b_verdict = channel.announce(Party::Bob, Announcement{"verdict", {}, {}, {}, {bob_says_equal ? 1 : 0}});
    if (a_verdict.bits != b_verdict.bits) {
        result.status = GroupStatus::Inconsistent;
    }
    return result;
}

RunResult run(const BitString& a, const BitString& b, const Params& params, const AttackStrategy& adversary, Rng& rng,
              bool record_events) {
    params.validate();
    if (a.size() != params.n || b.size() != params.n) {
        throw std::invalid_argument("wcwz::run: inputs must have length n");
    }
    RunResult res{Outcome{}, Transcript(record_events), hash(a, params.key), hash(b, params.key)};
    Channel channel(res.transcript);
    const auto groups_a = partition_hash(res.hash_a, params.m);
    const auto groups_b = partition_hash(res.hash_b, params.m);
    const std::size_t rounds = params.fixed ? groups_a.size() : 1;

    std::size_t offset = 0;
    for (std::size_t r = 1; r <= rounds; ++r) {
        const auto& ga = groups_a[r - 1];
        const auto& gb = groups_b[r - 1];
        GroupResult g = compare_group(ga, gb, params, adversary, channel, rng, r);
        if (g.status == GroupStatus::EveDetected) {
            res.outcome = Outcome::eve_detected(r, g.check_site);
            break;
        }
        if (g.status == GroupStatus::Inconsistent) {
            res.outcome = Outcome::inconsistent(r);
            break;
        }
        if (!g.all_identical()) {
            std::vector<std::size_t> positions;
            for (std::size_t i = 0; i < ga.size(); ++i) {
                if (!g.alice_identical[i] || !g.bob_identical[i]) {
                    positions.push_back(offset + i);
                }
            }
            res.outcome = Outcome::differ(r, std::move(positions), offset + ga.size());
            break;
        }
        offset += ga.size();
        if (r == rounds) {
            res.outcome = Outcome::equal(rounds, offset);
        }
    }
    res.transcript.log(channel.tick(), "run", "outcome", [&] { return to_json(res.outcome); });
    return res;
}

bool forward_decoy_trial(std::size_t m, std::size_t k, const CheckPolicy& policy, const AttackStrategy& adversary,
                         Rng& rng) {
    Transcript tr(false);
    Channel channel(tr);
    QuantumPayload halves;
    for (std::size_t i = 0; i < m; ++i) {
        halves.emplace_back(prepare_bell(rng.bit() ? BellLabel::PsiPlus : BellLabel::PhiPlus));
    }
    auto decoys = generate(k, rng);
    Insertion ins = insert(std::move(halves), decoys, rng);
    const auto id = channel.post(Message{Party::Alice, Party::Bob, 0, Leg::Forward, std::move(ins.merged)});
    channel.tap(id, adversary, context_for(Leg::Forward, decoys), rng);
    auto payload = std::get<QuantumPayload>(channel.deliver(id).body);
    auto measured = measure_announced(payload, decoys, decoy_disclosure(decoys), rng);
    return verify(measured, policy).passed();
}

}  // namespace qpc::wcwz
