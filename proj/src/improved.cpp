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

#include "qpc/improved.hpp"

#include <array>
#include <stdexcept>

namespace qpc::improved {

namespace {

Basis random_basis(Rng& rng) { return rng.bit() ? Basis::X : Basis::Z; }

const InternalCheat* cheat_by(const AttackStrategy& adversary, Party p) {
    const auto* c = std::get_if<InternalCheat>(&adversary);
    return (c != nullptr && c->party == p) ? c : nullptr;
}

struct ForwardLeg {
    std::vector<PrepLabel> prepared;
    std::size_t code_position = 0;
    std::uint64_t message = 0;
    QuantumPayload delivered;
};

// Probe: the prober's k+1 random BB84 qubits. The encoder's choice of code
// slot is its private randomness; drawing it before delivery does not change
// its distribution and lets the harness describe the decoy slots to oracle taps.
ForwardLeg send_probe(std::size_t k, Party prober, const AttackStrategy& adversary, Channel& channel, Rng& rng,
                      std::size_t round) {
    ForwardLeg leg;
    leg.prepared.resize(k + 1);
    QuantumPayload probe;
    probe.reserve(k + 1);
    for (auto& label : leg.prepared) {
        label = static_cast<PrepLabel>(rng.below(4));
        probe.emplace_back(prepare(label));
    }
    channel.transcript().count_prepared(k + 1);
    leg.code_position = rng.below(k + 1);
    TapContext ctx;
    ctx.leg = Leg::Forward;
    for (std::size_t i = 0; i <= k; ++i) {
        if (i != leg.code_position) {
            ctx.decoy_positions.push_back(i);
        }
    }
    channel.transcript().log(channel.tick(), to_string(prober), "probe", [&] {
        nlohmann::json labels = nlohmann::json::array();
        for (auto l : leg.prepared) {
            labels.push_back(std::string(to_string(l)));
        }
        return nlohmann::json{{"round", round}, {"labels", labels}};
    });
    leg.message = channel.post(Message{prober, other(prober), 0, Leg::Forward, std::move(probe)});
    channel.tap(leg.message, adversary, ctx, rng);
    leg.delivered = std::get<QuantumPayload>(channel.deliver(leg.message).body);
    return leg;
}

// The encoder measures every slot but the code slot at once, each in a
// random basis.
std::vector<DecoyRecord> measure_forward_decoys(const ForwardLeg& leg, Party encoder, Channel& channel, Rng& rng) {
    std::vector<DecoyRecord> records;
    records.reserve(leg.prepared.size() - 1);
    for (std::size_t pos = 0; pos < leg.prepared.size(); ++pos) {
        if (pos == leg.code_position) {
            continue;
        }
        const Basis basis = random_basis(rng);
        const auto m = measure(std::get<Ket>(leg.delivered[pos]), basis, rng);
        records.push_back(DecoyRecord{pos, leg.prepared[pos], basis, m.bit});
    }
    channel.transcript().consume(encoder, records.size());
    return records;
}

CheckResult check_forward_decoys(const std::vector<DecoyRecord>& records, const CheckPolicy& policy, Party prober,
                                 Channel& channel) {
    const CheckResult check = verify(records, policy);
    // One-by-one reveal stops at the first conflict.
    std::size_t revealed = records.size();
    if (check.status == CheckStatus::FailConflict) {
        revealed = check.first_conflict + 1;
    }
    Announcement positions{"forward_decoy_positions", {}, {}, {}, {}};
    Announcement states{"forward_decoy_states", {}, {}, {}, {}};
    for (std::size_t j = 0; j < revealed; ++j) {
        positions.positions.push_back(records[j].position);
        states.labels.push_back(records[j].prepared);
    }
    channel.announce(other(prober), std::move(positions));
    channel.announce(prober, std::move(states));
    return check;
}

// Each party discloses its return code position at most once.
class DisclosureLedger {
  public:
    void disclose(Party p, std::size_t position) {
        auto& slot = slots_[p == Party::Alice ? 0 : 1];
        if (slot) {
            throw ProtocolError("code position already disclosed by " + std::string(to_string(p)));
        }
        slot = position;
    }

  private:
    std::array<std::optional<std::size_t>, 2> slots_;
};

Announcement code_position(std::size_t pos) { return Announcement{"code_position", {pos}, {}, {}, {}}; }

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::AtoB ? "alice->bob" : "bob->alice"; }

void Params::validate() const {
    if (n < 1 || n > kMaxBitStringLength) {
        throw std::invalid_argument("improved: n must lie in [1, 2^24]");
    }
    if (k < 1) {
        throw std::invalid_argument("improved: k must be at least 1");
    }
    if (!(check_fraction > 0.0) || check_fraction > 1.0) {
        throw std::invalid_argument("improved: check_fraction must lie in (0, 1]");
    }
    if (policy.threshold < 0.0 || policy.threshold > 1.0) {
        throw std::invalid_argument("improved: threshold must lie in [0, 1]");
    }
}

std::variant<PendingTransfer, PhaseAbort> probe_and_encode(int owner_bit, Direction direction, const Params& params,
                                                           const AttackStrategy& adversary, Channel& channel,
                                                           Rng& rng, std::size_t round) {
    const Party prober = prober_of(direction);
    const Party encoder = encoder_of(direction);
    const InternalCheat* cheat = cheat_by(adversary, encoder);
    const std::size_t k = params.k;
    Transcript& tr = channel.transcript();

    for (std::size_t retries = 0;; ++retries) {
        if (retries > params.max_retries) {
            throw ProtocolError("improved: basis-match retry budget exhausted");
        }
        ForwardLeg leg = send_probe(k, prober, adversary, channel, rng, round);
        auto forward_records = measure_forward_decoys(leg, encoder, channel, rng);

        // Encode on the unmeasured code qubit without reading it.
        Ket code = std::get<Ket>(leg.delivered[leg.code_position]);
        int intended = owner_bit;
        std::optional<Ket> spare;
        if (cheat != nullptr && cheat->policy == CheatPolicy::AlterCodeQubit) {
            intended = rng.bit();
            code = encode_bit(code, intended, params.literal_x);
        } else if (cheat != nullptr && cheat->policy == CheatPolicy::AdaptAfterDisclosure && k >= 1) {
            // Learn the code state in a guessed basis and keep both readings:
            // the real slot decodes as 0 and the spare as 1 when the guess is right.
            const Basis guess = random_basis(rng);
            const auto m = measure(code, guess, rng);
            code = prepare(label_for(guess, m.bit));
            spare = prepare(label_for(guess, m.bit ^ 1));
            intended = 0;
        } else {
            code = encode_bit(code, owner_bit, params.literal_x);
        }
        tr.log(channel.tick(), to_string(encoder), "encode",
               [&] { return nlohmann::json{{"round", round}, {"measured_decoys", forward_records.size()}}; });

        const std::size_t fresh = spare ? k - 1 : k;
        auto return_decoys = generate(fresh, rng);
        tr.count_decoys(fresh);
        tr.count_prepared(fresh + (spare ? 1 : 0));
        QuantumPayload codes{code};
        bool spare_first = false;
        if (spare) {
            spare_first = rng.bit() != 0;
            codes.insert(spare_first ? codes.begin() : codes.end(), *spare);
        }
        Insertion ins = insert(std::move(codes), return_decoys, rng);
        const std::size_t real_pos = ins.code_positions[spare && spare_first ? 1 : 0];
        std::optional<std::size_t> spare_pos;
        if (spare) {
            spare_pos = ins.code_positions[spare_first ? 0 : 1];
        }
        tr.consume(encoder, 1);

        const Basis bulk = random_basis(rng);
        TapContext rctx;
        rctx.leg = Leg::Return;
        rctx.bulk_basis = bulk;
        for (const auto& d : return_decoys) {
            rctx.decoy_positions.push_back(d.position);
        }
        const std::size_t returned_size = ins.merged.size();
        const auto rid = channel.post(Message{encoder, prober, 0, Leg::Return, std::move(ins.merged)});
        channel.tap(rid, adversary, rctx, rng);
        auto returned = std::get<QuantumPayload>(channel.deliver(rid).body);

        // The whole return is measured on arrival.
        std::vector<int> outcomes(returned_size);
        for (std::size_t j = 0; j < returned_size; ++j) {
            outcomes[j] = measure(std::get<Ket>(returned[j]), bulk, rng).bit;
        }
        tr.consume(prober, returned_size);
        tr.log(channel.tick(), to_string(prober), "bulk_measure", [&] {
            return nlohmann::json{{"round", round}, {"basis", std::string(to_string(bulk))}, {"outcomes", outcomes}};
        });

        const CheckResult check = check_forward_decoys(forward_records, params.policy, prober, channel);
        tr.log(channel.tick(), to_string(encoder), "forward_decoy_check", [&] {
            return nlohmann::json{{"round", round},
                                  {"direction", std::string(to_string(direction))},
                                  {"passed", check.passed()},
                                  {"conflicts", check.conflicts},
                                  {"same_basis", check.same_basis}};
        });
        if (!check.passed()) {
            return PhaseAbort{"forward_decoy_check:" + std::string(to_string(direction))};
        }

        const bool match = basis_of(leg.prepared[leg.code_position]) == bulk;
        channel.announce(prober, Announcement{match ? "keep" : "discard", {}, {}, {}, {}});
        if (!match) {
            continue;
        }

        PendingTransfer p;
        p.state = BitRoundState{direction, leg.prepared[leg.code_position], leg.code_position, real_pos, bulk, retries};
        p.bulk_outcomes = std::move(outcomes);
        p.return_decoys = std::move(return_decoys);
        p.forward_message = leg.message;
        p.return_message = rid;
        p.intended_bit = intended;
        p.spare_position = spare_pos;
        return p;
    }
}

CheckResult return_decoy_check(const PendingTransfer& pending, const Params& params, Channel& channel, Rng& rng) {
    const Party prober = prober_of(pending.state.direction);
    const auto chosen = select_portion(pending.return_decoys.size(), params.check_fraction, rng);
    Announcement reveal{"return_decoy_states", {}, {}, {}, {}};
    std::vector<DecoyRecord> records;
    records.reserve(chosen.size());
    for (std::size_t idx : chosen) {
        DecoyRecord r = pending.return_decoys[idx];
        reveal.positions.push_back(r.position);
        reveal.labels.push_back(r.prepared);
        r.measured_basis = pending.state.receiver_bulk_basis;
        r.outcome = pending.bulk_outcomes[r.position];
        records.push_back(r);
    }
    channel.announce(other(prober), std::move(reveal));
    const CheckResult check = verify(records, params.policy);
    channel.transcript().log(channel.tick(), to_string(prober), "return_decoy_check", [&] {
        return nlohmann::json{{"direction", std::string(to_string(pending.state.direction))},
                              {"checked", records.size()},
                              {"passed", check.passed()},
                              {"conflicts", check.conflicts},
                              {"same_basis", check.same_basis}};
    });
    return check;
}

Ket encode_bit(const Ket& code, int bit, bool literal_x) {
    if (bit == 0) {
        return code;
    }
    return literal_x ? apply_x(code) : apply_x(apply_z(code));
}

int decode(const PendingTransfer& pending, std::size_t disclosed_position) {
    if (disclosed_position >= pending.bulk_outcomes.size()) {
        throw ProtocolError("disclosed code position out of range");
    }
    return pending.bulk_outcomes[disclosed_position] ^ bit_of(pending.state.code_prep);
}

TransferResult transfer_bit(int owner_bit, Direction direction, const Params& params, const AttackStrategy& adversary,
                            Rng& rng, bool record_events) {
    TransferResult res{std::nullopt, {}, {}, 0, 0, Transcript(record_events)};
    Channel channel(res.transcript);
    auto phase = probe_and_encode(owner_bit, direction, params, adversary, channel, rng);
    if (auto* abort = std::get_if<PhaseAbort>(&phase)) {
        res.abort_site = abort->site;
        return res;
    }
    const auto& pending = std::get<PendingTransfer>(phase);
    res.state = pending.state;
    res.forward_message = pending.forward_message;
    res.return_message = pending.return_message;
    if (!return_decoy_check(pending, params, channel, rng).passed()) {
        res.abort_site = "return_decoy_check:" + std::string(to_string(direction));
        return res;
    }
    const auto disclosed =
        channel.announce(encoder_of(direction), code_position(pending.state.code_position_return));
    res.learned_bit = decode(pending, disclosed.positions.front());
    res.transcript.log(channel.tick(), to_string(prober_of(direction)), "decode",
                       [&] { return nlohmann::json{{"bit", *res.learned_bit}}; });
    return res;
}

RunResult run(const BitString& a, const BitString& b, const Params& params, const AttackStrategy& adversary, Rng& rng,
              bool record_events) {
    params.validate();
    if (a.size() != params.n || b.size() != params.n) {
        throw std::invalid_argument("improved::run: inputs must have length n");
    }
    RunResult res{Outcome{}, Transcript(record_events), hash(a, params.key), hash(b, params.key), {}, {}, 0, 0};
    Channel channel(res.transcript);
    Transcript& tr = res.transcript;
    const InternalCheat* alice_cheat = cheat_by(adversary, Party::Alice);
    const InternalCheat* bob_cheat = cheat_by(adversary, Party::Bob);

    auto finish = [&](Outcome o) {
        res.outcome = std::move(o);
        tr.log(channel.tick(), "run", "outcome", [&] { return to_json(res.outcome); });
        return std::move(res);
    };

    for (std::size_t i = 1; i <= params.n; ++i) {
        const int ha = res.hash_a[i - 1];
        const int hb = res.hash_b[i - 1];

        // Bob encodes on Alice's probe, then Alice on Bob's.
        auto ab_phase = probe_and_encode(hb, Direction::AtoB, params, adversary, channel, rng, i);
        if (auto* abort = std::get_if<PhaseAbort>(&ab_phase)) {
            return finish(Outcome::eve_detected(i, abort->site));
        }
        auto ba_phase = probe_and_encode(ha, Direction::BtoA, params, adversary, channel, rng, i);
        if (auto* abort = std::get_if<PhaseAbort>(&ba_phase)) {
            return finish(Outcome::eve_detected(i, abort->site));
        }
        const auto& ab = std::get<PendingTransfer>(ab_phase);
        const auto& ba = std::get<PendingTransfer>(ba_phase);
        res.retries += ab.state.retries + ba.state.retries;

        // Return-decoy checks: Alice reveals part of her return decoys to Bob, and vice versa.
        if (!return_decoy_check(ba, params, channel, rng).passed()) {
            return finish(Outcome::eve_detected(i, "return_decoy_check:" + std::string(to_string(ba.state.direction))));
        }
        if (!return_decoy_check(ab, params, channel, rng).passed()) {
            return finish(Outcome::eve_detected(i, "return_decoy_check:" + std::string(to_string(ab.state.direction))));
        }

        // Code disclosure. Alice discloses where her code qubit sits in the
        // sequence she returned to Bob (ba), Bob likewise for ab.
        DisclosureLedger ledger;
        std::optional<int> alice_claim;  // what a cheating Alice believes Bob will decode
        std::optional<int> bob_claim;
        auto adaptive_builder = [&](const PendingTransfer& mine, const PendingTransfer& theirs,
                                    std::optional<int>& claim) {
            return [&, claim_ptr = &claim](const std::optional<Announcement>& opponent) {
                // With the opponent's disclosure in hand the cheater already
                // knows the opponent's bit and points at the matching slot.
                int want;
                if (opponent) {
                    want = decode(theirs, opponent->positions.front());
                } else {
                    want = rng.bit();
                }
                *claim_ptr = want;
                const std::size_t pos = want == 1 && mine.spare_position ? *mine.spare_position
                                                                         : mine.state.code_position_return;
                return code_position(pos);
            };
        };
        AnnouncementBuilder<Announcement> alice_builder;
        AnnouncementBuilder<Announcement> bob_builder;
        if (alice_cheat && alice_cheat->policy == CheatPolicy::AdaptAfterDisclosure) {
            alice_builder = adaptive_builder(ba, ab, alice_claim);
        } else {
            alice_builder = [&](const std::optional<Announcement>&) {
                return code_position(ba.state.code_position_return);
            };
        }
        if (bob_cheat && bob_cheat->policy == CheatPolicy::AdaptAfterDisclosure) {
            bob_builder = adaptive_builder(ab, ba, bob_claim);
        } else {
            bob_builder = [&](const std::optional<Announcement>&) { return code_position(ab.state.code_position_return); };
        }
        auto exchanged = simultaneous_exchange(alice_builder, bob_builder, params.schedule, i);
        ledger.disclose(Party::Alice, exchanged.bob_received.positions.front());
        ledger.disclose(Party::Bob, exchanged.alice_received.positions.front());
        channel.announce(Party::Alice, exchanged.bob_received);
        channel.announce(Party::Bob, exchanged.alice_received);

        // A cheater who committed blind tries to re-disclose once the
        // opponent's position is public. The ledger refuses.
        auto try_redisclose = [&](const InternalCheat* cheat, const PendingTransfer& mine, const PendingTransfer& theirs,
                                  const Announcement& heard) {
            if (!cheat || cheat->policy != CheatPolicy::AdaptAfterDisclosure || !mine.spare_position) {
                return;
            }
            // Speaking second, the cheater already chose after hearing.
            const auto first = params.schedule.first_mover(i);
            if (first && *first != cheat->party) {
                return;
            }
            const int want = decode(theirs, heard.positions.front());
            const std::size_t pos = want == 1 ? *mine.spare_position : mine.state.code_position_return;
            try {
                ledger.disclose(cheat->party, pos);
            } catch (const ProtocolError&) {
                ++res.rejected_disclosures;
                tr.log(channel.tick(), to_string(cheat->party), "disclosure_rejected",
                       [&] { return nlohmann::json{{"round", i}, {"attempted_position", pos}}; });
            }
        };
        try_redisclose(alice_cheat, ba, ab, exchanged.alice_received);
        try_redisclose(bob_cheat, ab, ba, exchanged.bob_received);

        // Decode.
        const int alice_got = decode(ab, exchanged.alice_received.positions.front());
        const int bob_got = decode(ba, exchanged.bob_received.positions.front());
        res.alice_learned.push_back(alice_got);
        res.bob_learned.push_back(bob_got);
        tr.log(channel.tick(), "run", "decode",
               [&] { return nlohmann::json{{"round", i}, {"alice_learned", alice_got}, {"bob_learned", bob_got}}; });

        // Cross-check. A cheater reports what it believes it conveyed.
        const int alice_own = alice_claim ? *alice_claim : (alice_cheat ? ba.intended_bit : ha);
        const int bob_own = bob_claim ? *bob_claim : (bob_cheat ? ab.intended_bit : hb);
        const bool alice_equal = alice_own == alice_got;
        const bool bob_equal = bob_own == bob_got;
        channel.announce(Party::Alice, Announcement{"verdict", {}, {}, {}, {alice_equal ? 1 : 0}});
        channel.announce(Party::Bob, Announcement{"verdict", {}, {}, {}, {bob_equal ? 1 : 0}});
        if (alice_equal != bob_equal) {
            return finish(Outcome::inconsistent(i));
        }
        if (!alice_equal) {
            return finish(Outcome::differ(i, {i - 1}, i));
        }
    }
    return finish(Outcome::equal(params.n, params.n));
}

bool forward_decoy_trial(std::size_t k, const CheckPolicy& policy, const AttackStrategy& adversary, Rng& rng) {
    Transcript tr(false);
    Channel channel(tr);
    ForwardLeg leg = send_probe(k, Party::Alice, adversary, channel, rng, 1);
    auto records = measure_forward_decoys(leg, Party::Bob, channel, rng);
    return verify(records, policy).passed();
}

}  // namespace qpc::improved
