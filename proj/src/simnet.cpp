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

#include "qpc/simnet.hpp"

#include <algorithm>
#include <sstream>

namespace qpc {

nlohmann::json to_json(const Announcement& a) {
    nlohmann::json j;
    j["kind"] = a.kind;
    if (!a.positions.empty()) {
        j["positions"] = a.positions;
    }
    if (!a.bases.empty()) {
        auto& arr = j["bases"] = nlohmann::json::array();
        for (auto b : a.bases) {
            arr.push_back(std::string(to_string(b)));
        }
    }
    if (!a.labels.empty()) {
        auto& arr = j["labels"] = nlohmann::json::array();
        for (auto l : a.labels) {
            arr.push_back(std::string(to_string(l)));
        }
    }
    if (!a.bits.empty()) {
        j["bits"] = a.bits;
    }
    return j;
}

nlohmann::json to_json(const ResourceCounters& c) {
    return nlohmann::json{{"qubits_sent", c.qubits_sent},
                          {"qubits_stored_max", c.qubits_stored_max},
                          {"received_stored_max", c.received_stored_max},
                          {"bell_pairs_used", c.bell_pairs_used},
                          {"entangled_qubits_sent", c.entangled_qubits_sent},
                          {"single_qubit_states_prepared", c.single_qubit_states_prepared},
                          {"decoys_used", c.decoys_used},
                          {"messages", c.messages}};
}

void Transcript::release(Party p, std::size_t n) {
    auto& r = retained_[index(p)];
    if (n > r) {
        throw std::logic_error("transcript: releasing more qubits than retained");
    }
    r -= n;
}

void Transcript::consume(Party p, std::size_t n) {
    auto& r = received_[index(p)];
    if (n > r) {
        throw std::logic_error("transcript: consuming more qubits than received");
    }
    r -= n;
}

void Transcript::sample_storage() {
    const std::uint64_t total = retained_[0] + retained_[1] + received_[0] + received_[1];
    const std::uint64_t received = received_[0] + received_[1];
    counters_.qubits_stored_max = std::max<std::uint64_t>(counters_.qubits_stored_max, total);
    counters_.received_stored_max = std::max<std::uint64_t>(counters_.received_stored_max, received);
}

void Transcript::count_sent(const QuantumPayload& payload) {
    counters_.qubits_sent += payload.size();
    for (const auto& q : payload) {
        if (std::holds_alternative<Ket4>(q)) {
            ++counters_.entangled_qubits_sent;
        }
    }
}

void Transcript::merge_counters(const ResourceCounters& o) {
    counters_.qubits_sent += o.qubits_sent;
    counters_.qubits_stored_max = std::max(counters_.qubits_stored_max, o.qubits_stored_max);
    counters_.received_stored_max = std::max(counters_.received_stored_max, o.received_stored_max);
    counters_.bell_pairs_used += o.bell_pairs_used;
    counters_.entangled_qubits_sent += o.entangled_qubits_sent;
    counters_.single_qubit_states_prepared += o.single_qubit_states_prepared;
    counters_.decoys_used += o.decoys_used;
    counters_.messages += o.messages;
}

std::string Transcript::to_jsonl() const {
    std::ostringstream os;
    for (const auto& e : events_) {
        nlohmann::json j{{"tick", e.tick}, {"actor", e.actor}, {"kind", e.kind}, {"detail", e.detail}};
        os << j.dump() << '\n';
    }
    nlohmann::json tail{{"kind", "counters"}, {"detail", to_json(counters_)}};
    os << tail.dump() << '\n';
    return os.str();
}

std::uint64_t Channel::post(Message msg) {
    transcript_.sample_storage();
    msg.tick = ++tick_;
    const std::uint64_t id = next_id_++;
    transcript_.count_message();
    if (const auto* payload = std::get_if<QuantumPayload>(&msg.body)) {
        transcript_.count_sent(*payload);
        transcript_.log(msg.tick, to_string(msg.from), "send_quantum", [&] {
            std::size_t pairs = 0;
            for (const auto& q : *payload) {
                pairs += std::holds_alternative<Ket4>(q) ? 1 : 0;
            }
            return nlohmann::json{{"message", id},
                                  {"to", std::string(to_string(msg.to))},
                                  {"leg", std::string(to_string(msg.leg))},
                                  {"qubits", payload->size()},
                                  {"pair_halves", pairs}};
        });
    } else {
        const auto& a = std::get<Announcement>(msg.body);
        transcript_.log(msg.tick, to_string(msg.from), "announce", [&] {
            auto j = to_json(a);
            j["message"] = id;
            j["to"] = std::string(to_string(msg.to));
            return j;
        });
    }
    in_flight_.emplace(id, std::move(msg));
    return id;
}

void Channel::tap(std::uint64_t id, const AttackStrategy& strategy, const TapContext& context, Rng& rng) {
    auto it = in_flight_.find(id);
    if (it == in_flight_.end()) {
        throw NoCloningError("tap: message " + std::to_string(id) + " is not in flight");
    }
    auto* payload = std::get_if<QuantumPayload>(&it->second.body);
    if (payload == nullptr || !is_external(strategy)) {
        return;
    }
    const std::size_t before = transcript_.eve.observed.size();
    const std::size_t flips_before = transcript_.eve.flips_applied;
    tap_quantum(*payload, strategy, context, rng, transcript_.eve, id);
    transcript_.log(tick_, "eve", "tap", [&] {
        return nlohmann::json{{"message", id},
                              {"strategy", describe(strategy)},
                              {"measured", transcript_.eve.observed.size() - before},
                              {"flipped", transcript_.eve.flips_applied - flips_before}};
    });
}

Message Channel::deliver(std::uint64_t id) {
    auto node = in_flight_.extract(id);
    if (node.empty()) {
        throw NoCloningError("message " + std::to_string(id) + " already delivered or never sent");
    }
    Message msg = std::move(node.mapped());
    if (const auto* payload = std::get_if<QuantumPayload>(&msg.body)) {
        transcript_.receive(msg.to, payload->size());
        transcript_.log(tick_, to_string(msg.to), "receive_quantum",
                        [&] { return nlohmann::json{{"message", id}, {"qubits", payload->size()}}; });
    }
    return msg;
}

Message Channel::send(Message msg, const AttackStrategy& strategy, const TapContext& context, Rng& rng) {
    const std::uint64_t id = post(std::move(msg));
    tap(id, strategy, context, rng);
    return deliver(id);
}

Announcement Channel::announce(Party from, Announcement a) {
    Message m;
    m.from = from;
    m.to = other(from);
    m.body = std::move(a);
    const std::uint64_t id = post(std::move(m));
    return std::get<Announcement>(deliver(id).body);
}

std::optional<Party> Schedule::first_mover(std::size_t round) const {
    switch (mode) {
        case ScheduleMode::Simultaneous: return std::nullopt;
        case ScheduleMode::Ordered: return first;
        case ScheduleMode::Alternating: return round % 2 == 1 ? Party::Bob : Party::Alice;
    }
    return std::nullopt;
}

std::string Schedule::to_string() const {
    switch (mode) {
        case ScheduleMode::Simultaneous: return "simultaneous";
        case ScheduleMode::Ordered: return "ordered:" + std::string(qpc::to_string(first));
        case ScheduleMode::Alternating: return "alternating";
    }
    return "?";
}

Schedule Schedule::parse(const std::string& text) {
    if (text == "simultaneous") {
        return simultaneous();
    }
    if (text == "ordered:alice") {
        return ordered(Party::Alice);
    }
    if (text == "ordered:bob") {
        return ordered(Party::Bob);
    }
    if (text == "alternating") {
        return alternating();
    }
    throw std::invalid_argument("unrecognized schedule: " + text);
}

double adaptation_window(const TimingScene& scene) {
    if (!(scene.distance >= 0.0) || !(scene.signal_speed > 0.0) || scene.agent_distance < 0.0 ||
        scene.agent_distance > scene.distance) {
        throw std::invalid_argument("timing scene requires L >= 0, c > 0 and 0 <= d <= L");
    }
    return std::max(0.0, (scene.distance - 2.0 * scene.agent_distance) / scene.signal_speed);
}

}  // namespace qpc
