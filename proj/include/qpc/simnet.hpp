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

// Simulated two-party network: message delivery with an eavesdropper hook,
// the announcement schedule model, resource-counting transcripts, and the
// closed-form adaptation window for an agent-site cheater.
//
// Time is logical: the channel tick advances once per posted message.

#ifndef QPC_SIMNET_HPP
#define QPC_SIMNET_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qpc/adversary.hpp"
#include "qpc/common.hpp"
#include "qpc/qstate.hpp"

namespace qpc {

/// Structured classical announcement (positions, basis labels, state labels,
/// bits); never a raw bitstring.
struct Announcement {
    std::string kind;
    std::vector<std::size_t> positions;
    std::vector<Basis> bases;
    std::vector<PrepLabel> labels;
    std::vector<int> bits;

    friend bool operator==(const Announcement&, const Announcement&) = default;
};

nlohmann::json to_json(const Announcement& a);

using QuantumPayload = std::vector<Qubit>;

struct Message {
    Party from = Party::Alice;
    Party to = Party::Bob;
    std::uint64_t tick = 0;
    Leg leg = Leg::Forward;  // quantum messages only
    std::variant<QuantumPayload, Announcement> body;

    bool is_quantum() const { return std::holds_alternative<QuantumPayload>(body); }
};

/// Delivering or reading an in-flight quantum payload a second time.
class NoCloningError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct ResourceCounters {
    std::uint64_t qubits_sent = 0;
    /// Peak, over message boundaries, of qubits held by both parties
    /// (retained pair halves plus received-but-unconsumed qubits).
    std::uint64_t qubits_stored_max = 0;
    /// Peak of received-but-unconsumed qubits alone.
    std::uint64_t received_stored_max = 0;
    std::uint64_t bell_pairs_used = 0;
    std::uint64_t entangled_qubits_sent = 0;
    std::uint64_t single_qubit_states_prepared = 0;
    std::uint64_t decoys_used = 0;
    std::uint64_t messages = 0;

    friend bool operator==(const ResourceCounters&, const ResourceCounters&) = default;
};

nlohmann::json to_json(const ResourceCounters& c);

struct TranscriptEvent {
    std::uint64_t tick = 0;
    std::string actor;
    std::string kind;
    nlohmann::json detail;
};

/// Append-only event log plus resource counters for one run. With event
/// recording off only the counters are maintained (Monte Carlo mode).
class Transcript {
  public:
    explicit Transcript(bool record_events = true) : record_(record_events) {}

    bool recording() const { return record_; }

    /// `detail` is a callable returning the JSON detail; it is only invoked
    /// when events are recorded.
    template <class DetailFn>
    void log(std::uint64_t tick, std::string_view actor, std::string_view kind, DetailFn&& detail) {
        if (record_) {
            events_.push_back(TranscriptEvent{tick, std::string(actor), std::string(kind), detail()});
        }
    }
    void log(std::uint64_t tick, std::string_view actor, std::string_view kind) {
        log(tick, actor, kind, [] { return nlohmann::json::object(); });
    }

    void retain(Party p, std::size_t n) { retained_[index(p)] += n; }
    void release(Party p, std::size_t n);
    void receive(Party p, std::size_t n) { received_[index(p)] += n; }
    void consume(Party p, std::size_t n);
    /// Records current holdings into the peak counters.
    void sample_storage();

    void count_prepared(std::size_t n) { counters_.single_qubit_states_prepared += n; }
    void count_bell_pairs(std::size_t n) { counters_.bell_pairs_used += n; }
    void count_decoys(std::size_t n) { counters_.decoys_used += n; }
    void count_sent(const QuantumPayload& payload);
    void count_message() { ++counters_.messages; }

    std::size_t held(Party p) const { return retained_[index(p)] + received_[index(p)]; }
    const ResourceCounters& counters() const { return counters_; }
    const std::vector<TranscriptEvent>& events() const { return events_; }

    /// Appends the counters of another run (sums, and max for peaks).
    void merge_counters(const ResourceCounters& other);

    /// One JSON object per line: {"tick","actor","kind","detail"}, followed by
    /// a final {"kind":"counters", ...} line.
    std::string to_jsonl() const;

    EveView eve;

  private:
    static std::size_t index(Party p) { return p == Party::Alice ? 0 : 1; }

    bool record_;
    std::vector<TranscriptEvent> events_;
    ResourceCounters counters_;
    std::array<std::size_t, 2> retained_{};
    std::array<std::size_t, 2> received_{};
};

/// In-flight message store. A message is posted once and delivered once;
/// delivering it again raises NoCloningError.
class Channel {
  public:
    explicit Channel(Transcript& transcript) : transcript_(transcript) {}

    std::uint64_t tick() const { return tick_; }

    /// Puts a message in flight and returns its id. Samples storage first:
    /// each post is a message boundary.
    std::uint64_t post(Message msg);
    /// Applies an adversary tap to an in-flight quantum message.
    void tap(std::uint64_t id, const AttackStrategy& strategy, const TapContext& context, Rng& rng);
    /// Removes the message from the channel and hands it to its recipient.
    Message deliver(std::uint64_t id);

    /// post + tap + deliver.
    Message send(Message msg, const AttackStrategy& strategy, const TapContext& context, Rng& rng);

    /// Public classical broadcast from `from`; logged and returned as delivered.
    Announcement announce(Party from, Announcement a);

    Transcript& transcript() { return transcript_; }

  private:
    Transcript& transcript_;
    std::uint64_t tick_ = 0;
    std::uint64_t next_id_ = 1;
    std::map<std::uint64_t, Message> in_flight_;
};

enum class ScheduleMode { Simultaneous, Ordered, Alternating };

struct Schedule {
    ScheduleMode mode = ScheduleMode::Simultaneous;
    Party first = Party::Alice;  // Ordered only

    static Schedule simultaneous() { return {}; }
    static Schedule ordered(Party first) { return {ScheduleMode::Ordered, first}; }
    /// Sequential announcements; Alice speaks after Bob in odd rounds and
    /// before him in even rounds (1-based).
    static Schedule alternating() { return {ScheduleMode::Alternating, Party::Alice}; }

    /// Who announces first in `round`; nullopt under Simultaneous.
    std::optional<Party> first_mover(std::size_t round) const;

    std::string to_string() const;
    /// "simultaneous", "ordered:alice", "ordered:bob" or "alternating".
    static Schedule parse(const std::string& text);
};

template <class T>
struct ExchangeResult {
    T alice_received;  // what Bob announced
    T bob_received;    // what Alice announced
};

/// Builds a party's announcement. Under Simultaneous the argument is always
/// nullopt; under a sequential schedule the second mover receives the first
/// mover's announcement.
template <class T>
using AnnouncementBuilder = std::function<T(const std::optional<T>& opponent)>;

template <class T>
ExchangeResult<T> simultaneous_exchange(const AnnouncementBuilder<T>& alice, const AnnouncementBuilder<T>& bob,
                                        const Schedule& schedule, std::size_t round = 1,
                                        bool bob_evaluated_first = false) {
    const std::optional<Party> first = schedule.first_mover(round);
    if (!first) {
        if (bob_evaluated_first) {
            T b = bob(std::nullopt);
            T a = alice(std::nullopt);
            return {std::move(b), std::move(a)};
        }
        T a = alice(std::nullopt);
        T b = bob(std::nullopt);
        return {std::move(b), std::move(a)};
    }
    if (*first == Party::Alice) {
        T a = alice(std::nullopt);
        T b = bob(a);
        return {std::move(b), std::move(a)};
    }
    T b = bob(std::nullopt);
    T a = alice(b);
    return {std::move(b), std::move(a)};
}

/// Agent-site geometry: parties `distance` apart, signals at `signal_speed`,
/// a cheater's agent `agent_distance` from the honest party.
struct TimingScene {
    double distance = 1.0;
    double signal_speed = 1.0;
    double agent_distance = 0.0;
};

/// (L - 2d) / c, clamped at 0: how long the agent can study the honest
/// message before its reply must leave to arrive on schedule.
double adaptation_window(const TimingScene& scene);

}  // namespace qpc

#endif  // QPC_SIMNET_HPP
