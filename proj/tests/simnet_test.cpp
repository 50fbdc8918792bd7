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

#include <gtest/gtest.h>

namespace qpc {
namespace {

Message quantum(std::initializer_list<PrepLabel> labels) {
    QuantumPayload p;
    for (auto l : labels) {
        p.emplace_back(prepare(l));
    }
    return Message{Party::Alice, Party::Bob, 0, Leg::Forward, std::move(p)};
}

TEST(Channel, NoAttackDeliversUnchanged) {
    Transcript t;
    Channel ch(t);
    Rng rng(1);
    const Message sent = quantum({PrepLabel::Zero, PrepLabel::Minus, PrepLabel::Plus});
    const Message got = ch.send(sent, NoAttack{}, TapContext{}, rng);
    EXPECT_EQ(std::get<QuantumPayload>(got.body), std::get<QuantumPayload>(sent.body));
    EXPECT_TRUE(t.eve.observed.empty());
}

TEST(Channel, InterceptAllMeasuresEveryQubit) {
    Transcript t;
    Channel ch(t);
    Rng rng(2);
    const Message got = ch.send(quantum({PrepLabel::Zero, PrepLabel::Plus, PrepLabel::One, PrepLabel::Minus}),
                                InterceptResend{1.0, true, true, std::nullopt}, TapContext{}, rng);
    EXPECT_EQ(t.eve.observed.size(), 4u);
    const auto& payload = std::get<QuantumPayload>(got.body);
    for (std::size_t i = 0; i < payload.size(); ++i) {
        // Resent state is the eigenstate Eve observed.
        const auto& obs = t.eve.observed[i];
        const auto p = born_probabilities(std::get<Ket>(payload[i]), obs.basis);
        EXPECT_NEAR(p[static_cast<std::size_t>(obs.outcome)], 1.0, 1e-12);
    }
}

TEST(Channel, SecondDeliveryIsRefused) {
    Transcript t;
    Channel ch(t);
    const auto id = ch.post(quantum({PrepLabel::Zero}));
    ch.deliver(id);
    EXPECT_THROW(ch.deliver(id), NoCloningError);
    EXPECT_THROW(ch.deliver(999), NoCloningError);
}

TEST(Channel, TicksAdvancePerPost) {
    Transcript t;
    Channel ch(t);
    EXPECT_EQ(ch.tick(), 0u);
    ch.announce(Party::Bob, Announcement{"x", {1}, {}, {}, {}});
    ch.post(quantum({PrepLabel::One}));
    EXPECT_EQ(ch.tick(), 2u);
    EXPECT_EQ(t.counters().messages, 2u);
    EXPECT_EQ(t.counters().qubits_sent, 1u);
}

TEST(Transcript, StoragePeaks) {
    Transcript t;
    t.retain(Party::Alice, 3);
    t.receive(Party::Bob, 2);
    t.sample_storage();
    t.consume(Party::Bob, 2);
    t.release(Party::Alice, 3);
    t.sample_storage();
    EXPECT_EQ(t.counters().qubits_stored_max, 5u);
    EXPECT_EQ(t.counters().received_stored_max, 2u);
    EXPECT_THROW(t.consume(Party::Bob, 1), std::logic_error);
}

TEST(Transcript, JsonlEndsWithCounters) {
    Transcript t;
    t.log(3, "alice", "probe", [] { return nlohmann::json{{"round", 1}}; });
    const auto text = t.to_jsonl();
    const auto nl = text.find('\n');
    EXPECT_EQ(nlohmann::json::parse(text.substr(0, nl))["kind"], "probe");
    EXPECT_EQ(nlohmann::json::parse(text.substr(nl + 1))["kind"], "counters");

    Transcript quiet(false);
    quiet.log(0, "bob", "x", []() -> nlohmann::json { throw std::runtime_error("detail built while not recording"); });
    EXPECT_TRUE(quiet.events().empty());
}

TEST(Schedule, FirstMovers) {
    EXPECT_FALSE(Schedule::simultaneous().first_mover(1));
    EXPECT_EQ(*Schedule::ordered(Party::Bob).first_mover(4), Party::Bob);
    EXPECT_EQ(*Schedule::alternating().first_mover(1), Party::Bob);
    EXPECT_EQ(*Schedule::alternating().first_mover(2), Party::Alice);
    for (const char* s : {"simultaneous", "ordered:alice", "ordered:bob", "alternating"}) {
        EXPECT_EQ(Schedule::parse(s).to_string(), s);
    }
    EXPECT_THROW(Schedule::parse("later"), std::invalid_argument);
}

TEST(Exchange, SimultaneousBuildersSeeNothing) {
    int calls = 0;
    AnnouncementBuilder<int> alice = [&](const std::optional<int>& o) {
        EXPECT_FALSE(o.has_value());
        ++calls;
        return 1;
    };
    AnnouncementBuilder<int> bob = [&](const std::optional<int>& o) {
        EXPECT_FALSE(o.has_value());
        ++calls;
        return 0;
    };
    const auto x = simultaneous_exchange(alice, bob, Schedule::simultaneous());
    const auto y = simultaneous_exchange(alice, bob, Schedule::simultaneous(), 1, true);
    EXPECT_EQ(calls, 4);
    EXPECT_EQ(x.alice_received, y.alice_received);
    EXPECT_EQ(x.bob_received, y.bob_received);
    EXPECT_EQ(x.alice_received, 0);
    EXPECT_EQ(x.bob_received, 1);
}

TEST(Exchange, SecondMoverHearsFirst) {
    AnnouncementBuilder<int> alice = [](const std::optional<int>& o) {
        EXPECT_FALSE(o.has_value());
        return 1;
    };
    AnnouncementBuilder<int> bob = [](const std::optional<int>& o) { return o ? *o ^ 0 : -1; };
    const auto x = simultaneous_exchange(alice, bob, Schedule::ordered(Party::Alice));
    EXPECT_EQ(x.alice_received, 1);
}

TEST(Exchange, HonestOrderDoesNotMatter) {
    // Honest builders draw from their own streams; the ordering changes
    // nothing about what they announce.
    int diff = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        auto run = [&](const Schedule& sched) {
            Rng ra(s * 2 + 1);
            Rng rb(s * 2 + 2);
            AnnouncementBuilder<int> a = [&](const std::optional<int>&) { return ra.bit(); };
            AnnouncementBuilder<int> b = [&](const std::optional<int>&) { return rb.bit(); };
            return simultaneous_exchange(a, b, sched);
        };
        const auto x = run(Schedule::simultaneous());
        const auto y = run(Schedule::ordered(Party::Bob));
        diff += (x.alice_received != y.alice_received) || (x.bob_received != y.bob_received);
    }
    EXPECT_EQ(diff, 0);
}

TEST(Timing, AdaptationWindow) {
    EXPECT_NEAR(adaptation_window({3.0, 1.0, 1.0}), 1.0, 1e-12);  // d = L/3 -> L/(3c)
    EXPECT_NEAR(adaptation_window({6.0, 2.0, 2.0}), 1.0, 1e-12);
    EXPECT_EQ(adaptation_window({2.0, 1.0, 1.0}), 0.0);
    EXPECT_NEAR(adaptation_window({5.0, 2.0, 0.0}), 2.5, 1e-12);
    EXPECT_THROW(adaptation_window({1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(adaptation_window({1.0, 1.0, 2.0}), std::invalid_argument);
}

}  // namespace
}  // namespace qpc
