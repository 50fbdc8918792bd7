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

#include "qpc/experiment.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace qpc::experiment {
namespace {

TEST(Config, RejectsBadCombinations) {
    Config c;
    c.protocol = Protocol::Improved;
    c.m = 2;
    EXPECT_THROW(c.validate(), ConfigError);
    c = Config{};
    c.alpha = 0.5;
    c.attack = "xflip:1";
    EXPECT_THROW(c.validate(), ConfigError);
    c = Config{};
    c.a = "0101";
    EXPECT_THROW(c.validate(), ConfigError);
    c.b = "01";
    EXPECT_THROW(c.validate(), ConfigError);
    c = Config{};
    c.protocol = Protocol::Coinflip;
    c.bob = "adaptive:0";
    EXPECT_THROW(c.validate(), ConfigError);
    c.schedule = "ordered:alice";
    EXPECT_NO_THROW(c.validate());
    c = Config{};
    c.attack = "cheat:alice:adapt";
    EXPECT_THROW(c.validate(), ConfigError);
    c.protocol = Protocol::Improved;
    EXPECT_NO_THROW(c.validate());
    c.format = "xml";
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_THROW(parse_protocol("bb84"), ConfigError);
}

TEST(Config, JsonOverlay) {
    Config c;
    c.merge_json(nlohmann::json{{"protocol", "improved"}, {"n", 8}, {"seed", 5}});
    EXPECT_EQ(c.protocol, Protocol::Improved);
    EXPECT_EQ(c.n, 8u);
    EXPECT_EQ(c.seed, 5u);
    EXPECT_THROW(c.merge_json(nlohmann::json{{"colour", 1}}), ConfigError);
    EXPECT_THROW(c.merge_json(nlohmann::json{{"n", "six"}}), ConfigError);
}

TEST(Run, OutputIsIndependentOfThreads) {
    Config c;
    c.protocol = Protocol::Improved;
    c.trials = 3000;
    c.seed = 11;
    c.threads = 1;
    const auto one = run(c).to_json().dump();
    c.threads = 5;
    EXPECT_EQ(run(c).to_json().dump(), one);
    c.seed = 12;
    EXPECT_NE(run(c).to_json().dump(), one);
}

TEST(Run, TranscriptsAreDeterministic) {
    Config c;
    c.trials = 5;
    c.seed = 3;
    std::string t1;
    std::string t2;
    run(c, &t1);
    c.threads = 4;
    run(c, &t2);
    EXPECT_EQ(t1, t2);
    EXPECT_EQ(nlohmann::json::parse(t1.substr(0, t1.find('\n')))["trial"], 0);
}

TEST(Run, KnownBugIsFlagged) {
    Config c;
    c.protocol = Protocol::Wcwz;
    c.trials = 1;
    c.a = "000011";
    c.b = "000010";
    c.hash_key = "identity";
    const auto s = run(c);
    EXPECT_EQ(s.verdicts.equal, 1u);
    EXPECT_EQ(s.wrong_equal, 1u);
    EXPECT_EQ(s.to_json()["known_bug"]["wrong_equal"], 1);
}

TEST(Run, EveDetectedMarker) {
    Config c;
    c.protocol = Protocol::WcwzFixed;
    c.alpha = 1.0;
    c.trials = 20;
    const auto s = run(c);
    EXPECT_TRUE(s.any_eve_detected());
    EXPECT_EQ(s.to_json()["config"]["attack"], "intercept:1");
}

TEST(Run, CoinflipForced) {
    Config c;
    c.protocol = Protocol::Coinflip;
    c.schedule = "ordered:alice";
    c.bob = "adaptive:0";
    c.trials = 1000;
    const auto s = run(c);
    EXPECT_EQ(s.coin_zero, 1000u);
    EXPECT_EQ(s.to_json()["coinflip"]["bias"], 0.5);
}

TEST(Run, CsvSummary) {
    Config c;
    c.trials = 10;
    std::ostringstream os;
    run(c).write_csv(os);
    const std::string text = os.str();
    EXPECT_EQ(text.rfind("metric,value\r\n", 0), 0u);
    EXPECT_NE(text.find("config.protocol,wcwz-fixed\r\n"), std::string::npos);
    EXPECT_NE(text.find("verdicts.equal,"), std::string::npos);
}

TEST(Sweep, EmptyGridIsHeaderOnly) {
    SweepSpec spec;
    spec.kind = "escape";
    const auto t = sweep(spec);
    EXPECT_TRUE(t.rows.empty());
    EXPECT_EQ(t.header.front(), "alpha");
    std::ostringstream os;
    analytics::write_csv(os, t);
    EXPECT_EQ(os.str(), "alpha,k,exact_targeting,closed_form,mc,stderr,within_3sigma\r\n");
    spec.kind = "nope";
    EXPECT_THROW(sweep(spec), ConfigError);
}

TEST(Sweep, EscapeAndSpoiling) {
    SweepSpec spec;
    spec.kind = "escape";
    spec.alphas = {1.0};
    spec.ks = {4, 8, 16};
    spec.trials = 20000;
    for (const auto& row : sweep(spec).rows) {
        EXPECT_EQ(*row[6], 1.0) << "k=" << *row[1];
    }
    spec.kind = "spoiling";
    spec.ks = {0, 4, 9};
    for (const auto& row : sweep(spec).rows) {
        const double k = *row[0];
        EXPECT_NEAR(*row[3], 1.0 / (k + 1), 3 * *row[4] + 0.01);
    }
}

}  // namespace
}  // namespace qpc::experiment
