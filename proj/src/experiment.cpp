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

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qpc/adversary.hpp"
#include "qpc/attacks.hpp"
#include "qpc/coinflip.hpp"
#include "qpc/hashperm.hpp"
#include "qpc/improved.hpp"
#include "qpc/parallel.hpp"
#include "qpc/wcwz.hpp"

namespace qpc::experiment {

namespace {

constexpr std::uint64_t kKeyStream = 0x68617368'6B657921ULL;

bool is_wcwz(Protocol p) { return p == Protocol::Wcwz || p == Protocol::WcwzFixed; }

void check_bits(const std::string& name, const std::string& bits, std::size_t n) {
    if (bits.size() != n || bits.find_first_not_of("01") != std::string::npos) {
        throw ConfigError("--" + name + " must be a string of n = " + std::to_string(n) + " binary digits");
    }
}

AttackStrategy resolve_attack(const Config& c) {
    if (c.alpha) {
        return InterceptResend{*c.alpha, true, true, std::nullopt};
    }
    try {
        return parse_attack(c.attack);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

PermKey resolve_key(const Config& c) {
    if (c.hash_key == "random") {
        Rng rng(splitmix64(c.seed ^ kKeyStream));
        return PermKey::random(rng);
    }
    try {
        return PermKey::parse(c.hash_key);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

Schedule resolve_schedule(const Config& c) {
    try {
        return Schedule::parse(c.schedule);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

struct Tally {
    VerdictCounts verdicts;
    analytics::LeakageTally leakage;
    Transcript resources{false};
    std::size_t wrong_equal = 0;
    std::size_t rejected = 0;
    std::size_t retries = 0;
    std::size_t coin_zero = 0;
    std::size_t coin_one = 0;

    void add(const Outcome& o) {
        switch (o.verdict) {
            case Verdict::Equal: ++verdicts.equal; break;
            case Verdict::Differ: ++verdicts.differ; break;
            case Verdict::EveDetected: ++verdicts.eve_detected; break;
            case Verdict::Inconsistent: ++verdicts.inconsistent; break;
        }
        leakage.add(o);
    }

    void merge(const Tally& o) {
        verdicts.equal += o.verdicts.equal;
        verdicts.differ += o.verdicts.differ;
        verdicts.eve_detected += o.verdicts.eve_detected;
        verdicts.inconsistent += o.verdicts.inconsistent;
        leakage.merge(o.leakage);
        resources.merge_counters(o.resources.counters());
        wrong_equal += o.wrong_equal;
        rejected += o.rejected;
        retries += o.retries;
        coin_zero += o.coin_zero;
        coin_one += o.coin_one;
    }
};

std::string trial_block(std::size_t index, const Outcome& outcome, const Transcript& t) {
    nlohmann::json head{{"trial", index}, {"outcome", qpc::to_json(outcome)}};
    return head.dump() + "\n" + t.to_jsonl();
}

}  // namespace

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::Wcwz: return "wcwz";
        case Protocol::WcwzFixed: return "wcwz-fixed";
        case Protocol::Improved: return "improved";
        case Protocol::Coinflip: return "coinflip";
    }
    return "?";
}

Protocol parse_protocol(const std::string& text) {
    for (Protocol p : {Protocol::Wcwz, Protocol::WcwzFixed, Protocol::Improved, Protocol::Coinflip}) {
        if (text == to_string(p)) {
            return p;
        }
    }
    throw ConfigError("unknown protocol '" + text + "' (wcwz | wcwz-fixed | improved | coinflip)");
}

void Config::validate() const {
    if (trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    if (format != "json" && format != "csv") {
        throw ConfigError("format must be json or csv");
    }
    if (m && !is_wcwz(protocol)) {
        throw ConfigError("m applies only to the wcwz protocols");
    }
    if (alpha && attack != "none") {
        throw ConfigError("give either alpha or attack, not both");
    }
    if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) {
        throw ConfigError("alpha must lie in [0, 1]");
    }
    const Schedule sched = resolve_schedule(*this);
    resolve_key(*this);
    if (protocol == Protocol::Coinflip) {
        if (attack != "none" || alpha) {
            throw ConfigError("coinflip takes --alice/--bob strategies, not an attack");
        }
        try {
            coinflip::validate(sched, coinflip::parse_strategy(alice), coinflip::parse_strategy(bob));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return;
    }
    if (alice != "honest" || bob != "honest") {
        throw ConfigError("--alice/--bob apply only to coinflip; use --attack cheat:<party>:<policy>");
    }
    if ((a.has_value()) != (b.has_value())) {
        throw ConfigError("give both inputs a and b, or neither");
    }
    if (a) {
        check_bits("a", *a, n);
        check_bits("b", *b, n);
    }
    const AttackStrategy adv = resolve_attack(*this);
    if (std::holds_alternative<AdaptiveSecondMover>(adv)) {
        throw ConfigError("adaptive:<bit> is a coin-flip strategy");
    }
    if (is_wcwz(protocol) && std::holds_alternative<InternalCheat>(adv)) {
        throw ConfigError("internal cheats are modelled for the improved protocol only");
    }
    try {
        if (is_wcwz(protocol)) {
            wcwz::Params p;
            p.n = n;
            p.m = m.value_or(2);
            p.k = k;
            p.validate();
        } else {
            improved::Params p;
            p.n = n;
            p.k = k;
            p.check_fraction = check_fraction;
            p.policy.threshold = threshold;
            p.validate();
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (threshold < 0.0 || threshold > 1.0) {
        throw ConfigError("threshold must lie in [0, 1]");
    }
}

nlohmann::json Config::to_json() const {
    nlohmann::json j{{"protocol", experiment::to_string(protocol)},
                     {"n", n},
                     {"k", k},
                     {"attack", alpha ? describe(InterceptResend{*alpha, true, true, std::nullopt}) : attack},
                     {"schedule", schedule},
                     {"trials", trials},
                     {"seed", seed},
                     {"hash_key", hash_key},
                     {"check_fraction", check_fraction},
                     {"threshold", threshold},
                     {"format", format}};
    if (is_wcwz(protocol)) {
        j["m"] = m.value_or(2);
    }
    if (hash_key == "random") {
        j["hash_key_resolved"] = resolve_key(*this).to_string();
    }
    if (a) {
        j["a"] = *a;
        j["b"] = *b;
    }
    if (protocol == Protocol::Coinflip) {
        j["alice"] = alice;
        j["bob"] = bob;
    }
    return j;
}

void Config::merge_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "protocol") protocol = parse_protocol(v.get<std::string>());
            else if (key == "n") n = v.get<std::size_t>();
            else if (key == "m") m = v.get<std::size_t>();
            else if (key == "k") k = v.get<std::size_t>();
            else if (key == "alpha") alpha = v.get<double>();
            else if (key == "attack") attack = v.get<std::string>();
            else if (key == "schedule") schedule = v.get<std::string>();
            else if (key == "trials") trials = v.get<std::size_t>();
            else if (key == "seed") seed = v.get<std::uint64_t>();
            else if (key == "hash_key") hash_key = v.get<std::string>();
            else if (key == "check_fraction") check_fraction = v.get<double>();
            else if (key == "threshold") threshold = v.get<double>();
            else if (key == "a") a = v.get<std::string>();
            else if (key == "b") b = v.get<std::string>();
            else if (key == "alice") alice = v.get<std::string>();
            else if (key == "bob") bob = v.get<std::string>();
            else if (key == "out") out = v.get<std::string>();
            else if (key == "format") format = v.get<std::string>();
            else if (key == "transcripts") transcripts = v.get<std::string>();
            else if (key == "threads") threads = v.get<unsigned>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
}

Summary run(const Config& c, std::string* transcripts) {
    c.validate();
    Summary s;
    s.config = c.to_json();
    const Schedule schedule = resolve_schedule(c);
    const bool record = transcripts != nullptr;
    std::vector<std::string> blocks(record ? c.trials : 0);

    Tally tally;
    if (c.protocol == Protocol::Coinflip) {
        const auto alice = coinflip::parse_strategy(c.alice);
        const auto bob = coinflip::parse_strategy(c.bob);
        tally = run_trials<Tally>(
            c.trials, c.seed,
            [&](Rng& rng, std::size_t i, Tally& acc) {
                const auto r = coinflip::run_cf(schedule, alice, bob, rng);
                (r.c == 0 ? acc.coin_zero : acc.coin_one) += 1;
                if (record) {
                    blocks[i] = nlohmann::json{{"trial", i}, {"a", r.a}, {"b", r.b}, {"c", r.c}}.dump() + "\n";
                }
            },
            c.threads);
        s.analytic_bias = coinflip::analytic_bias(schedule, alice, bob);
    } else {
        const AttackStrategy adv = resolve_attack(c);
        const PermKey key = resolve_key(c);
        std::optional<BitString> fixed_a;
        std::optional<BitString> fixed_b;
        if (c.a) {
            fixed_a = BitString::from_string(*c.a);
            fixed_b = BitString::from_string(*c.b);
        }
        wcwz::Params wp;
        wp.n = c.n;
        wp.m = c.m.value_or(2);
        wp.k = c.k;
        wp.fixed = c.protocol == Protocol::WcwzFixed;
        wp.policy.threshold = c.threshold;
        wp.key = key;
        improved::Params ip;
        ip.n = c.n;
        ip.k = c.k;
        ip.check_fraction = c.check_fraction;
        ip.policy.threshold = c.threshold;
        ip.schedule = schedule;
        ip.key = key;
        tally = run_trials<Tally>(
            c.trials, c.seed,
            [&](Rng& rng, std::size_t i, Tally& acc) {
                const BitString a = fixed_a ? *fixed_a : BitString::random(c.n, rng);
                const BitString b = fixed_b ? *fixed_b : BitString::random(c.n, rng);
                if (is_wcwz(c.protocol)) {
                    auto r = wcwz::run(a, b, wp, adv, rng, record);
                    acc.add(r.outcome);
                    acc.resources.merge_counters(r.transcript.counters());
                    if (r.outcome.verdict == Verdict::Equal && !(r.hash_a == r.hash_b)) {
                        ++acc.wrong_equal;
                    }
                    if (record) {
                        blocks[i] = trial_block(i, r.outcome, r.transcript);
                    }
                } else {
                    auto r = improved::run(a, b, ip, adv, rng, record);
                    acc.add(r.outcome);
                    acc.resources.merge_counters(r.transcript.counters());
                    acc.rejected += r.rejected_disclosures;
                    acc.retries += r.retries;
                    if (record) {
                        blocks[i] = trial_block(i, r.outcome, r.transcript);
                    }
                }
            },
            c.threads);
        if (!fixed_a) {
            const std::size_t m = c.protocol == Protocol::Improved ? 1 : wp.m;
            if (c.protocol != Protocol::Wcwz && c.n % m == 0) {
                s.analytic_leakage = analytics::leakage(c.n, m);
            }
        }
    }
    s.verdicts = tally.verdicts;
    s.leakage = tally.leakage;
    s.resources = tally.resources.counters();
    s.wrong_equal = tally.wrong_equal;
    s.rejected_disclosures = tally.rejected;
    s.retries = tally.retries;
    s.coin_zero = tally.coin_zero;
    s.coin_one = tally.coin_one;
    if (record) {
        std::string all;
        for (auto& blk : blocks) {
            all += blk;
        }
        *transcripts = std::move(all);
    }
    return s;
}

nlohmann::json Summary::to_json() const {
    nlohmann::json j{{"config", config}};
    const std::string protocol = config.at("protocol").get<std::string>();
    if (protocol == "coinflip") {
        const auto total = coin_zero + coin_one;
        const Estimate p0 = Estimate::proportion(coin_zero, total);
        j["coinflip"] = {{"c0", coin_zero},
                         {"c1", coin_one},
                         {"bias", std::abs(p0.value - 0.5)},
                         {"bias_stderr", p0.std_error},
                         {"analytic_bias", analytic_bias.value_or(0.0)}};
        return j;
    }
    j["verdicts"] = {{"equal", verdicts.equal},
                     {"differ", verdicts.differ},
                     {"eve_detected", verdicts.eve_detected},
                     {"inconsistent", verdicts.inconsistent}};
    const auto est = analytics::estimate(leakage);
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [round, count] : leakage.differ_rounds) {
        hist[std::to_string(round)] = count;
    }
    j["abort_histogram"] = hist;
    j["leakage"] = {{"empirical", est.value},
                    {"stderr", est.std_error},
                    {"analytic", analytic_leakage ? nlohmann::json(*analytic_leakage) : nlohmann::json(nullptr)}};
    j["resources"] = qpc::to_json(resources);
    j["any_eve_detected"] = any_eve_detected();
    if (protocol == "wcwz") {
        j["known_bug"] = {{"wrong_equal", wrong_equal},
                          {"note", "original WCWZ compares only the first group; Equal can be reported for a != b"}};
    }
    if (protocol == "improved") {
        j["rejected_disclosures"] = rejected_disclosures;
        j["basis_retries"] = retries;
    }
    return j;
}

void Summary::write_csv(std::ostream& os) const {
    // Flatten the JSON summary into dotted metric names.
    std::function<void(const std::string&, const nlohmann::json&)> walk = [&](const std::string& prefix,
                                                                                const nlohmann::json& v) {
        if (v.is_object()) {
            for (const auto& [key, child] : v.items()) {
                walk(prefix.empty() ? key : prefix + "." + key, child);
            }
            return;
        }
        std::string text;
        if (v.is_string()) {
            text = v.get<std::string>();
        } else if (v.is_number_float()) {
            text = analytics::format_double(v.get<double>());
        } else if (!v.is_null()) {
            text = v.dump();
        }
        if (text.find_first_of(",\"\r\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char ch : text) {
                quoted += ch;
                if (ch == '"') {
                    quoted += '"';
                }
            }
            text = quoted + "\"";
        }
        os << prefix << "," << text << "\r\n";
    };
    os << "metric,value\r\n";
    walk("", to_json());
}

void write_outputs(const Config& c, const Summary& s, const std::string& transcripts) {
    std::ostringstream body;
    if (c.format == "csv") {
        s.write_csv(body);
    } else {
        body << s.to_json().dump(2) << "\n";
    }
    if (c.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot open " + c.out + " for writing");
        }
        f << body.str();
    }
    if (!c.transcripts.empty()) {
        std::ofstream f(c.transcripts, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot open " + c.transcripts + " for writing");
        }
        f << transcripts;
    }
}

analytics::Table sweep(const SweepSpec& spec) {
    analytics::Table t;
    if (spec.kind == "escape") {
        t.header = {"alpha", "k", "exact_targeting", "closed_form", "mc", "stderr", "within_3sigma"};
        const bool wc = spec.target == "wcwz";
        if (!wc && spec.target != "improved") {
            throw ConfigError("escape target must be improved or wcwz");
        }
        std::uint64_t point = 0;
        for (double alpha : spec.alphas) {
            for (std::size_t k : spec.ks) {
                const double ak = alpha * static_cast<double>(k);
                const bool exact = std::abs(ak - std::round(ak)) < 1e-9;
                const double closed = !exact ? analytics::eve_escape_bernoulli(alpha, k)
                                      : wc  ? analytics::eve_escape_announced_basis(alpha, k)
                                            : analytics::eve_escape_closed(alpha, k);
                const auto est = attacks::escape_probability_mc(
                    wc ? attacks::Target::Wcwz : attacks::Target::Improved, alpha, k, spec.trials,
                    splitmix64(spec.seed + point++), exact ? attacks::Targeting::Exact : attacks::Targeting::PerQubit);
                const double se = std::sqrt(closed * (1.0 - closed) / static_cast<double>(spec.trials));
                t.rows.push_back({alpha, static_cast<double>(k), exact ? 1.0 : 0.0, closed, est.value, est.std_error,
                                  std::abs(est.value - closed) <= 3.0 * se ? 1.0 : 0.0});
            }
        }
        return t;
    }
    if (spec.kind == "spoiling") {
        t.header = {"k", "count", "closed_form", "mc", "stderr", "detected"};
        std::uint64_t point = 0;
        for (std::size_t k : spec.ks) {
            const auto r = attacks::spoiling_success_mc(k, spec.trials, splitmix64(spec.seed + point++), spec.count);
            t.rows.push_back({static_cast<double>(k), static_cast<double>(spec.count),
                              spec.count == 1 ? std::optional<double>(analytics::spoiling_closed(k)) : std::nullopt,
                              r.undetected_flip.value, r.undetected_flip.std_error, r.detected.value});
        }
        return t;
    }
    if (spec.kind == "leakage") {
        t.header = {"n", "m", "analytic", "empirical", "stderr"};
        const Protocol proto = parse_protocol(spec.protocol);
        if (proto != Protocol::Improved && proto != Protocol::WcwzFixed) {
            throw ConfigError("leakage sweep protocol must be improved or wcwz-fixed");
        }
        const std::vector<std::size_t> ms = proto == Protocol::Improved ? std::vector<std::size_t>{1} : spec.ms;
        std::uint64_t point = 0;
        for (std::size_t n : spec.ns) {
            for (std::size_t m : ms) {
                Config c;
                c.protocol = proto;
                c.n = n;
                if (proto != Protocol::Improved) {
                    c.m = m;
                }
                c.trials = spec.trials;
                c.seed = splitmix64(spec.seed + point++);
                const Summary s = run(c);
                const auto est = analytics::estimate(s.leakage);
                t.rows.push_back({static_cast<double>(n), static_cast<double>(m), s.analytic_leakage, est.value,
                                  est.std_error});
            }
        }
        return t;
    }
    throw ConfigError("unknown sweep kind '" + spec.kind + "' (escape | spoiling | leakage)");
}

}  // namespace qpc::experiment
