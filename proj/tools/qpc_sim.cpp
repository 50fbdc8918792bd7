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

// qpc-sim: run comparison experiments, emit figure tables, sweep attack
// parameters.
//
// Exit codes: 0 success, 1 I/O or runtime failure, 2 configuration error,
// 3 some run ended with eavesdropping detected.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qpc/analytics.hpp"
#include "qpc/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitEveDetected = 3;

using qpc::experiment::Config;
using qpc::experiment::ConfigError;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << text;
}

std::string table_text(const qpc::analytics::Table& t, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        os << qpc::analytics::to_json(t).dump(2) << "\n";
    } else {
        qpc::analytics::write_csv(os, t);
    }
    return os.str();
}

std::string gnuplot_stub(const std::string& which, const std::string& csv) {
    std::ostringstream os;
    os << "# gnuplot -p " << which << ".gp\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set datafile missing ''\n";
    if (which == "fig1") {
        os << "set xlabel 'm'\nset ylabel 'I (bits)'\n"
           << "plot '" << csv << "' using 1:2 with linespoints title 'I(n, m)'\n";
    } else {
        os << "set xlabel 'n'\nset ylabel 'I (bits)'\n"
           << "plot '" << csv << "' using 1:2 with lines title 'm=1', \\\n"
           << "     '' using 1:3 with lines title 'm=2', \\\n"
           << "     '' using 1:4 with lines dashtype 2 title 'm=13'\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for two-party quantum private comparison protocols"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run independent protocol trials and summarize them");
    std::string config_file;
    std::string protocol, attack, schedule, hash_key, a, b, alice, bob, out, format, transcripts;
    std::size_t n = 0, m = 0, k = 0, trials = 0;
    std::uint64_t seed = 0;
    double alpha = 0, check_fraction = 0, threshold = 0;
    unsigned threads = 0;
    run->add_option("--config", config_file, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    auto* o_protocol = run->add_option("--protocol", protocol, "wcwz | wcwz-fixed | improved | coinflip");
    auto* o_n = run->add_option("--n", n, "hash length");
    auto* o_m = run->add_option("--m", m, "group size (wcwz protocols)");
    auto* o_k = run->add_option("--k", k, "decoys per sequence");
    auto* o_alpha = run->add_option("--alpha", alpha, "intercept-resend with this per-qubit probability");
    auto* o_attack = run->add_option(
        "--attack", attack,
        "none | intercept:<alpha> | guess-return[:Z|X|oracle] | xflip:<n>[:oracle] | cheat:<alice|bob>:<alter-code|adapt>");
    auto* o_schedule = run->add_option("--schedule", schedule, "simultaneous | ordered:<alice|bob> | alternating");
    auto* o_trials = run->add_option("--trials", trials, "number of independent runs");
    auto* o_seed = run->add_option("--seed", seed, "master seed");
    auto* o_key = run->add_option("--hash-key", hash_key, "random | identity | <32 hex>[:rounds]");
    auto* o_fraction = run->add_option("--check-fraction", check_fraction, "portion of return decoys checked");
    auto* o_threshold = run->add_option("--threshold", threshold, "tolerated decoy error rate");
    auto* o_a = run->add_option("--a", a, "Alice's input bits (fixed for every trial)");
    auto* o_b = run->add_option("--b", b, "Bob's input bits");
    auto* o_alice = run->add_option("--alice", alice, "coinflip: honest | adaptive:<0|1>");
    auto* o_bob = run->add_option("--bob", bob, "coinflip: honest | adaptive:<0|1>");
    auto* o_out = run->add_option("--out", out, "summary file (default stdout)");
    auto* o_format = run->add_option("--format", format, "json | csv");
    auto* o_transcripts = run->add_option("--transcripts", transcripts, "write every trial's transcript as JSONL");
    auto* o_threads = run->add_option("--threads", threads, "worker threads (0: all cores)");

    // figures
    auto* figs = app.add_subcommand("figures", "Leakage tables for the two figures, plus gnuplot stubs");
    std::string which;
    std::string fig_out;
    std::string fig_format = "csv";
    std::size_t fig_m_min = 1, fig_m_max = 20, fig_n = 360360, fig_n_max = 120;
    figs->add_option("which", which, "fig1 | fig2")->required()->check(CLI::IsMember({"fig1", "fig2"}));
    figs->add_option("--out", fig_out, "table path (default <which>.csv)");
    figs->add_option("--format", fig_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    figs->add_option("--m-min", fig_m_min, "fig1: smallest m");
    figs->add_option("--m-max", fig_m_max, "fig1: largest m");
    figs->add_option("--n", fig_n, "fig1: hash length");
    figs->add_option("--n-max", fig_n_max, "fig2: largest n");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Closed form and Monte Carlo side by side over a grid");
    qpc::experiment::SweepSpec spec;
    std::string sw_out;
    std::string sw_format = "csv";
    sw->add_option("kind", spec.kind, "escape | spoiling | leakage")
        ->required()
        ->check(CLI::IsMember({"escape", "spoiling", "leakage"}));
    sw->add_option("--alpha", spec.alphas, "escape: interception probabilities")->delimiter(',');
    sw->add_option("--k", spec.ks, "escape, spoiling: decoy counts")->delimiter(',');
    sw->add_option("--n", spec.ns, "leakage: hash lengths")->delimiter(',');
    sw->add_option("--m", spec.ms, "leakage: group sizes (wcwz-fixed)")->delimiter(',');
    sw->add_option("--target", spec.target, "escape: improved | wcwz");
    sw->add_option("--protocol", spec.protocol, "leakage: improved | wcwz-fixed");
    sw->add_option("--count", spec.count, "spoiling: flips per returned sequence");
    sw->add_option("--trials", spec.trials, "trials per grid point");
    sw->add_option("--seed", spec.seed, "master seed");
    sw->add_option("--out", sw_out, "table path (default stdout)");
    sw->add_option("--format", sw_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            Config c;
            if (!config_file.empty()) {
                std::ifstream f(config_file);
                nlohmann::json j;
                try {
                    f >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw ConfigError(std::string("config file: ") + e.what());
                }
                c.merge_json(j);
            }
            if (o_protocol->count()) c.protocol = qpc::experiment::parse_protocol(protocol);
            if (o_n->count()) c.n = n;
            if (o_m->count()) c.m = m;
            if (o_k->count()) c.k = k;
            if (o_alpha->count()) c.alpha = alpha;
            if (o_attack->count()) c.attack = attack;
            if (o_schedule->count()) c.schedule = schedule;
            if (o_trials->count()) c.trials = trials;
            if (o_seed->count()) c.seed = seed;
            if (o_key->count()) c.hash_key = hash_key;
            if (o_fraction->count()) c.check_fraction = check_fraction;
            if (o_threshold->count()) c.threshold = threshold;
            if (o_a->count()) c.a = a;
            if (o_b->count()) c.b = b;
            if (o_alice->count()) c.alice = alice;
            if (o_bob->count()) c.bob = bob;
            if (o_out->count()) c.out = out;
            if (o_format->count()) c.format = format;
            if (o_transcripts->count()) c.transcripts = transcripts;
            if (o_threads->count()) c.threads = threads;

            std::string tx;
            const auto summary = qpc::experiment::run(c, c.transcripts.empty() ? nullptr : &tx);
            qpc::experiment::write_outputs(c, summary, tx);
            if (summary.wrong_equal > 0) {
                std::cerr << "note: " << summary.wrong_equal
                          << " run(s) reported Equal for different hashes (original first-group-only comparison)\n";
            }
            return summary.any_eve_detected() ? kExitEveDetected : 0;
        }
        if (*figs) {
            const std::string path = fig_out.empty() ? which + "." + fig_format : fig_out;
            qpc::analytics::Table t;
            if (which == "fig1") {
                if (fig_m_min < 1 || fig_m_max < fig_m_min) {
                    throw ConfigError("need 1 <= m-min <= m-max");
                }
                t = qpc::analytics::fig1(fig_m_min, fig_m_max, fig_n);
            } else {
                std::vector<std::size_t> ns;
                for (std::size_t v = 1; v <= fig_n_max; ++v) {
                    ns.push_back(v);
                }
                t = qpc::analytics::fig2(ns);
                std::cerr << "note: the reference curves of the earlier protocol are not reproduced\n";
            }
            write_text(path, table_text(t, fig_format));
            if (fig_format == "csv") {
                const auto stub = std::filesystem::path(path).replace_extension(".gp");
                write_text(stub.string(), gnuplot_stub(which, std::filesystem::path(path).filename().string()));
            }
            return 0;
        }
        if (*sw) {
            write_text(sw_out, table_text(qpc::experiment::sweep(spec), sw_format));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
