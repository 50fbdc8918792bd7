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

// Experiment configuration and the trial runner behind the command-line
// tool. Output depends only on the resolved configuration: trial i always
// uses Rng::for_trial(seed, i) and aggregation uses integer tallies.

#ifndef QPC_EXPERIMENT_HPP
#define QPC_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpc/analytics.hpp"
#include "qpc/simnet.hpp"

namespace qpc::experiment {

/// Bad or inconsistent configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class Protocol { Wcwz, WcwzFixed, Improved, Coinflip };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string& text);

struct Config {
    Protocol protocol = Protocol::WcwzFixed;
    std::size_t n = 6;
    std::optional<std::size_t> m;  // wcwz variants only; 2 when unset
    std::size_t k = 8;
    std::optional<double> alpha;  // shorthand for attack = intercept:<alpha>
    std::string attack = "none";
    std::string schedule = "simultaneous";
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    /// "random" (derived from the seed), "identity" or "<32 hex>[:rounds]".
    std::string hash_key = "random";
    double check_fraction = 0.5;
    double threshold = 0.0;
    std::optional<std::string> a;  // fixed inputs; uniform random per trial when unset
    std::optional<std::string> b;
    std::string alice = "honest";  // coin-flip strategies
    std::string bob = "honest";
    std::string out;  // empty: stdout
    std::string format = "json";
    std::string transcripts;  // JSONL path for full transcripts; empty: none
    unsigned threads = 0;     // 0: hardware concurrency (never affects output)

    /// Throws ConfigError.
    void validate() const;
    /// Everything that determines the output.
    nlohmann::json to_json() const;
    /// Overlays keys present in `j` onto this config; unknown keys are errors.
    void merge_json(const nlohmann::json& j);
};

struct VerdictCounts {
    std::size_t equal = 0;
    std::size_t differ = 0;
    std::size_t eve_detected = 0;
    std::size_t inconsistent = 0;
};

struct Summary {
    nlohmann::json config;
    VerdictCounts verdicts;
    analytics::LeakageTally leakage;
    std::optional<double> analytic_leakage;
    ResourceCounters resources;
    /// Original WCWZ: runs that reported Equal although a != b.
    std::size_t wrong_equal = 0;
    std::size_t rejected_disclosures = 0;
    std::size_t retries = 0;
    /// Coin flipping.
    std::size_t coin_zero = 0;
    std::size_t coin_one = 0;
    std::optional<double> analytic_bias;

    bool any_eve_detected() const { return verdicts.eve_detected > 0; }
    nlohmann::json to_json() const;
    /// "metric,value" rows.
    void write_csv(std::ostream& os) const;
};

/// Runs every trial. When `transcripts` is non-null it receives one JSONL
/// block per trial, in trial order.
Summary run(const Config& config, std::string* transcripts = nullptr);

/// Writes the summary in config.format to config.out (or stdout) and the
/// transcripts file if requested.
void write_outputs(const Config& config, const Summary& summary, const std::string& transcripts);

struct SweepSpec {
    std::string kind;  // escape | spoiling | leakage
    std::vector<double> alphas;
    std::vector<std::size_t> ks;
    std::vector<std::size_t> ns;
    std::vector<std::size_t> ms;
    std::string target = "improved";  // escape: improved | wcwz
    std::string protocol = "improved";  // leakage: improved | wcwz-fixed
    std::size_t count = 1;             // spoiling: flips per return
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
};

/// One row per grid point, closed form and Monte Carlo side by side. An
/// empty grid gives a header-only table.
analytics::Table sweep(const SweepSpec& spec);

}  // namespace qpc::experiment

#endif  // QPC_EXPERIMENT_HPP
