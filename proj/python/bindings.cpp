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

// Python bindings. JSON-shaped results cross the boundary as strings and are
// decoded by the qpcsim package.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "qpc/analytics.hpp"
#include "qpc/attacks.hpp"
#include "qpc/coinflip.hpp"
#include "qpc/experiment.hpp"

namespace py = pybind11;

namespace {

py::dict estimate_dict(const qpc::Estimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["std_error"] = e.std_error;
    d["trials"] = e.trials;
    return d;
}

qpc::experiment::Config config_from(const std::string& config_json) {
    qpc::experiment::Config c;
    c.merge_json(nlohmann::json::parse(config_json));
    c.validate();
    return c;
}

std::string table_csv(const qpc::analytics::Table& t) {
    std::ostringstream os;
    qpc::analytics::write_csv(os, t);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Deterministic simulator for two-party quantum private comparison";

    m.def("leakage", &qpc::analytics::leakage, py::arg("n"), py::arg("m"));
    m.def("leakage_formula", &qpc::analytics::leakage_formula, py::arg("n"), py::arg("m"));
    m.def("leakage_asymptote", &qpc::analytics::leakage_asymptote, py::arg("m"));
    m.def("abort_prob", &qpc::analytics::abort_prob, py::arg("i"), py::arg("m"));
    m.def("eve_escape_closed", &qpc::analytics::eve_escape_closed, py::arg("alpha"), py::arg("k"));
    m.def("spoiling_closed", &qpc::analytics::spoiling_closed, py::arg("k"));

    m.def(
        "run_json",
        [](const std::string& config_json, bool with_transcripts) {
            const auto config = config_from(config_json);
            std::string transcripts;
            qpc::experiment::Summary s;
            {
                py::gil_scoped_release release;
                s = qpc::experiment::run(config, with_transcripts ? &transcripts : nullptr);
            }
            return py::make_tuple(s.to_json().dump(), transcripts);
        },
        py::arg("config_json"), py::arg("with_transcripts") = false);

    m.def(
        "escape_probability_mc",
        [](const std::string& target, double alpha, std::size_t k, std::size_t trials, std::uint64_t seed,
           bool exact) {
            qpc::attacks::Target t;
            if (target == "improved") {
                t = qpc::attacks::Target::Improved;
            } else if (target == "wcwz") {
                t = qpc::attacks::Target::Wcwz;
            } else {
                throw std::invalid_argument("target must be improved or wcwz");
            }
            const auto targeting = exact ? qpc::attacks::Targeting::Exact : qpc::attacks::Targeting::PerQubit;
            qpc::Estimate e;
            {
                py::gil_scoped_release release;
                e = qpc::attacks::escape_probability_mc(t, alpha, k, trials, seed, targeting);
            }
            return estimate_dict(e);
        },
        py::arg("target"), py::arg("alpha"), py::arg("k"), py::arg("trials"), py::arg("seed"),
        py::arg("exact") = true);

    m.def(
        "spoiling_success_mc",
        [](std::size_t k, std::size_t trials, std::uint64_t seed, std::size_t count, double check_fraction) {
            const auto r = qpc::attacks::spoiling_success_mc(k, trials, seed, count, check_fraction);
            py::dict d;
            d["undetected_flip"] = estimate_dict(r.undetected_flip);
            d["detected"] = estimate_dict(r.detected);
            return d;
        },
        py::arg("k"), py::arg("trials"), py::arg("seed"), py::arg("count") = 1, py::arg("check_fraction") = 0.5);

    m.def(
        "coin_flip",
        [](const std::string& schedule, const std::string& alice, const std::string& bob, std::uint64_t seed,
           std::size_t round) {
            const auto sch = qpc::Schedule::parse(schedule);
            const auto sa = qpc::coinflip::parse_strategy(alice);
            const auto sb = qpc::coinflip::parse_strategy(bob);
            qpc::coinflip::validate(sch, sa, sb, round);
            qpc::Rng rng(seed);
            const auto r = qpc::coinflip::run_cf(sch, sa, sb, rng, round);
            return py::make_tuple(r.a, r.b, r.c);
        },
        py::arg("schedule"), py::arg("alice") = "honest", py::arg("bob") = "honest", py::arg("seed") = 1,
        py::arg("round") = 1);

    m.def(
        "coin_bias",
        [](const std::string& schedule, const std::string& alice, const std::string& bob, std::size_t trials,
           std::uint64_t seed) {
            const auto sch = qpc::Schedule::parse(schedule);
            const auto sa = qpc::coinflip::parse_strategy(alice);
            const auto sb = qpc::coinflip::parse_strategy(bob);
            qpc::coinflip::validate(sch, sa, sb);
            py::dict d = estimate_dict(qpc::coinflip::bias_estimate(sch, sa, sb, trials, seed));
            d["analytic"] = qpc::coinflip::analytic_bias(sch, sa, sb);
            return d;
        },
        py::arg("schedule"), py::arg("alice") = "honest", py::arg("bob") = "honest", py::arg("trials") = 10000,
        py::arg("seed") = 1);

    m.def(
        "fig1_csv",
        [](std::size_t m_lo, std::size_t m_hi, std::size_t n) {
            return table_csv(qpc::analytics::fig1(m_lo, m_hi, n));
        },
        py::arg("m_lo") = 1, py::arg("m_hi") = 20, py::arg("n") = 360360);
    m.def(
        "fig2_csv",
        [](std::size_t n_max) {
            std::vector<std::size_t> ns;
            for (std::size_t n = 1; n <= n_max; ++n) {
                ns.push_back(n);
            }
            return table_csv(qpc::analytics::fig2(ns));
        },
        py::arg("n_max") = 120);
}
