# Copyright 2026 The qpc-sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Deterministic simulator for two-party quantum private comparison."""

import json

from qpcsim._core import (
    abort_prob,
    coin_bias,
    coin_flip,
    escape_probability_mc,
    eve_escape_closed,
    fig1_csv,
    fig2_csv,
    leakage,
    leakage_asymptote,
    leakage_formula,
    run_json,
    spoiling_closed,
    spoiling_success_mc,
)

__all__ = [
    "abort_prob",
    "coin_bias",
    "coin_flip",
    "escape_probability_mc",
    "eve_escape_closed",
    "fig1_csv",
    "fig2_csv",
    "leakage",
    "leakage_asymptote",
    "leakage_formula",
    "run",
    "spoiling_closed",
    "spoiling_success_mc",
]


def run(config=None, transcripts=False, **overrides):
    """Runs an experiment and returns its summary as a dict.

    `config` uses the same keys as the CLI's JSON config; keyword arguments
    override it. With transcripts=True returns (summary, list of JSONL lines).
    Invalid configurations raise ValueError.
    """
    merged = dict(config or {})
    merged.update(overrides)
    summary, lines = run_json(json.dumps(merged), transcripts)
    result = json.loads(summary)
    if transcripts:
        return result, lines.splitlines()
    return result
