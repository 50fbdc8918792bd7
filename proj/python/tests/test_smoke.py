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

import json
import os
import subprocess

import pytest

import qpcsim


def test_leakage_golden_values():
    assert qpcsim.leakage(6, 1) == 1.875
    assert qpcsim.leakage(6, 2) == 2.53125
    with pytest.raises(ValueError):
        qpcsim.leakage(7, 2)


def test_run_improved_summary():
    s = qpcsim.run({"protocol": "improved", "n": 6, "k": 8, "trials": 2000, "seed": 3})
    v = s["verdicts"]
    assert sum(v.values()) == 2000
    assert v["eve_detected"] == 0 and v["inconsistent"] == 0
    assert abs(s["leakage"]["empirical"] - 1.875) < 5 * s["leakage"]["stderr"]
    assert s["resources"]["bell_pairs_used"] == 0


def test_run_is_deterministic_and_overrides_apply():
    a, ta = qpcsim.run({"protocol": "wcwz-fixed", "trials": 50, "seed": 9}, transcripts=True)
    b, tb = qpcsim.run(protocol="wcwz-fixed", trials=50, seed=9, transcripts=True)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert ta == tb and len(ta) > 50


def test_known_bug_of_original_form():
    s = qpcsim.run(protocol="wcwz", n=6, m=2, a="000011", b="000010", hash_key="identity", trials=10, seed=1)
    assert s["verdicts"]["equal"] == 10
    assert s["known_bug"]["wrong_equal"] == 10


def test_bad_config_raises():
    with pytest.raises(ValueError):
        qpcsim.run(protocol="improved", m=2)
    with pytest.raises(ValueError):
        qpcsim.run(no_such_key=1)


def test_escape_and_spoiling():
    e = qpcsim.escape_probability_mc("improved", 1.0, 4, 20000, 5)
    assert abs(e["value"] - qpcsim.eve_escape_closed(1.0, 4)) < 4 * e["std_error"] + 1e-3
    r = qpcsim.spoiling_success_mc(4, 20000, 6)
    assert abs(r["undetected_flip"]["value"] - qpcsim.spoiling_closed(4)) < 0.02


def test_coin_flip():
    assert qpcsim.coin_flip("ordered:alice", "honest", "adaptive:1", seed=4)[2] == 1
    a, b, c = qpcsim.coin_flip("simultaneous", seed=4)
    assert c == a ^ b
    bias = qpcsim.coin_bias("simultaneous", trials=20000, seed=2)
    assert bias["analytic"] == 0.0 and bias["value"] < 4 * bias["std_error"] + 1e-3
    with pytest.raises(ValueError):
        qpcsim.coin_flip("simultaneous", "adaptive:0", "honest")


def test_figure_tables():
    lines = qpcsim.fig2_csv(6).split("\r\n")
    assert lines[0] == "n,I_m1,I_m2,I_m13"
    assert lines[6] == "6,1.875,2.53125,"
    assert qpcsim.fig1_csv(1, 3).startswith("m,")


CLI = os.environ.get("QPC_SIM", os.path.join(os.path.dirname(__file__), "..", "..", "build", "qpc_sim"))


@pytest.mark.skipif(not os.path.exists(CLI), reason="qpc_sim not built")
@pytest.mark.parametrize(
    "args, code",
    [
        (["run", "--protocol", "improved", "--trials", "20"], 0),
        (["run", "--protocol", "improved", "--m", "2"], 2),
        (["run", "--protocol", "nope"], 2),
        (["run", "--protocol", "improved", "--alpha", "1", "--trials", "50"], 3),
        (["run", "--config", "/nonexistent/config.json"], 2),
    ],
)
def test_cli_exit_codes(args, code):
    r = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert r.returncode == code, r.stderr
    if code == 0:
        assert json.loads(r.stdout)["config"]["protocol"] == "improved"
