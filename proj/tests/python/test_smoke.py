# Copyright 2026 The feyndd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import feyndd


def test_ghz_amplitude_exact():
    z = feyndd.GateSet.builtin("z")
    c = feyndd.generate_ghz(20)
    r = feyndd.amplitude(c, z, "0" * 20)
    assert r["exact"] == {"r": 2, "coeffs": [1, 0], "sqrt2_exp": 1}
    assert r["value"].real == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_fig1_polynomial():
    z = feyndd.GateSet.builtin("z")
    c = feyndd.parse_circuit("qubits 3\nh 0\nh 1\ncz 1 2\nccz 0 1 2\nh 1\nh 2\nz 0\nccz 0 1 2\n", z)
    assert feyndd.sop_debug_string(c, z) == (
        "x1*x4 + x2*x5 + x3*x4*x5 + x3*x5 + x3*x7 + x4 + x4*x6*x7 + x5*x6 [r=2, s=4, internal={x5}]"
    )


def test_amplitude_matches_statevector():
    t = feyndd.GateSet.builtin("t")
    c = feyndd.parse_circuit("qubits 2\nh 0\nt 0\ncx 0 1\nh 1\ntdg 1\n", t)
    for bits in ("00", "01", "10", "11"):
        r = feyndd.amplitude(c, t, bits)
        assert abs(r["value"] - feyndd.sv_amplitude(c, t, bits)) < 1e-12


def test_probability_and_samples():
    z = feyndd.GateSet.builtin("z")
    c = feyndd.generate_ghz(3)
    assert feyndd.joint_probability(c, z, [0, 1], "01")["probability"] == 0.0
    assert feyndd.joint_probability(c, z, [2], "1")["probability"] == pytest.approx(0.5)
    assert set(feyndd.sample(c, z, shots=50, seed=7)) <= {"000", "111"}
    assert feyndd.sample(c, z, shots=5, seed=7) == feyndd.sample(c, z, shots=5, seed=7)


def test_equivalence():
    z = feyndd.GateSet.builtin("z")
    a = feyndd.parse_circuit("qubits 2\ncx 0 1\n", z)
    b = feyndd.parse_circuit("qubits 2\nh 1\ncz 0 1\nh 1\n", z)
    v = feyndd.check_equivalence(a, b, z)
    assert v["equivalent"] and v["phase_index"] == 0
    assert not feyndd.check_equivalence(a, feyndd.parse_circuit("qubits 2\ncx 1 0\n", z), z)["equivalent"]


def test_input_errors_raise_value_error():
    z = feyndd.GateSet.builtin("z")
    with pytest.raises(ValueError):
        feyndd.parse_circuit("qubits 1\nfoo 0\n", z)
    with pytest.raises(feyndd.InputError, match="line 2"):
        feyndd.parse_circuit("qubits 1\nfoo 0\n", z)
