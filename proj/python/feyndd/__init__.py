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

"""Exact quantum circuit simulation by counting on decision diagrams."""

from ._core import (
    Circuit,
    GateSet,
    InputError,
    amplitude,
    check_equivalence,
    generate_bv,
    generate_ghz,
    generate_linear_network,
    joint_probability,
    parse_circuit,
    sample,
    sop_debug_string,
    sv_amplitude,
)

__all__ = [
    "Circuit",
    "GateSet",
    "InputError",
    "amplitude",
    "check_equivalence",
    "generate_bv",
    "generate_ghz",
    "generate_linear_network",
    "joint_probability",
    "parse_circuit",
    "sample",
    "sop_debug_string",
    "sv_amplitude",
]
