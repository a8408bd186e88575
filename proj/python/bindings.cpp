// Copyright 2026 The feyndd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "feyndd/engine.hpp"
#include "feyndd/errors.hpp"
#include "feyndd/oracle.hpp"

namespace py = pybind11;
using namespace feyndd;

namespace {

SimOptions options(const std::string& order, bool sift, bool simplify, uint64_t seed) {
  SimOptions o;
  o.order = parse_order_strategy(order);
  o.sifting = sift;
  o.simplify = simplify;
  o.seed = seed;
  return o;
}

py::dict exact(const Cyclotomic& v) {
  py::dict d = py::module_::import("json").attr("loads")(to_json(v));
  auto z = v.to_complex();
  d["value"] = std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  return d;
}

py::dict with_stats(py::dict d, const DdStats& s) {
  d["dd_size"] = s.dd_size;
  d["peak_nodes"] = s.peak_nodes;
  d["num_vars"] = s.num_vars;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "feyndd core bindings";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<GateSet>(m, "GateSet")
      .def_static("builtin", [](const std::string& id) { return GateSet::builtin(id); })
      .def_static("resolve", &GateSet::resolve)
      .def_static("load", [](const std::string& text) { return GateSet::load(text); })
      .def_property_readonly("id", &GateSet::id)
      .def_property_readonly("modulus", &GateSet::modulus)
      .def("gate_names", &GateSet::gate_names);

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("num_qubits", &Circuit::num_qubits)
      .def_readonly("gateset_id", &Circuit::gateset_id)
      .def_property_readonly("gates",
                             [](const Circuit& c) {
                               py::list out;
                               for (const auto& g : c.gates) out.append(py::make_tuple(g.name, g.qubits));
                               return out;
                             })
      .def("__len__", [](const Circuit& c) { return c.gates.size(); })
      .def("serialize", &serialize);

  m.def(
      "parse_circuit",
      [](const std::string& text, const GateSet& gs, const std::string& format) {
        return parse_circuit(text, parse_format(format), gs);
      },
      py::arg("text"), py::arg("gateset"), py::arg("format") = "simple");
  m.def("generate_ghz", &generate_ghz, py::arg("n"));
  m.def("generate_bv", &generate_bv, py::arg("n"));
  m.def(
      "generate_linear_network",
      [](int n, int k, uint64_t seed) { return generate_linear_network(n, k, seed).circuit; }, py::arg("n"),
      py::arg("k"), py::arg("seed"));

  m.def(
      "amplitude",
      [](const Circuit& c, const GateSet& gs, const std::string& bits, const std::string& order, bool sift,
         bool simplify) {
        ExactResult r = amplitude(c, gs, bits, options(order, sift, simplify, 0));
        return with_stats(exact(r.value), r.stats);
      },
      py::arg("circuit"), py::arg("gateset"), py::arg("bits"), py::arg("order") = "qubit", py::arg("sift") = false,
      py::arg("simplify") = true);
  m.def(
      "joint_probability",
      [](const Circuit& c, const GateSet& gs, const std::vector<int>& qubits, const std::string& outcomes) {
        ExactResult r = joint_probability(c, gs, qubits, outcomes);
        py::dict d = with_stats(exact(r.value), r.stats);
        d["probability"] = probability(r.value);
        return d;
      },
      py::arg("circuit"), py::arg("gateset"), py::arg("qubits"), py::arg("outcomes"));
  m.def(
      "sample",
      [](const Circuit& c, const GateSet& gs, int shots, uint64_t seed) {
        return sample(c, gs, shots, options("qubit", false, true, seed));
      },
      py::arg("circuit"), py::arg("gateset"), py::arg("shots") = 1, py::arg("seed") = 0);
  m.def(
      "check_equivalence",
      [](const Circuit& a, const Circuit& b, const GateSet& gs) {
        EquivVerdict v = check_equivalence(a, b, gs);
        py::dict d;
        d["equivalent"] = v.equivalent;
        d["trace"] = exact(v.trace_value);
        d["phase_index"] = v.phase_index ? py::object(py::int_(*v.phase_index)) : py::object(py::none());
        return d;
      },
      py::arg("c0"), py::arg("c1"), py::arg("gateset"));
  m.def("sv_amplitude", &sv_amplitude, py::arg("circuit"), py::arg("gateset"), py::arg("bits"));
  m.def(
      "sop_debug_string",
      [](const Circuit& c, const GateSet& gs) { return debug_string(circuit_to_sop(c, gs)); }, py::arg("circuit"),
      py::arg("gateset"));
}
