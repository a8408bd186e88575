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

#include <gtest/gtest.h>

#include <cmath>

#include "feyndd/errors.hpp"
#include "feyndd/gateset.hpp"
#include "feyndd/oracle.hpp"

namespace feyndd {
namespace {

using S = Slot::Kind;

bool has_term(const GateSpec& g, uint32_t coefficient, std::vector<Slot> slots) {
  for (const auto& t : g.terms) {
    if (t.coefficient == coefficient && t.slots == slots) return true;
  }
  return false;
}

TEST(GateSet, HadamardInZ) {
  GateSet z = GateSet::builtin("z");
  EXPECT_EQ(z.modulus(), 2u);
  const GateSpec& h = z.at("h");
  EXPECT_FALSE(h.complex);
  EXPECT_EQ(h.arity, 1);
  EXPECT_EQ(h.sqrt2_exponent, 1);
  EXPECT_EQ(h.output_wiring, std::vector<int>{kFreshOutput});
  ASSERT_EQ(h.terms.size(), 1u);
  EXPECT_TRUE(has_term(h, 1, {{S::kInput, 0}, {S::kOutput, 0}}));
  EXPECT_EQ(h.fresh_output_qubits(), std::vector<int>{0});
  EXPECT_TRUE(h.diagonal_qubits().empty());
}

TEST(GateSet, TRescalesHadamard) {
  GateSet t = GateSet::builtin("t");
  EXPECT_EQ(t.modulus(), 8u);
  const GateSpec& tg = t.at("t");
  EXPECT_EQ(tg.diagonal_qubits(), std::vector<int>{0});
  EXPECT_TRUE(has_term(tg, 1, {{S::kInput, 0}}));
  EXPECT_TRUE(has_term(t.at("h"), 4, {{S::kInput, 0}, {S::kOutput, 0}}));
}

TEST(GateSet, GoogleSqrtX) {
  GateSet g = GateSet::builtin("g");
  EXPECT_EQ(g.modulus(), 24u);
  const GateSpec& sx = g.at("sqrt_x");
  EXPECT_EQ(sx.sqrt2_exponent, 1);
  EXPECT_TRUE(has_term(sx, 18, {{S::kInput, 0}}));
  EXPECT_TRUE(has_term(sx, 18, {{S::kOutput, 0}}));
  EXPECT_TRUE(has_term(sx, 12, {{S::kInput, 0}, {S::kOutput, 0}}));
  EXPECT_EQ(g.canonical_name("X_1_2"), "sqrt_x");
  EXPECT_EQ(g.at("iswap").output_wiring, (std::vector<int>{1, 0}));
}

TEST(GateSet, AliasesAreCaseInsensitive) {
  GateSet z = GateSet::builtin("z");
  EXPECT_EQ(z.canonical_name("CNOT"), "cx");
  EXPECT_EQ(z.canonical_name("Toffoli"), "ccx");
  EXPECT_EQ(z.find("nope"), nullptr);
  EXPECT_THROW(z.at("nope"), InputError);
}

TEST(GateSet, EveryShippedGateIsUnitary) {
  for (const char* id : {"z", "t", "g"}) {
    GateSet gs = GateSet::builtin(id);
    for (const auto& name : gs.gate_names()) {
      const GateSpec& spec = gs.at(name);
      Matrix m = gate_matrix(spec, gs);
      const size_t dim = size_t{1} << spec.arity;
      double worst = 0;
      for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) {
          std::complex<double> dot = 0;
          for (size_t k = 0; k < dim; ++k) dot += std::conj(m[k * dim + i]) * m[k * dim + j];
          worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
      }
      EXPECT_LE(worst, 1e-12) << id << ":" << name;
    }
  }
}

TEST(GateSet, CnotExpansionIsCnot) {
  GateSet z = GateSet::builtin("z");
  Matrix m = gate_matrix(z.at("cx"), z);
  // Control is local qubit 0 (bit 0), target local qubit 1 (bit 1).
  for (size_t in = 0; in < 4; ++in) {
    size_t expect = (in & 1) ? in ^ 2 : in;
    for (size_t out = 0; out < 4; ++out) {
      EXPECT_NEAR(std::abs(m[out * 4 + in] - std::complex<double>(out == expect ? 1.0 : 0.0)), 0.0, 1e-15);
    }
  }
}

TEST(GateSet, AdjointsConjugateTranspose) {
  for (const char* id : {"z", "t", "g"}) {
    GateSet gs = GateSet::builtin(id);
    for (const auto& name : gs.gate_names()) {
      const GateSpec& spec = gs.at(name);
      Matrix m = gate_matrix(spec, gs);
      Matrix a = gate_matrix(gs.at(gs.adjoint_name(name)), gs);
      const size_t dim = size_t{1} << spec.arity;
      for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) {
          EXPECT_NEAR(std::abs(a[i * dim + j] - std::conj(m[j * dim + i])), 0.0, 1e-12) << id << ":" << name;
        }
      }
      EXPECT_EQ(gs.adjoint_name(gs.adjoint_name(name)), gs.canonical_name(name));
    }
  }
}

TEST(GateSet, SelfAdjointAndNamedAdjoints) {
  GateSet z = GateSet::builtin("z");
  for (const char* g : {"h", "z", "cz", "ccz", "cx", "ccx"}) EXPECT_EQ(z.adjoint_name(g), g);
  GateSet t = GateSet::builtin("t");
  EXPECT_EQ(t.adjoint_name("t"), "tdg");
  EXPECT_EQ(t.adjoint_name("s"), "sdg");
  EXPECT_TRUE(has_term(t.at("tdg"), 7, {{S::kInput, 0}}));
}

TEST(GateSet, CommonModulusRescales) {
  GateSet gs = GateSet::load(R"({"id": "mix", "gates": [
    {"name": "a", "arity": 1, "modulus": 2, "sqrt2_exponent": 0, "outputs": ["in0"], "internal": 0,
     "terms": [[1, ["in0"]]]},
    {"name": "b", "arity": 1, "modulus": 3, "sqrt2_exponent": 0, "outputs": ["in0"], "internal": 0,
     "terms": [[-1, ["in0"]]]}]})");
  EXPECT_EQ(gs.modulus(), 6u);
  EXPECT_TRUE(has_term(gs.at("a"), 3, {{S::kInput, 0}}));
  EXPECT_TRUE(has_term(gs.at("b"), 4, {{S::kInput, 0}}));
}

TEST(GateSet, SchemaErrors) {
  EXPECT_THROW(GateSet::load("not json"), InputError);
  EXPECT_THROW(GateSet::load(R"({"id": "x", "gates": [{"name": "a", "arity": 1}]})"), InputError);
  EXPECT_THROW(GateSet::load(R"({"id": "x", "gates": [
    {"name": "a", "arity": 1, "modulus": 2, "sqrt2_exponent": 0, "outputs": ["in0"], "internal": 0,
     "terms": [[1, ["in0", "in0"]]]}]})"),
               InputError);
  EXPECT_THROW(GateSet::load(R"({"id": "x", "gates": [
    {"name": "a", "arity": 1, "modulus": 2, "sqrt2_exponent": 0, "outputs": ["in0"], "internal": 0,
     "terms": [[1.5, ["in0"]]]}]})"),
               InputError);
  EXPECT_THROW(GateSet::load(R"({"id": "x", "gates": [
    {"name": "c", "arity": 1, "expansion": [["missing", [0]]]}]})"),
               InputError);
  EXPECT_THROW(GateSet::resolve("/nonexistent/gates.json"), InputError);
}

}  // namespace
}  // namespace feyndd
