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

#include "feyndd/engine.hpp"
#include "feyndd/errors.hpp"
#include "feyndd/oracle.hpp"
#include "support/random_inputs.hpp"

namespace feyndd {
namespace {

const char* kLabeledExample = "qubits 3\nh 0\nh 1\ncz 1 2\nccz 0 1 2\nh 1\nh 2\nz 0\nccz 0 1 2\n";

double close(const Cyclotomic& v, std::complex<double> expect) {
  auto z = v.to_complex();
  return std::abs(std::complex<double>(double(z.real()), double(z.imag())) - expect);
}

TEST(Amplitude, Examples) {
  GateSet z = GateSet::builtin("z");
  for (int n = 1; n <= 64; ++n) {
    ExactResult r = amplitude(generate_ghz(n), z, std::string(n, '0'));
    EXPECT_EQ(r.value, Cyclotomic(2, {1}, 1)) << n;
    EXPECT_EQ(r.value.normalized().coefficients(), (std::vector<mpz_class>{1, 0}));
  }
  Circuit fig = parse_circuit(kLabeledExample, CircuitFormat::kSimple, z);
  EXPECT_EQ(amplitude(fig, z, "000").value, Cyclotomic(2, {1}, 2));
  EXPECT_EQ(amplitude(Circuit{1, {{"h", {0}}}, "z"}, z, "0").value, Cyclotomic(2, {1}, 1));
  EXPECT_TRUE(amplitude(Circuit{1, {{"z", {0}}}, "z"}, z, "1").value.is_zero());
}

TEST(Amplitude, OptionsAgree) {
  SplitMix64 rng(97);
  GateSet t = GateSet::builtin("t");
  for (int i = 0; i < 15; ++i) {
    Circuit c = testing::random_circuit(t, 5, 40, rng);
    std::string bits = testing::random_bits(5, rng);
    Cyclotomic base = amplitude(c, t, bits).value;
    SimOptions gate;
    gate.order = OrderStrategy::kGate;
    EXPECT_EQ(amplitude(c, t, bits, gate).value, base);
    SimOptions sift;
    sift.sifting = true;
    EXPECT_EQ(amplitude(c, t, bits, sift).value, base);
    SimOptions raw;
    raw.simplify = false;
    EXPECT_EQ(amplitude(c, t, bits, raw).value, base);
    SimOptions gc;
    gc.gc_watermark = 16;
    EXPECT_EQ(amplitude(c, t, bits, gc).value, base);
  }
}

TEST(Amplitude, ExplicitOrder) {
  GateSet z = GateSet::builtin("z");
  Circuit c = parse_circuit(kLabeledExample, CircuitFormat::kSimple, z);
  SimOptions o;
  o.order = OrderStrategy::kExplicit;
  o.simplify = false;
  o.explicit_order = {6, 5, 4, 3, 2, 1, 0};
  ExactResult r = amplitude(c, z, "000", o);
  EXPECT_EQ(r.value, Cyclotomic(2, {1}, 2));
  EXPECT_EQ(r.stats.order, std::vector<Var>{4});
  o.explicit_order = {0, 1};
  EXPECT_THROW(amplitude(c, z, "000", o), InputError);
}

TEST(Amplitude, MatchesOracle) {
  SplitMix64 rng(101);
  for (const char* id : {"z", "t", "g"}) {
    GateSet gs = GateSet::builtin(id);
    for (int i = 0; i < 20; ++i) {
      int n = 1 + static_cast<int>(rng.below(8));
      Circuit c = testing::random_circuit(gs, n, static_cast<int>(rng.below(61)), rng);
      StateVector sv = sv_state(c, gs);
      for (int j = 0; j < 8; ++j) {
        std::string bits = testing::random_bits(n, rng);
        EXPECT_LE(close(amplitude(c, gs, bits).value, sv.amplitude(bits)), 1e-9);
      }
    }
  }
}

TEST(Amplitude, NormSumsToOne) {
  SplitMix64 rng(103);
  for (const char* id : {"z", "t", "g"}) {
    GateSet gs = GateSet::builtin(id);
    for (int n = 1; n <= 5; ++n) {
      Circuit c = testing::random_circuit(gs, n, 25, rng);
      double total = 0;
      for (size_t i = 0; i < (size_t{1} << n); ++i) {
        total += std::norm(amplitude(c, gs, index_to_bits(i, n)).value.to_complex());
      }
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(Probability, Examples) {
  GateSet z = GateSet::builtin("z");
  EXPECT_DOUBLE_EQ(probability(accept_probability(Circuit{1, {{"h", {0}}}, "z"}, z, 0, true).value), 0.5);
  EXPECT_DOUBLE_EQ(probability(accept_probability(generate_ghz(3), z, 0, false).value), 0.5);
  EXPECT_TRUE(accept_probability(Circuit{2, {}, "z"}, z, 1, true).value.is_zero());
  EXPECT_TRUE(joint_probability(generate_ghz(3), z, {}, "").value.equals_integer(1));
  EXPECT_EQ(joint_probability(generate_ghz(3), z, {0, 1, 2}, "000").value, Cyclotomic(2, {1}, 2));
  EXPECT_TRUE(joint_probability(generate_ghz(3), z, {0, 1}, "01").value.is_zero());
  EXPECT_DOUBLE_EQ(probability(joint_probability(generate_ghz(4), z, {3, 0}, "11").value), 0.5);
  EXPECT_THROW(joint_probability(generate_ghz(3), z, {0, 0}, "00"), InputError);
}

TEST(Probability, ChainRuleExact) {
  SplitMix64 rng(107);
  for (const char* id : {"z", "t", "g"}) {
    GateSet gs = GateSet::builtin(id);
    for (int i = 0; i < 5; ++i) {
      int n = 2 + static_cast<int>(rng.below(4));
      Circuit c = testing::random_circuit(gs, n, 30, rng);
      Sampler s(c, gs);
      EXPECT_TRUE(s.prefix_probability("").equals_integer(1));
      for (int len = 0; len < n; ++len) {
        for (size_t p = 0; p < (size_t{1} << len); ++p) {
          std::string prefix = index_to_bits(p, len);
          EXPECT_EQ(s.prefix_probability(prefix), s.prefix_probability(prefix + '0') + s.prefix_probability(prefix + '1'));
        }
      }
      // Sampler prefixes agree with the standalone joint probability.
      std::vector<int> qubits(n);
      for (int q = 0; q < n; ++q) qubits[q] = q;
      std::string full = testing::random_bits(n, rng);
      EXPECT_EQ(s.prefix_probability(full), joint_probability(c, gs, qubits, full).value);
    }
  }
}

TEST(Sample, SupportAndDeterminism) {
  GateSet z = GateSet::builtin("z");
  SimOptions o;
  o.seed = 5;
  for (const auto& s : sample(generate_ghz(6), z, 300, o)) EXPECT_TRUE(s == "000000" || s == "111111") << s;
  auto bv = sample(generate_bv(9), z, 20, o);
  for (const auto& s : bv) EXPECT_EQ(s, std::string(9, '1'));
  EXPECT_EQ(sample(generate_ghz(6), z, 50, o), sample(generate_ghz(6), z, 50, o));
  auto both = sample(generate_ghz(2), z, 200, o);
  EXPECT_GT(std::count(both.begin(), both.end(), "00"), 60);
  EXPECT_GT(std::count(both.begin(), both.end(), "11"), 60);
}

TEST(Equivalence, Examples) {
  GateSet z = GateSet::builtin("z");
  Circuit cx{2, {{"cx", {0, 1}}}, "z"};
  Circuit expanded{2, {{"h", {1}}, {"cz", {0, 1}}, {"h", {1}}}, "z"};
  EquivVerdict v = check_equivalence(cx, expanded, z);
  EXPECT_TRUE(v.equivalent);
  EXPECT_EQ(v.phase_index, 0u);
  EXPECT_TRUE(v.trace_value.equals_integer(1));

  Circuit ghz = generate_ghz(3);
  EXPECT_TRUE(check_equivalence(ghz, ghz, z).equivalent);
  Circuit missing = ghz;
  missing.gates.erase(missing.gates.begin() + 1);
  EXPECT_FALSE(check_equivalence(ghz, missing, z).equivalent);

  // Global phase: Z X Z X = -I.
  Circuit minus{1, {{"z", {0}}, {"x", {0}}, {"z", {0}}, {"x", {0}}}, "z"};
  EquivVerdict phase = check_equivalence(Circuit{1, {}, "z"}, minus, z);
  EXPECT_TRUE(phase.equivalent);
  EXPECT_EQ(phase.phase_index, 1u);

  // T^8 = I, T^4 = Z, S = T^2 with a phase-free match.
  GateSet t = GateSet::builtin("t");
  Circuit t2{1, {{"t", {0}}, {"t", {0}}}, "t"};
  EXPECT_TRUE(check_equivalence(t2, Circuit{1, {{"s", {0}}}, "t"}, t).equivalent);
  EXPECT_FALSE(check_equivalence(t2, Circuit{1, {{"t", {0}}}, "t"}, t).equivalent);

  EXPECT_THROW(check_equivalence(ghz, generate_ghz(4), z), InputError);
  EXPECT_THROW(check_equivalence(t2, t2, z), InputError);
}

TEST(Equivalence, AgreesWithTraceArbiter) {
  SplitMix64 rng(109);
  for (const char* id : {"z", "t", "g"}) {
    GateSet gs = GateSet::builtin(id);
    for (int i = 0; i < 10; ++i) {
      int n = 1 + static_cast<int>(rng.below(5));
      Circuit c = testing::random_circuit(gs, n, 1 + static_cast<int>(rng.below(25)), rng);
      EXPECT_TRUE(check_equivalence(c, c, gs).equivalent);
      Circuit m = mutate_missing(c, rng.next());
      double mag = std::abs(sv_unitary_trace(compose(adjoint(c, gs), m), gs)) / std::ldexp(1.0, n);
      EXPECT_EQ(check_equivalence(c, m, gs).equivalent, std::fabs(mag - 1) < 1e-9);
    }
  }
}

TEST(Mutations, Basics) {
  GateSet z = GateSet::builtin("z");
  Circuit one{1, {{"h", {0}}}, "z"};
  EXPECT_TRUE(mutate_missing(one, 3).gates.empty());
  EXPECT_THROW(mutate_missing(Circuit{1, {}, "z"}, 3), InputError);
  EXPECT_FALSE(mutate_reverse(one, z, 3).has_value());
  Circuit cx{2, {{"cx", {0, 1}}}, "z"};
  auto rev = mutate_reverse(cx, z, 3);
  ASSERT_TRUE(rev.has_value());
  EXPECT_EQ(rev->gates[0], (Gate{"cx", {1, 0}}));
  EXPECT_FALSE(mutate_reverse(cx, GateSet::builtin("g"), 3).has_value());
  EXPECT_EQ(mutate_missing(generate_ghz(10), 42), mutate_missing(generate_ghz(10), 42));
}

}  // namespace
}  // namespace feyndd
