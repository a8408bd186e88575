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

#pragma once

// Seeded random circuits, polynomials and tensors shared by the unit tests
// and the acceptance runner.

#include <algorithm>
#include <string>
#include <vector>

#include "feyndd/circuit.hpp"
#include "feyndd/gateset.hpp"
#include "feyndd/random.hpp"
#include "feyndd/sop.hpp"

namespace feyndd::testing {

/// Circuit with n qubits and m gates drawn uniformly from the gate set's
/// gates of arity <= n (synthesized adjoints excluded).
inline Circuit random_circuit(const GateSet& gs, int n, int m, SplitMix64& rng) {
  std::vector<std::string> names;
  for (const auto& name : gs.gate_names()) {
    if (name.size() > 3 && name.compare(name.size() - 3, 3, "_dg") == 0) continue;
    if (gs.at(name).arity <= n) names.push_back(name);
  }
  Circuit c{n, {}, gs.id()};
  for (int i = 0; i < m; ++i) {
    const std::string& name = names[rng.below(names.size())];
    std::vector<int> pool(n);
    for (int q = 0; q < n; ++q) pool[q] = q;
    std::vector<int> qubits;
    for (int j = 0; j < gs.at(name).arity; ++j) {
      size_t pick = j + rng.below(pool.size() - j);
      std::swap(pool[j], pool[pick]);
      qubits.push_back(pool[j]);
    }
    c.gates.push_back({name, qubits});
  }
  return c;
}

inline std::string random_bits(int n, SplitMix64& rng) {
  std::string s(n, '0');
  for (auto& ch : s) ch = rng.coin() ? '1' : '0';
  return s;
}

/// Multilinear polynomial over variables 0..num_vars-1 with degree <= 3.
inline Polynomial random_polynomial(uint32_t r, int num_vars, int num_terms, SplitMix64& rng) {
  std::vector<Monomial> terms;
  for (int t = 0; t < num_terms; ++t) {
    int degree = 1 + static_cast<int>(rng.below(std::min(3, num_vars)));
    std::vector<Var> vars;
    while (static_cast<int>(vars.size()) < degree) {
      Var v = static_cast<Var>(rng.below(num_vars));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    terms.push_back({static_cast<uint32_t>(1 + rng.below(r - 1)), vars});
  }
  return Polynomial(r, std::move(terms));
}

/// Closed tensor (no external variables) whose internal variables include
/// at least one that the counting identity can eliminate.
inline SopTensor random_eliminable_tensor(uint32_t r, int num_vars, SplitMix64& rng) {
  SopTensor t;
  t.modulus = r;
  t.sqrt2_exponent = static_cast<int>(rng.below(6));
  t.phase = static_cast<uint32_t>(rng.below(r));
  t.var_info.resize(num_vars);
  for (int v = 0; v < num_vars; ++v) t.internal.push_back(v);
  std::vector<Monomial> terms = random_polynomial(r, num_vars - 1, num_vars, rng).terms();
  // Variables >= num_vars - 1 are not used above; x = num_vars - 1 gets two
  // half-modulus bilinear terms.
  Var x = static_cast<Var>(num_vars - 1);
  Var a = static_cast<Var>(rng.below(num_vars - 1));
  Var b = static_cast<Var>(rng.below(num_vars - 1));
  if (a == b) b = (b + 1) % (num_vars - 1);
  terms.push_back({r / 2, {std::min(x, a), std::max(x, a)}});
  terms.push_back({r / 2, {std::min(x, b), std::max(x, b)}});
  t.poly = Polynomial(r, std::move(terms));
  return t;
}

}  // namespace feyndd::testing
