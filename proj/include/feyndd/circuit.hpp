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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feyndd/gateset.hpp"

namespace feyndd {

struct Gate {
  std::string name;
  std::vector<int> qubits;
  /// GRCS moment; -1 for the simple format. Only used to break ordering ties.
  int moment = -1;

  friend bool operator==(const Gate& a, const Gate& b) { return a.name == b.name && a.qubits == b.qubits; }
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  std::string gateset_id;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class CircuitFormat { kSimple, kGrcs };

CircuitFormat parse_format(std::string_view name);

/// Checks qubit ranges, distinctness, arity and gate-name resolution. Gate
/// names are rewritten to the gate set's canonical spelling. Throws InputError.
void validate(Circuit& circuit, const GateSet& gateset);

/// Simple format: `qubits N` header (optional when `num_qubits` is given or
/// inferable), then `name q0 [q1 ...]` per line, `#` comments.
/// GRCS format: optional leading qubit-count line, then `moment name q...`;
/// gates are stably ordered by moment. Errors carry the 1-based line number.
Circuit parse_circuit(std::string_view text, CircuitFormat format, const GateSet& gateset,
                      std::optional<int> num_qubits = std::nullopt);
Circuit read_circuit_file(const std::string& path, CircuitFormat format, const GateSet& gateset);

/// Simple-format text; parse_circuit(serialize(c)) == c.
std::string serialize(const Circuit& circuit);

/// H(0) followed by the CNOT chain (0,1), ..., (n-2,n-1).
Circuit generate_ghz(int n);

/// Bernstein-Vazirani with the all-ones secret, phase-oracle form:
/// H on every qubit, Z on every qubit, H on every qubit (3n gates).
Circuit generate_bv(int n);

struct LinearNetwork {
  Circuit circuit;
  /// Monomials of f mod 2 as sorted 0-based qubit index lists.
  std::vector<std::vector<int>> polynomial;
  std::vector<uint8_t> alpha;
};

struct LinearNetworkOptions {
  /// Forces A(x) = 0 so only the cubic window terms remain.
  bool zero_alpha = false;
};

/// IQP circuit H^n D H^n for f(x) = A(x) * sum_i x_i + sum_i C_{i:i+k-1} mod 2,
/// where A(x) = sum_i alpha_i x_i with seeded fair coins, and each window
/// C_{i:i+k-1} is one uniformly chosen degree-3 monomial over x_i..x_{i+k-1}.
/// Linear, quadratic and cubic monomials of f become Z, CZ and CCZ.
LinearNetwork generate_linear_network(int n, int k, uint64_t seed, LinearNetworkOptions options = {});

/// Circuit for U^dagger: gates reversed, each replaced by its adjoint.
Circuit adjoint(const Circuit& circuit, const GateSet& gateset);

/// Gates of `b` appended after `a`.
Circuit compose(const Circuit& a, const Circuit& b);

}  // namespace feyndd
