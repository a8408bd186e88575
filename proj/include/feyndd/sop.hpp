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
#include <string>
#include <utility>
#include <vector>

#include "feyndd/circuit.hpp"
#include "feyndd/gateset.hpp"

namespace feyndd {

using Var = uint32_t;

struct Monomial {
  uint32_t coefficient;
  /// Sorted, duplicate-free.
  std::vector<Var> vars;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Multilinear polynomial over Z_r. Canonical: terms sorted by variable list,
/// no two terms share a list, every coefficient in [1, r). A degree-0 term is
/// never stored; constants live in SopTensor::phase.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(uint32_t modulus) : modulus_(modulus) {}
  /// Canonicalizes: sorts/dedupes each variable list (x^2 = x), merges equal
  /// lists mod r, drops zero terms. Degree-0 input terms are rejected.
  Polynomial(uint32_t modulus, std::vector<Monomial> terms);

  uint32_t modulus() const { return modulus_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  int degree() const;
  std::vector<Var> variables() const;

  /// Value mod r at a full assignment (indexed by variable id).
  uint32_t evaluate(const std::vector<uint8_t>& assignment) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  uint32_t modulus_ = 1;
  std::vector<Monomial> terms_;
};

/// Where a variable came from; feeds the ordering heuristics.
struct VarInfo {
  int qubit = -1;
  /// Circuit gate that minted it; -1 for initial wire labels.
  int mint_gate = -1;
  /// First circuit gate whose terms or wiring mention it.
  int first_gate = -1;
  int moment = -1;
  /// Set for the y' copies made by derived_F; `clone_of` is the original.
  bool clone = false;
  Var clone_of = 0;
};

/// One end of a qubit wire: a variable, a constant bit (after substitution),
/// or closed (consumed by a contraction).
struct Wire {
  enum class Kind : uint8_t { kVar, kConst, kClosed };
  Kind kind = Kind::kVar;
  uint32_t value = 0;

  static Wire var(Var v) { return {Kind::kVar, v}; }
  static Wire constant(bool b) { return {Kind::kConst, b ? 1u : 0u}; }
  bool is_var() const { return kind == Kind::kVar; }

  friend bool operator==(const Wire&, const Wire&) = default;
};

/// Tensor value at an assignment of the external variables:
///   2^(-s/2) * omega^phase * sum_{internal y} omega^poly(x, y),
/// or exactly 0 when `zero` is set.
struct SopTensor {
  uint32_t modulus = 1;
  int sqrt2_exponent = 0;
  uint32_t phase = 0;
  int num_qubits = 0;
  std::vector<Wire> inputs;
  std::vector<Wire> outputs;
  /// Sorted. May contain variables absent from `poly` (each contributes a
  /// factor 2 to the sum).
  std::vector<Var> internal;
  Polynomial poly;
  bool zero = false;
  /// Indexed by variable id; ids never get reused.
  std::vector<VarInfo> var_info;

  std::vector<Var> external_vars() const;
  bool is_internal(Var v) const;
  /// Internal plus external variables.
  std::vector<Var> live_vars() const;
  /// Throws std::logic_error when the structural invariants are broken.
  void check() const;
};

using Binding = std::pair<Var, uint8_t>;

/// Wire-labeling pass: one variable per qubit, fresh variables for fresh
/// output legs and internal slots, reused variables for diagonal legs.
/// Complex gates are expanded first.
SopTensor circuit_to_sop(const Circuit& circuit, const GateSet& gateset);

/// Binds external variables to bits. A variable bound to both 0 and 1 makes
/// the tensor zero. Throws InputError when binding an internal variable.
SopTensor substitute(const SopTensor& tensor, const std::vector<Binding>& bindings);

/// Identifies each pair (second renamed onto first) and sums over the merged
/// variable. All wire positions of contracted variables are closed.
SopTensor contract(const SopTensor& tensor, const std::vector<std::pair<Var, Var>>& pairs);

/// Eliminates internal x occurring in exactly two terms (r/2) x a and
/// (r/2) x b via sum_x (-1)^(x(a+b)) = 2 delta(a, b). Repeats to a fixpoint.
/// No-op for odd r.
SopTensor simplify_pairs(const SopTensor& tensor);

/// <a| U |0^n>: inputs bound to 0, outputs to a (a[k] is qubit k); every
/// remaining variable is internal.
SopTensor amplitude_sop(const SopTensor& tensor, const std::string& bits);

/// tr U: input and output of each qubit identified through the connected
/// components of the shared-variable graph; everything becomes internal.
SopTensor trace_sop(const SopTensor& tensor);

/// F(x, y, y') = f(x, y) - f(x, y') for a tensor whose inputs are bound.
/// Output wires stay external; y and y' are internal; s doubles; phase is 0.
SopTensor derived_F(const SopTensor& tensor);

/// The measurement-probability tensor: inputs bound to 0, then F, then the
/// listed output wires bound to `outcomes`, then remaining outputs summed.
SopTensor probability_sop(const SopTensor& circuit_tensor, const std::vector<int>& qubits,
                          const std::string& outcomes);

/// `x1*x4 + x2*x5 + ... [r=2, s=4, internal={x5}]` with 1-based names.
std::string debug_string(const SopTensor& tensor);
std::string debug_string(const Polynomial& poly);

}  // namespace feyndd
