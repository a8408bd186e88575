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

#include <complex>
#include <string>
#include <vector>

#include "feyndd/circuit.hpp"
#include "feyndd/exactnum.hpp"
#include "feyndd/gateset.hpp"
#include "feyndd/sop.hpp"

namespace feyndd {

/// Brute-force references. Slow on purpose; nothing here touches the DD code.

using Matrix = std::vector<std::complex<double>>;

/// Dense 2^arity x 2^arity matrix of a gate, entry [out * dim + in]. Local
/// qubit j of the gate is bit j of the row/column index. Complex gates are
/// the product of their expansion.
Matrix gate_matrix(const GateSpec& spec, const GateSet& gateset);

/// 2^n amplitudes, qubit k is bit k of the index.
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  int num_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  std::complex<double> amplitude(const std::string& bits) const;
  double norm_squared() const;

  void set_basis_state(size_t index);
  /// Applies a dense matrix (gate_matrix layout) on the listed qubits.
  void apply(const Matrix& m, const std::vector<int>& qubits);
  void apply(const Circuit& circuit, const GateSet& gateset);

 private:
  int n_;
  std::vector<std::complex<double>> amp_;
};

/// Index with bit k equal to bits[k].
size_t bits_to_index(const std::string& bits);
std::string index_to_bits(size_t index, int num_qubits);

inline constexpr int kMaxStateVectorQubits = 24;
inline constexpr int kMaxTraceQubits = 12;
inline constexpr int kMaxPathSumVars = 26;

/// U|0^n>. Throws InputError beyond kMaxStateVectorQubits.
StateVector sv_state(const Circuit& circuit, const GateSet& gateset);
/// <a|U|0^n>, a[k] is qubit k.
std::complex<double> sv_amplitude(const Circuit& circuit, const GateSet& gateset, const std::string& bits);
/// tr U, built column by column. Throws InputError beyond kMaxTraceQubits.
std::complex<double> sv_unitary_trace(const Circuit& circuit, const GateSet& gateset);

/// Exact value of the tensor after binding `bindings`, by enumerating every
/// internal variable. All external variables must be bound. Throws
/// InputError when more than kMaxPathSumVars variables remain.
Cyclotomic pathsum_eval(const SopTensor& tensor, const std::vector<Binding>& bindings = {});

/// Counts N_j of a polynomial over `vars` by enumeration (Gray code).
std::vector<mpz_class> enumerate_counts(const Polynomial& poly, const std::vector<Var>& vars);

}  // namespace feyndd
