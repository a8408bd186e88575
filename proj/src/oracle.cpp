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

#include "feyndd/oracle.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "feyndd/errors.hpp"

namespace feyndd {

namespace {

std::complex<double> omega_power(uint32_t r, uint64_t j) {
  double angle = 2.0 * std::numbers::pi * static_cast<double>(j % r) / static_cast<double>(r);
  return std::polar(1.0, angle);
}

Matrix simple_gate_matrix(const GateSpec& spec) {
  const int a = spec.arity;
  const size_t dim = size_t{1} << a;
  const double scale = std::pow(2.0, -0.5 * spec.sqrt2_exponent);
  Matrix m(dim * dim, 0.0);
  for (size_t in = 0; in < dim; ++in) {
    for (size_t out = 0; out < dim; ++out) {
      bool consistent = true;
      for (int k = 0; k < a; ++k) {
        int src = spec.output_wiring[k];
        if (src != kFreshOutput && ((out >> k) & 1) != ((in >> src) & 1)) consistent = false;
      }
      if (!consistent) continue;
      std::complex<double> sum = 0.0;
      for (uint64_t y = 0; y < (uint64_t{1} << spec.internal_count); ++y) {
        uint64_t e = 0;
        for (const auto& t : spec.terms) {
          bool on = true;
          for (const auto& s : t.slots) {
            uint64_t bits = s.kind == Slot::Kind::kInput ? in : s.kind == Slot::Kind::kOutput ? out : y;
            if (!((bits >> s.index) & 1)) {
              on = false;
              break;
            }
          }
          if (on) e += t.coefficient;
        }
        sum += omega_power(spec.modulus, e);
      }
      m[out * dim + in] = scale * sum;
    }
  }
  return m;
}

}  // namespace

Matrix gate_matrix(const GateSpec& spec, const GateSet& gateset) {
  if (!spec.complex) return simple_gate_matrix(spec);
  const size_t dim = size_t{1} << spec.arity;
  Matrix m(dim * dim, 0.0);
  for (size_t in = 0; in < dim; ++in) {
    StateVector sv(spec.arity);
    sv.set_basis_state(in);
    for (const auto& sub : spec.expansion) sv.apply(gate_matrix(gateset.at(sub.name), gateset), sub.qubits);
    for (size_t out = 0; out < dim; ++out) m[out * dim + in] = sv.amplitudes()[out];
  }
  return m;
}

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxStateVectorQubits) {
    throw InputError("state vector limited to " + std::to_string(kMaxStateVectorQubits) + " qubits");
  }
  amp_.assign(size_t{1} << n_, 0.0);
  amp_[0] = 1.0;
}

void StateVector::set_basis_state(size_t index) {
  std::fill(amp_.begin(), amp_.end(), 0.0);
  amp_.at(index) = 1.0;
}

std::complex<double> StateVector::amplitude(const std::string& bits) const {
  if (static_cast<int>(bits.size()) != n_) throw InputError("bit string length does not match qubit count");
  return amp_[bits_to_index(bits)];
}

double StateVector::norm_squared() const {
  double s = 0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

void StateVector::apply(const Matrix& m, const std::vector<int>& qubits) {
  const size_t k = qubits.size();
  const size_t dim = size_t{1} << k;
  size_t mask = 0;
  for (int q : qubits) mask |= size_t{1} << q;
  std::vector<size_t> offset(dim, 0);
  for (size_t local = 0; local < dim; ++local) {
    for (size_t j = 0; j < k; ++j) {
      if ((local >> j) & 1) offset[local] |= size_t{1} << qubits[j];
    }
  }
  std::vector<std::complex<double>> in(dim), out(dim);
  for (size_t base = 0; base < amp_.size(); ++base) {
    if (base & mask) continue;
    for (size_t i = 0; i < dim; ++i) in[i] = amp_[base | offset[i]];
    for (size_t o = 0; o < dim; ++o) {
      std::complex<double> s = 0.0;
      for (size_t i = 0; i < dim; ++i) s += m[o * dim + i] * in[i];
      out[o] = s;
    }
    for (size_t i = 0; i < dim; ++i) amp_[base | offset[i]] = out[i];
  }
}

void StateVector::apply(const Circuit& circuit, const GateSet& gateset) {
  std::map<std::string, Matrix> cache;
  for (const auto& g : circuit.gates) {
    auto it = cache.find(g.name);
    if (it == cache.end()) it = cache.emplace(g.name, gate_matrix(gateset.at(g.name), gateset)).first;
    apply(it->second, g.qubits);
  }
}

size_t bits_to_index(const std::string& bits) {
  size_t index = 0;
  for (size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      index |= size_t{1} << k;
    } else if (bits[k] != '0') {
      throw InputError("bit string must contain only 0 and 1");
    }
  }
  return index;
}

std::string index_to_bits(size_t index, int num_qubits) {
  std::string s(num_qubits, '0');
  for (int k = 0; k < num_qubits; ++k) {
    if ((index >> k) & 1) s[k] = '1';
  }
  return s;
}

StateVector sv_state(const Circuit& circuit, const GateSet& gateset) {
  StateVector sv(circuit.num_qubits);
  sv.apply(circuit, gateset);
  return sv;
}

std::complex<double> sv_amplitude(const Circuit& circuit, const GateSet& gateset, const std::string& bits) {
  return sv_state(circuit, gateset).amplitude(bits);
}

std::complex<double> sv_unitary_trace(const Circuit& circuit, const GateSet& gateset) {
  if (circuit.num_qubits > kMaxTraceQubits) {
    throw InputError("unitary trace limited to " + std::to_string(kMaxTraceQubits) + " qubits");
  }
  std::complex<double> trace = 0.0;
  StateVector sv(circuit.num_qubits);
  for (size_t col = 0; col < sv.amplitudes().size(); ++col) {
    sv.set_basis_state(col);
    sv.apply(circuit, gateset);
    trace += sv.amplitudes()[col];
  }
  return trace;
}

std::vector<mpz_class> enumerate_counts(const Polynomial& poly, const std::vector<Var>& vars) {
  const uint32_t r = poly.modulus();
  std::map<Var, size_t> local;
  for (size_t i = 0; i < vars.size(); ++i) local.emplace(vars[i], i);
  if (vars.size() > kMaxPathSumVars) throw InputError("too many variables to enumerate");

  std::vector<std::vector<size_t>> touching(vars.size());
  std::vector<std::vector<size_t>> term_vars;
  for (size_t t = 0; t < poly.terms().size(); ++t) {
    std::vector<size_t> ids;
    for (Var v : poly.terms()[t].vars) {
      auto it = local.find(v);
      if (it == local.end()) throw std::invalid_argument("enumerate_counts: polynomial variable not enumerated");
      ids.push_back(it->second);
      touching[it->second].push_back(t);
    }
    term_vars.push_back(std::move(ids));
  }

  std::vector<uint8_t> x(vars.size(), 0);
  std::vector<uint64_t> counts(r, 0);
  uint64_t value = 0;
  counts[0] = 1;
  const uint64_t total = uint64_t{1} << vars.size();
  for (uint64_t step = 1; step < total; ++step) {
    size_t flip = static_cast<size_t>(std::countr_zero(step));
    uint64_t delta = 0;
    for (size_t t : touching[flip]) {
      bool on = true;
      for (size_t v : term_vars[t]) {
        if (v != flip && !x[v]) {
          on = false;
          break;
        }
      }
      if (on) delta += poly.terms()[t].coefficient;
    }
    delta %= r;
    x[flip] ^= 1;
    value = x[flip] ? (value + delta) % r : (value + r - delta) % r;
    ++counts[value];
  }
  std::vector<mpz_class> out(r);
  for (uint32_t j = 0; j < r; ++j) out[j] = mpz_class(std::to_string(counts[j]));
  return out;
}

Cyclotomic pathsum_eval(const SopTensor& tensor, const std::vector<Binding>& bindings) {
  SopTensor t = bindings.empty() ? tensor : substitute(tensor, bindings);
  if (!t.external_vars().empty()) throw InputError("pathsum_eval: every external variable must be bound");
  const uint32_t r = t.modulus;
  if (t.zero) return Cyclotomic(r);
  std::vector<Var> used = t.poly.variables();
  size_t absent = t.internal.size() - used.size();
  std::vector<mpz_class> n = enumerate_counts(t.poly, used);
  std::vector<mpz_class> coeffs(r);
  for (uint32_t j = 0; j < r; ++j) coeffs[(j + t.phase) % r] = n[j] << static_cast<mp_bitcnt_t>(absent);
  return Cyclotomic(r, std::move(coeffs), t.sqrt2_exponent);
}

}  // namespace feyndd
