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

#include "feyndd/sop.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "feyndd/errors.hpp"

namespace feyndd {

namespace {

struct VarListHash {
  size_t operator()(const std::vector<Var>& v) const {
    uint64_t h = 1469598103934665603ULL;
    for (Var x : v) {
      h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

std::string var_name(Var v) { return "x" + std::to_string(v + 1); }

class UnionFind {
 public:
  Var find(Var v) {
    auto it = parent_.find(v);
    if (it == parent_.end() || it->second == v) return v;
    Var root = find(it->second);
    parent_[v] = root;
    return root;
  }
  // The representative of the merged class is a's representative.
  void unite(Var a, Var b) {
    Var ra = find(a), rb = find(b);
    if (ra != rb) parent_[rb] = ra;
  }

 private:
  std::unordered_map<Var, Var> parent_;
};

Polynomial rename(const Polynomial& p, const std::unordered_map<Var, Var>& map) {
  std::vector<Monomial> terms;
  terms.reserve(p.size());
  for (const auto& m : p.terms()) {
    Monomial nm{m.coefficient, {}};
    nm.vars.reserve(m.vars.size());
    for (Var v : m.vars) {
      auto it = map.find(v);
      nm.vars.push_back(it == map.end() ? v : it->second);
    }
    terms.push_back(std::move(nm));
  }
  return Polynomial(p.modulus(), std::move(terms));
}

void sort_unique(std::vector<Var>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Polynomial::Polynomial(uint32_t modulus, std::vector<Monomial> terms) : modulus_(modulus) {
  for (auto& m : terms) {
    sort_unique(m.vars);
    if (m.vars.empty()) throw std::logic_error("Polynomial: degree-0 term; constants belong in the phase");
    m.coefficient %= modulus_;
  }
  std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) { return a.vars < b.vars; });
  for (auto& m : terms) {
    if (!terms_.empty() && terms_.back().vars == m.vars) {
      terms_.back().coefficient = (terms_.back().coefficient + m.coefficient) % modulus_;
      if (terms_.back().coefficient == 0) terms_.pop_back();
    } else if (m.coefficient != 0) {
      terms_.push_back(std::move(m));
    }
  }
}

int Polynomial::degree() const {
  size_t d = 0;
  for (const auto& m : terms_) d = std::max(d, m.vars.size());
  return static_cast<int>(d);
}

std::vector<Var> Polynomial::variables() const {
  std::vector<Var> out;
  for (const auto& m : terms_) out.insert(out.end(), m.vars.begin(), m.vars.end());
  sort_unique(out);
  return out;
}

uint32_t Polynomial::evaluate(const std::vector<uint8_t>& assignment) const {
  uint64_t sum = 0;
  for (const auto& m : terms_) {
    bool on = std::all_of(m.vars.begin(), m.vars.end(), [&](Var v) { return assignment[v] != 0; });
    if (on) sum += m.coefficient;
  }
  return static_cast<uint32_t>(sum % modulus_);
}

std::vector<Var> SopTensor::external_vars() const {
  std::vector<Var> out;
  for (const auto* wires : {&inputs, &outputs}) {
    for (const auto& w : *wires) {
      if (w.is_var()) out.push_back(w.value);
    }
  }
  sort_unique(out);
  return out;
}

bool SopTensor::is_internal(Var v) const { return std::binary_search(internal.begin(), internal.end(), v); }

std::vector<Var> SopTensor::live_vars() const {
  std::vector<Var> out = external_vars();
  out.insert(out.end(), internal.begin(), internal.end());
  sort_unique(out);
  return out;
}

void SopTensor::check() const {
  if (!std::is_sorted(internal.begin(), internal.end())) throw std::logic_error("internal set not sorted");
  auto ext = external_vars();
  for (Var v : ext) {
    if (is_internal(v)) throw std::logic_error("variable " + var_name(v) + " is both internal and external");
  }
  for (Var v : live_vars()) {
    if (v >= var_info.size()) throw std::logic_error("variable id without provenance");
  }
  for (const auto& m : poly.terms()) {
    for (Var v : m.vars) {
      if (!is_internal(v) && !std::binary_search(ext.begin(), ext.end(), v)) {
        throw std::logic_error("polynomial mentions undeclared variable " + var_name(v));
      }
    }
  }
  if (poly.modulus() != modulus) throw std::logic_error("mixed moduli");
}

SopTensor circuit_to_sop(const Circuit& circuit, const GateSet& gateset) {
  if (circuit.num_qubits < 1) throw InputError("circuit must have at least one qubit");
  SopTensor t;
  t.modulus = gateset.modulus();
  t.num_qubits = circuit.num_qubits;
  std::vector<Var> wire(circuit.num_qubits);
  std::vector<Monomial> raw;

  auto mint = [&](int qubit, int gate, int moment) {
    Var v = static_cast<Var>(t.var_info.size());
    t.var_info.push_back({qubit, gate, gate, moment});
    return v;
  };
  auto touch = [&](Var v, int gate, int moment) {
    VarInfo& info = t.var_info[v];
    if (info.first_gate < 0) {
      info.first_gate = gate;
      info.moment = moment;
    }
  };

  for (int q = 0; q < circuit.num_qubits; ++q) {
    wire[q] = mint(q, -1, -1);
    t.inputs.push_back(Wire::var(wire[q]));
  }

  auto apply_simple = [&](const GateSpec& spec, const std::vector<int>& qubits, int gate, int moment) {
    std::vector<Var> in(spec.arity), out(spec.arity), internal(spec.internal_count);
    for (int j = 0; j < spec.arity; ++j) {
      in[j] = wire[qubits[j]];
      touch(in[j], gate, moment);
    }
    for (auto& y : internal) y = mint(qubits[0], gate, moment);
    for (int k = 0; k < spec.arity; ++k) {
      out[k] = spec.output_wiring[k] == kFreshOutput ? mint(qubits[k], gate, moment) : in[spec.output_wiring[k]];
    }
    for (const auto& term : spec.terms) {
      Monomial m{term.coefficient, {}};
      for (const auto& s : term.slots) {
        switch (s.kind) {
          case Slot::Kind::kInput:
            m.vars.push_back(in[s.index]);
            break;
          case Slot::Kind::kOutput:
            m.vars.push_back(out[s.index]);
            break;
          case Slot::Kind::kInternal:
            m.vars.push_back(internal[s.index]);
            break;
        }
      }
      raw.push_back(std::move(m));
    }
    for (int k = 0; k < spec.arity; ++k) wire[qubits[k]] = out[k];
    t.sqrt2_exponent += spec.sqrt2_exponent;
  };

  for (int gi = 0; gi < static_cast<int>(circuit.gates.size()); ++gi) {
    const Gate& g = circuit.gates[gi];
    const GateSpec& spec = gateset.at(g.name);
    if (static_cast<int>(g.qubits.size()) != spec.arity) {
      throw InputError("gate '" + g.name + "' takes " + std::to_string(spec.arity) + " qubits");
    }
    for (int q : g.qubits) {
      if (q < 0 || q >= circuit.num_qubits) throw InputError("qubit index out of range in gate '" + g.name + "'");
    }
    if (!spec.complex) {
      apply_simple(spec, g.qubits, gi, g.moment);
      continue;
    }
    for (const auto& sub : spec.expansion) {
      std::vector<int> qubits;
      for (int p : sub.qubits) qubits.push_back(g.qubits[p]);
      apply_simple(gateset.at(sub.name), qubits, gi, g.moment);
    }
  }

  for (int q = 0; q < circuit.num_qubits; ++q) t.outputs.push_back(Wire::var(wire[q]));
  auto ext = t.external_vars();
  for (Var v = 0; v < t.var_info.size(); ++v) {
    if (!std::binary_search(ext.begin(), ext.end(), v)) t.internal.push_back(v);
  }
  t.poly = Polynomial(t.modulus, std::move(raw));
  return t;
}

SopTensor substitute(const SopTensor& tensor, const std::vector<Binding>& bindings) {
  std::unordered_map<Var, uint8_t> value;
  SopTensor out = tensor;
  auto ext = tensor.external_vars();
  for (const auto& [v, bit] : bindings) {
    if (!std::binary_search(ext.begin(), ext.end(), v)) {
      throw InputError("cannot bind " + var_name(v) + ": not an external variable");
    }
    uint8_t b = bit ? 1 : 0;
    auto [it, inserted] = value.emplace(v, b);
    if (!inserted && it->second != b) out.zero = true;
  }

  std::vector<Monomial> terms;
  uint64_t phase = tensor.phase;
  for (const auto& m : tensor.poly.terms()) {
    Monomial nm{m.coefficient, {}};
    bool dropped = false;
    for (Var v : m.vars) {
      auto it = value.find(v);
      if (it == value.end()) {
        nm.vars.push_back(v);
      } else if (it->second == 0) {
        dropped = true;
        break;
      }
    }
    if (dropped) continue;
    if (nm.vars.empty()) {
      phase += nm.coefficient;
    } else {
      terms.push_back(std::move(nm));
    }
  }
  out.phase = static_cast<uint32_t>(phase % tensor.modulus);
  out.poly = Polynomial(tensor.modulus, std::move(terms));
  for (auto* wires : {&out.inputs, &out.outputs}) {
    for (auto& w : *wires) {
      if (!w.is_var()) continue;
      auto it = value.find(w.value);
      if (it != value.end()) w = Wire::constant(it->second != 0);
    }
  }
  return out;
}

SopTensor contract(const SopTensor& tensor, const std::vector<std::pair<Var, Var>>& pairs) {
  auto ext = tensor.external_vars();
  auto is_ext = [&](Var v) { return std::binary_search(ext.begin(), ext.end(), v); };
  UnionFind uf;
  std::set<Var> touched;
  for (const auto& [a, b] : pairs) {
    if (!is_ext(a) || !is_ext(b)) throw InputError("contract: both variables of a pair must be external");
    if (a == b) continue;
    uf.unite(a, b);
    touched.insert(a);
    touched.insert(b);
  }
  if (touched.empty()) return tensor;

  std::unordered_map<Var, Var> map;
  std::set<Var> reps;
  for (Var v : touched) {
    Var r = uf.find(v);
    reps.insert(r);
    if (r != v) map[v] = r;
  }
  SopTensor out = tensor;
  for (auto* wires : {&out.inputs, &out.outputs}) {
    for (auto& w : *wires) {
      if (w.is_var() && touched.count(w.value)) w = {Wire::Kind::kClosed, 0};
    }
  }
  out.internal.insert(out.internal.end(), reps.begin(), reps.end());
  sort_unique(out.internal);
  out.poly = rename(tensor.poly, map);
  return out;
}

namespace {

// Mutable term store for the pair-elimination fixpoint.
class TermStore {
 public:
  TermStore(uint32_t modulus, const Polynomial& poly) : modulus_(modulus) {
    for (const auto& m : poly.terms()) add(m.vars, m.coefficient);
  }

  void add(std::vector<Var> vars, uint32_t coefficient) {
    coefficient %= modulus_;
    if (coefficient == 0) return;
    auto it = index_.find(vars);
    if (it != index_.end()) {
      Monomial& m = terms_[it->second];
      m.coefficient = (m.coefficient + coefficient) % modulus_;
      if (m.coefficient == 0) remove(it->second);
      return;
    }
    size_t id = terms_.size();
    for (Var v : vars) occurrences(v).push_back(id);
    index_.emplace(vars, id);
    terms_.push_back({coefficient, std::move(vars)});
    alive_.push_back(true);
  }

  void remove(size_t id) {
    alive_[id] = false;
    index_.erase(terms_[id].vars);
  }

  /// Live term ids containing v (compacts the occurrence list).
  const std::vector<size_t>& live_terms(Var v) {
    auto& occ = occurrences(v);
    occ.erase(std::remove_if(occ.begin(), occ.end(), [&](size_t id) { return !alive_[id]; }), occ.end());
    return occ;
  }

  const Monomial& term(size_t id) const { return terms_[id]; }

  Polynomial to_polynomial() const {
    std::vector<Monomial> out;
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (alive_[i]) out.push_back(terms_[i]);
    }
    return Polynomial(modulus_, std::move(out));
  }

 private:
  std::vector<size_t>& occurrences(Var v) {
    if (v >= occ_.size()) occ_.resize(v + 1);
    return occ_[v];
  }

  uint32_t modulus_;
  std::vector<Monomial> terms_;
  std::vector<bool> alive_;
  std::unordered_map<std::vector<Var>, size_t, VarListHash> index_;
  std::vector<std::vector<size_t>> occ_;
};

}  // namespace

SopTensor simplify_pairs(const SopTensor& tensor) {
  const uint32_t r = tensor.modulus;
  if (r % 2 != 0 || tensor.zero) return tensor;
  const uint32_t half = r / 2;

  std::set<Var> internal(tensor.internal.begin(), tensor.internal.end());
  TermStore store(r, tensor.poly);
  std::deque<Var> work(tensor.internal.begin(), tensor.internal.end());
  int sqrt2 = tensor.sqrt2_exponent;
  std::vector<std::pair<Var, Var>> renamed;

  while (!work.empty()) {
    Var x = work.front();
    work.pop_front();
    if (!internal.count(x)) continue;
    const auto& occ = store.live_terms(x);
    if (occ.size() != 2) continue;
    const Monomial& t0 = store.term(occ[0]);
    const Monomial& t1 = store.term(occ[1]);
    if (t0.coefficient != half || t1.coefficient != half || t0.vars.size() != 2 || t1.vars.size() != 2) continue;
    Var a = t0.vars[0] == x ? t0.vars[1] : t0.vars[0];
    Var b = t1.vars[0] == x ? t1.vars[1] : t1.vars[0];
    // Prefer dropping an internal variable; two externals merge onto a and
    // the wires follow.
    bool a_int = internal.count(a) > 0, b_int = internal.count(b) > 0;
    Var keep = a_int && !b_int ? b : a;
    Var drop = a_int && !b_int ? a : b;

    size_t id0 = occ[0], id1 = occ[1];
    store.remove(id0);
    store.remove(id1);
    internal.erase(x);
    internal.erase(drop);
    sqrt2 -= 2;

    std::vector<size_t> moved = store.live_terms(drop);
    for (size_t id : moved) {
      Monomial m = store.term(id);
      store.remove(id);
      for (Var& v : m.vars) {
        if (v == drop) v = keep;
      }
      sort_unique(m.vars);
      for (Var v : m.vars) work.push_back(v);
      store.add(std::move(m.vars), m.coefficient);
    }
    work.push_back(keep);
    if (!a_int && !b_int) renamed.emplace_back(drop, keep);
  }

  SopTensor out = tensor;
  for (const auto& [drop, keep] : renamed) {
    for (auto* wires : {&out.inputs, &out.outputs}) {
      for (Wire& w : *wires) {
        if (w.is_var() && w.value == drop) w.value = keep;
      }
    }
  }
  out.sqrt2_exponent = sqrt2;
  out.internal.assign(internal.begin(), internal.end());
  out.poly = store.to_polynomial();
  return out;
}

SopTensor amplitude_sop(const SopTensor& tensor, const std::string& bits) {
  if (static_cast<int>(bits.size()) != tensor.num_qubits) {
    throw InputError("bit string has length " + std::to_string(bits.size()) + ", circuit has " +
                     std::to_string(tensor.num_qubits) + " qubits");
  }
  std::vector<Binding> bindings;
  bool contradiction = false;
  auto bind = [&](const Wire& w, uint8_t bit) {
    if (w.is_var()) {
      bindings.push_back({w.value, bit});
    } else if (w.kind == Wire::Kind::kConst && w.value != bit) {
      contradiction = true;
    }
  };
  for (const auto& w : tensor.inputs) bind(w, 0);
  for (int k = 0; k < tensor.num_qubits; ++k) {
    char c = bits[k];
    if (c != '0' && c != '1') throw InputError("bit string must contain only 0 and 1");
    bind(tensor.outputs[k], c == '1');
  }
  SopTensor out = substitute(tensor, bindings);
  if (contradiction) out.zero = true;
  return out;
}

SopTensor trace_sop(const SopTensor& tensor) {
  std::vector<Binding> bindings;
  bool contradiction = false;
  for (int q = 0; q < tensor.num_qubits; ++q) {
    const Wire& in = tensor.inputs[q];
    const Wire& out = tensor.outputs[q];
    if (in.kind == Wire::Kind::kConst && out.is_var()) bindings.push_back({out.value, static_cast<uint8_t>(in.value)});
    if (out.kind == Wire::Kind::kConst && in.is_var()) bindings.push_back({in.value, static_cast<uint8_t>(out.value)});
    if (in.kind == Wire::Kind::kConst && out.kind == Wire::Kind::kConst && in.value != out.value) contradiction = true;
  }
  SopTensor bound = bindings.empty() ? tensor : substitute(tensor, bindings);

  // Components of the graph whose edges are the shared in/out variables: one
  // union per qubit suffices because shared variables are the same id.
  UnionFind uf;
  for (int q = 0; q < tensor.num_qubits; ++q) {
    const Wire& in = bound.inputs[q];
    const Wire& out = bound.outputs[q];
    if (in.is_var() && out.is_var()) uf.unite(in.value, out.value);
  }
  std::unordered_map<Var, Var> map;
  std::set<Var> reps;
  for (Var v : bound.external_vars()) {
    Var r = uf.find(v);
    reps.insert(r);
    if (r != v) map[v] = r;
  }
  SopTensor out = bound;
  for (auto* wires : {&out.inputs, &out.outputs}) {
    for (auto& w : *wires) {
      if (w.is_var()) w = {Wire::Kind::kClosed, 0};
    }
  }
  out.internal.insert(out.internal.end(), reps.begin(), reps.end());
  sort_unique(out.internal);
  out.poly = rename(bound.poly, map);
  if (contradiction) out.zero = true;
  return out;
}

SopTensor derived_F(const SopTensor& tensor) {
  for (const auto& w : tensor.inputs) {
    if (w.is_var()) throw InputError("derived_F: input wires must be bound first");
  }
  SopTensor out = tensor;
  std::unordered_map<Var, Var> clone;
  for (Var y : tensor.internal) {
    Var c = static_cast<Var>(out.var_info.size());
    VarInfo info = tensor.var_info[y];
    info.clone = true;
    info.clone_of = y;
    out.var_info.push_back(info);
    clone[y] = c;
    out.internal.push_back(c);
  }
  const uint32_t r = tensor.modulus;
  std::vector<Monomial> terms;
  for (const auto& m : tensor.poly.terms()) {
    terms.push_back(m);
    Monomial neg{(r - m.coefficient) % r, {}};
    for (Var v : m.vars) {
      auto it = clone.find(v);
      neg.vars.push_back(it == clone.end() ? v : it->second);
    }
    terms.push_back(std::move(neg));
  }
  out.poly = Polynomial(r, std::move(terms));
  out.sqrt2_exponent = 2 * tensor.sqrt2_exponent;
  out.phase = 0;
  sort_unique(out.internal);
  return out;
}

SopTensor probability_sop(const SopTensor& circuit_tensor, const std::vector<int>& qubits,
                          const std::string& outcomes) {
  if (qubits.size() != outcomes.size()) throw InputError("need one outcome bit per measured qubit");
  std::vector<Binding> inputs;
  for (const auto& w : circuit_tensor.inputs) {
    if (w.is_var()) inputs.push_back({w.value, 0});
  }
  SopTensor f = substitute(circuit_tensor, inputs);
  SopTensor F = derived_F(f);

  std::vector<Binding> outs;
  std::set<int> seen;
  bool contradiction = false;
  for (size_t i = 0; i < qubits.size(); ++i) {
    int q = qubits[i];
    if (q < 0 || q >= F.num_qubits) throw InputError("measured qubit out of range");
    if (!seen.insert(q).second) throw InputError("qubit measured twice");
    char c = outcomes[i];
    if (c != '0' && c != '1') throw InputError("outcomes must contain only 0 and 1");
    const Wire& w = F.outputs[q];
    if (w.is_var()) {
      outs.push_back({w.value, static_cast<uint8_t>(c == '1')});
    } else if (w.kind == Wire::Kind::kConst && w.value != static_cast<uint32_t>(c == '1')) {
      contradiction = true;
    }
  }
  SopTensor out = substitute(F, outs);
  for (auto& w : out.outputs) {
    if (w.is_var()) {
      out.internal.push_back(w.value);
      w = {Wire::Kind::kClosed, 0};
    }
  }
  sort_unique(out.internal);
  if (contradiction) out.zero = true;
  return out;
}

std::string debug_string(const Polynomial& poly) {
  std::ostringstream s;
  bool first = true;
  for (const auto& m : poly.terms()) {
    if (!first) s << " + ";
    first = false;
    if (m.coefficient != 1) s << m.coefficient << '*';
    for (size_t i = 0; i < m.vars.size(); ++i) s << (i ? "*" : "") << var_name(m.vars[i]);
  }
  if (first) s << '0';
  return s.str();
}

std::string debug_string(const SopTensor& tensor) {
  std::ostringstream s;
  s << debug_string(tensor.poly) << " [r=" << tensor.modulus << ", s=" << tensor.sqrt2_exponent;
  if (tensor.phase != 0) s << ", phase=" << tensor.phase;
  s << ", internal={";
  for (size_t i = 0; i < tensor.internal.size(); ++i) s << (i ? "," : "") << var_name(tensor.internal[i]);
  s << '}';
  if (tensor.zero) s << ", zero";
  s << ']';
  return s.str();
}

}  // namespace feyndd
