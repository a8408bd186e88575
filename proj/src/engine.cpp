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

#include "feyndd/engine.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "feyndd/errors.hpp"

namespace feyndd {

OrderStrategy parse_order_strategy(const std::string& name) {
  if (name == "qubit") return OrderStrategy::kQubit;
  if (name == "gate") return OrderStrategy::kGate;
  if (name == "explicit") return OrderStrategy::kExplicit;
  throw InputError("unknown order strategy '" + name + "'");
}

std::string to_string(OrderStrategy s) {
  switch (s) {
    case OrderStrategy::kQubit:
      return "qubit";
    case OrderStrategy::kGate:
      return "gate";
    case OrderStrategy::kExplicit:
      return "explicit";
  }
  return "?";
}

namespace {

std::vector<Var> choose_order(const SopTensor& t, const SimOptions& o) {
  switch (o.order) {
    case OrderStrategy::kQubit:
      return order_qubit(t);
    case OrderStrategy::kGate:
      return order_gate(t);
    case OrderStrategy::kExplicit: {
      std::vector<Var> live = t.live_vars();
      std::unordered_set<Var> keep(live.begin(), live.end());
      std::vector<Var> order;
      for (Var v : o.explicit_order) {
        if (keep.count(v)) order.push_back(v);
      }
      return order_explicit(t, std::move(order));
    }
  }
  throw std::logic_error("unreachable order strategy");
}

struct Built {
  std::unique_ptr<DdStore> store;
  NodeId root = 0;
  DdStats stats;
};

Built build_dd(const SopTensor& t, const SimOptions& o) {
  Built b;
  b.store = std::make_unique<DdStore>(t.modulus, choose_order(t, o), o.gc_watermark);
  b.root = b.store->build(t.poly);
  b.store->protect(b.root);
  if (o.sifting) b.store->sift(std::span<const NodeId>(&b.root, 1));
  b.stats.order = b.store->order();
  b.stats.dd_size = b.store->node_count(b.root);
  b.stats.peak_nodes = b.store->peak_nodes();
  b.stats.num_vars = b.stats.order.size();
  b.stats.num_terms = t.poly.size();
  return b;
}

CountVector zero_counts(uint32_t r) {
  CountVector c;
  c.counts.assign(r, 0);
  return c;
}

}  // namespace

ExactResult evaluate_closed(const SopTensor& tensor, const SimOptions& options) {
  if (!tensor.external_vars().empty()) throw InputError("evaluate_closed: tensor has external variables");
  const uint32_t r = tensor.modulus;
  if (tensor.zero) return {Cyclotomic(r), zero_counts(r), {}};
  SopTensor t = options.simplify ? simplify_pairs(tensor) : tensor;
  Built b = build_dd(t, options);
  CountVector counts = b.store->count_terminals(b.root, t.internal);
  Cyclotomic value = Cyclotomic::from_counts(counts, t.sqrt2_exponent, t.phase);
  return {std::move(value), std::move(counts), std::move(b.stats)};
}

ExactResult amplitude(const Circuit& circuit, const GateSet& gateset, const std::string& bits,
                      const SimOptions& options) {
  return evaluate_closed(amplitude_sop(circuit_to_sop(circuit, gateset), bits), options);
}

ExactResult joint_probability(const Circuit& circuit, const GateSet& gateset, const std::vector<int>& qubits,
                              const std::string& outcomes, const SimOptions& options) {
  return evaluate_closed(probability_sop(circuit_to_sop(circuit, gateset), qubits, outcomes), options);
}

ExactResult accept_probability(const Circuit& circuit, const GateSet& gateset, int qubit, bool outcome,
                               const SimOptions& options) {
  return joint_probability(circuit, gateset, {qubit}, outcome ? "1" : "0", options);
}

struct Sampler::Impl {
  SopTensor F;
  Built dd;
  std::map<std::string, std::pair<NodeId, Cyclotomic>, std::less<>> prefixes;

  // Variables counted for a prefix of length j: every live variable except the
  // output variables of qubits < j.
  std::vector<Var> counted(size_t j) const {
    std::set<Var> fixed;
    for (size_t k = 0; k < j; ++k) {
      if (F.outputs[k].is_var()) fixed.insert(F.outputs[k].value);
    }
    std::vector<Var> out;
    for (Var v : F.live_vars()) {
      if (!fixed.count(v)) out.push_back(v);
    }
    return out;
  }
};

Sampler::Sampler(const Circuit& circuit, const GateSet& gateset, const SimOptions& options)
    : impl_(std::make_unique<Impl>()) {
  SopTensor f = circuit_to_sop(circuit, gateset);
  std::vector<Binding> inputs;
  for (const auto& w : f.inputs) {
    if (w.is_var()) inputs.push_back({w.value, 0});
  }
  f = substitute(f, inputs);
  if (options.simplify) f = simplify_pairs(f);
  SopTensor F = derived_F(f);
  if (options.simplify) F = simplify_pairs(F);
  impl_->F = std::move(F);
  impl_->dd = build_dd(impl_->F, options);
}

Sampler::~Sampler() = default;

int Sampler::num_qubits() const { return impl_->F.num_qubits; }

const DdStats& Sampler::stats() const { return impl_->dd.stats; }

Cyclotomic Sampler::prefix_probability(const std::string& prefix) {
  Impl& m = *impl_;
  const uint32_t r = m.F.modulus;
  if (prefix.size() > static_cast<size_t>(m.F.num_qubits)) throw InputError("prefix longer than the qubit count");
  auto found = m.prefixes.find(prefix);
  if (found != m.prefixes.end()) return found->second.second;

  NodeId root = m.dd.root;
  bool zero = m.F.zero;
  if (!prefix.empty()) {
    Cyclotomic parent = prefix_probability(prefix.substr(0, prefix.size() - 1));
    root = m.prefixes.at(prefix.substr(0, prefix.size() - 1)).first;
    zero = parent.is_zero();
    const size_t k = prefix.size() - 1;
    const char c = prefix[k];
    if (c != '0' && c != '1') throw InputError("prefix must contain only 0 and 1");
    const Wire& w = m.F.outputs[k];
    if (w.is_var()) {
      // Wires merged by simplify share a variable; conflicting bits vanish.
      for (size_t j = 0; j < k; ++j) {
        if (m.F.outputs[j] == w && prefix[j] != c) zero = true;
      }
      root = m.dd.store->restrict(root, w.value, c == '1');
    } else if (w.kind == Wire::Kind::kConst && w.value != static_cast<uint32_t>(c == '1')) {
      zero = true;
    }
  }
  Cyclotomic value(r);
  if (!zero) {
    CountVector counts = m.dd.store->count_terminals(root, m.counted(prefix.size()));
    value = Cyclotomic::from_counts(counts, m.F.sqrt2_exponent, m.F.phase);
  }
  m.dd.store->protect(root);
  m.prefixes.emplace(prefix, std::make_pair(root, value));
  return value;
}

std::string Sampler::sample(SplitMix64& rng) {
  std::string prefix;
  Cyclotomic p = prefix_probability(prefix);
  for (int k = 0; k < num_qubits(); ++k) {
    Cyclotomic p0 = prefix_probability(prefix + '0');
    long double ratio = real_ratio(p0, p);
    bool one = !(static_cast<long double>(rng.uniform()) < ratio);
    prefix.push_back(one ? '1' : '0');
    p = one ? p - p0 : p0;
    if (p.is_zero()) throw std::logic_error("sampler extended a zero-probability prefix");
  }
  return prefix;
}

std::vector<std::string> sample(const Circuit& circuit, const GateSet& gateset, int shots,
                                const SimOptions& options, DdStats* stats) {
  if (shots < 0) throw InputError("shot count must be non-negative");
  Sampler sampler(circuit, gateset, options);
  SplitMix64 rng = SplitMix64(options.seed).split(3);
  std::vector<std::string> out;
  out.reserve(shots);
  for (int i = 0; i < shots; ++i) out.push_back(sampler.sample(rng));
  if (stats) *stats = sampler.stats();
  return out;
}

EquivVerdict check_equivalence(const Circuit& c0, const Circuit& c1, const GateSet& gateset,
                               const SimOptions& options) {
  if (c0.num_qubits != c1.num_qubits) {
    throw InputError("circuits act on " + std::to_string(c0.num_qubits) + " and " +
                     std::to_string(c1.num_qubits) + " qubits");
  }
  for (const Circuit* c : {&c0, &c1}) {
    if (!c->gateset_id.empty() && c->gateset_id != gateset.id()) {
      throw InputError("circuit uses gate set '" + c->gateset_id + "', expected '" + gateset.id() + "'");
    }
  }
  Circuit combined = compose(adjoint(c0, gateset), c1);
  ExactResult tr = evaluate_closed(trace_sop(circuit_to_sop(combined, gateset)), options);

  EquivVerdict v;
  const uint32_t r = gateset.modulus();
  v.trace_value = Cyclotomic(r, tr.value.coefficients(), tr.value.sqrt2_exponent() + 2L * c0.num_qubits);
  v.equivalent = v.trace_value.abs_squared().equals_integer(1);
  if (v.equivalent) {
    for (uint32_t j = 0; j < r; ++j) {
      if (v.trace_value == Cyclotomic::omega_power(r, j)) {
        v.phase_index = j;
        break;
      }
    }
  }
  v.stats = std::move(tr.stats);
  return v;
}

Circuit mutate_missing(const Circuit& circuit, uint64_t seed) {
  if (circuit.gates.empty()) throw InputError("cannot remove a gate from an empty circuit");
  Circuit out = circuit;
  SplitMix64 rng(seed);
  out.gates.erase(out.gates.begin() + static_cast<long>(rng.below(out.gates.size())));
  return out;
}

std::optional<Circuit> mutate_reverse(const Circuit& circuit, const GateSet& gateset, uint64_t seed) {
  const GateSpec* cx = gateset.find("cx");
  if (!cx) return std::nullopt;
  std::vector<size_t> candidates;
  for (size_t i = 0; i < circuit.gates.size(); ++i) {
    if (gateset.canonical_name(circuit.gates[i].name) == cx->name) candidates.push_back(i);
  }
  if (candidates.empty()) return std::nullopt;
  Circuit out = circuit;
  SplitMix64 rng(seed);
  auto& q = out.gates[candidates[rng.below(candidates.size())]].qubits;
  std::swap(q[0], q[1]);
  return out;
}

}  // namespace feyndd
