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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "feyndd/circuit.hpp"
#include "feyndd/exactnum.hpp"
#include "feyndd/gateset.hpp"
#include "feyndd/mtbdd.hpp"
#include "feyndd/random.hpp"
#include "feyndd/sop.hpp"

namespace feyndd {

enum class OrderStrategy { kQubit, kGate, kExplicit };

OrderStrategy parse_order_strategy(const std::string& name);
std::string to_string(OrderStrategy s);

struct SimOptions {
  OrderStrategy order = OrderStrategy::kQubit;
  /// Used with kExplicit. Variables that do not survive into the final tensor
  /// are dropped; every surviving variable must be listed.
  std::vector<Var> explicit_order;
  bool sifting = false;
  bool simplify = true;
  uint64_t seed = 0;
  size_t gc_watermark = DdStore::kDefaultGcWatermark;
};

struct DdStats {
  size_t dd_size = 0;
  size_t peak_nodes = 0;
  size_t num_vars = 0;
  size_t num_terms = 0;
  std::vector<Var> order;
};

struct ExactResult {
  Cyclotomic value;
  CountVector counts;
  DdStats stats;
};

/// Value of a tensor with no external variables: simplify (optional), build
/// the DD, count, and fold in the prefactor and phase.
ExactResult evaluate_closed(const SopTensor& tensor, const SimOptions& options);

/// <a|C|0^n>, a[k] is qubit k.
ExactResult amplitude(const Circuit& circuit, const GateSet& gateset, const std::string& bits,
                      const SimOptions& options = {});

/// Pr[qubits[i] = outcomes[i] for all i] as an exact real value.
ExactResult joint_probability(const Circuit& circuit, const GateSet& gateset, const std::vector<int>& qubits,
                              const std::string& outcomes, const SimOptions& options = {});

/// Pr[qubit = outcome].
ExactResult accept_probability(const Circuit& circuit, const GateSet& gateset, int qubit, bool outcome,
                               const SimOptions& options = {});

/// Sequential sampler over one DD of the derived function F with every output
/// wire left external. Prefix probabilities are restrictions of that DD.
class Sampler {
 public:
  Sampler(const Circuit& circuit, const GateSet& gateset, const SimOptions& options = {});
  ~Sampler();
  Sampler(const Sampler&) = delete;
  Sampler& operator=(const Sampler&) = delete;

  int num_qubits() const;
  /// Pr[qubit 0..j-1 = prefix].
  Cyclotomic prefix_probability(const std::string& prefix);
  /// Draws one output string; bit k is qubit k.
  std::string sample(SplitMix64& rng);
  const DdStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<std::string> sample(const Circuit& circuit, const GateSet& gateset, int shots,
                                const SimOptions& options = {}, DdStats* stats = nullptr);

struct EquivVerdict {
  bool equivalent = false;
  /// tr(U0^dagger U1) / 2^n.
  Cyclotomic trace_value;
  /// j with trace_value = omega^j, when it is a root of unity of order r.
  std::optional<uint32_t> phase_index;
  DdStats stats;
};

/// Exact trace test on adjoint(c0) ++ c1. Both circuits must use the gate set.
EquivVerdict check_equivalence(const Circuit& c0, const Circuit& c1, const GateSet& gateset,
                               const SimOptions& options = {});

/// Deletes one uniformly chosen gate.
Circuit mutate_missing(const Circuit& circuit, uint64_t seed);
/// Swaps control and target of one uniformly chosen CNOT; nullopt without CNOTs.
std::optional<Circuit> mutate_reverse(const Circuit& circuit, const GateSet& gateset, uint64_t seed);

}  // namespace feyndd
