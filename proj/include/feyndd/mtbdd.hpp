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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "feyndd/sop.hpp"

namespace feyndd {

using NodeId = uint32_t;

/// N_j = number of assignments with f = j (mod r).
struct CountVector {
  std::vector<mpz_class> counts;

  mpz_class total() const;
  friend bool operator==(const CountVector&, const CountVector&) = default;
};

/// Hash-consed MTBDD node store with terminals 0..r-1 and a fixed variable
/// order (level 0 is the root-most variable). Nodes are never complemented.
/// Terminal j has NodeId j. Single-threaded.
class DdStore {
 public:
  static constexpr size_t kDefaultGcWatermark = size_t{1} << 22;

  DdStore(uint32_t modulus, std::vector<Var> order, size_t gc_watermark = kDefaultGcWatermark);

  uint32_t modulus() const { return modulus_; }
  const std::vector<Var>& order() const { return var_at_level_; }
  bool has_var(Var v) const { return v < level_of_var_.size() && level_of_var_[v] != kNoLevel; }
  uint32_t level_of(Var v) const;

  NodeId terminal(uint32_t value) const { return value % modulus_; }
  bool is_terminal(NodeId n) const { return n < modulus_; }
  uint32_t terminal_value(NodeId n) const { return n; }
  uint32_t level(NodeId n) const { return nodes_[n].level; }
  Var var(NodeId n) const { return var_at_level_[nodes_[n].level]; }
  NodeId low(NodeId n) const { return nodes_[n].lo; }
  NodeId high(NodeId n) const { return nodes_[n].hi; }

  /// The reduced node (level, lo, hi): returns lo when lo == hi.
  NodeId make_node(uint32_t level, NodeId lo, NodeId hi);

  /// Chain: the product of the monomial's variables times its coefficient.
  NodeId build_monomial(const Monomial& m);
  /// Binary synthesis: terms combined pairwise in a balanced tree of add_mod.
  NodeId build(const Polynomial& poly);
  /// Left fold of add_mod over the terms (reference route for tests).
  NodeId build_sequential(const Polynomial& poly);

  NodeId add_mod(NodeId a, NodeId b);
  NodeId negate_terminals(NodeId a);
  /// Cofactor at var = value; no-op for variables outside the order.
  NodeId restrict(NodeId a, Var v, bool value);
  uint32_t evaluate(NodeId a, const std::vector<uint8_t>& assignment) const;

  /// Counts over the variables `over`. Variables of `over` absent from the
  /// diagram double every count. Throws std::invalid_argument when a variable
  /// reachable from `a` is not in `over`.
  CountVector count_terminals(NodeId a, std::span<const Var> over) const;

  /// Reachable nodes, terminals included.
  size_t node_count(NodeId root) const;
  size_t node_count(std::span<const NodeId> roots) const;
  size_t live_nodes() const { return live_; }
  size_t peak_nodes() const { return peak_; }

  /// Roots survive garbage collection while protected.
  void protect(NodeId n);
  void unprotect(NodeId n);
  /// Mark-and-sweep from protected roots plus `extra_roots`. Clears caches.
  void collect_garbage(std::span<const NodeId> extra_roots = {});
  /// Collects when live nodes exceed the watermark.
  void maybe_collect(std::span<const NodeId> extra_roots = {});
  void clear_caches();

  /// Swaps the variables at levels i and i+1 in place; every NodeId keeps
  /// denoting the same function.
  void swap_levels(uint32_t i);
  /// Rudell-style sifting: each variable is moved through all levels and
  /// left at the position minimising the node count of `roots`. Never
  /// increases that count. Returns the final size.
  size_t sift(std::span<const NodeId> roots, double max_growth = 1.2);

  /// Graphviz text; dashed edges are 0-branches, solid edges 1-branches.
  std::string to_dot(NodeId root) const;

  /// Structural invariants (ordered, reduced, unique); throws std::logic_error.
  void check(NodeId root) const;

 private:
  static constexpr uint32_t kNoLevel = UINT32_MAX;
  static constexpr uint32_t kTerminalLevel = UINT32_MAX;
  static constexpr uint32_t kFreeLevel = UINT32_MAX - 1;

  struct Node {
    uint32_t level;
    NodeId lo;
    NodeId hi;
  };
  struct KeyHash {
    size_t operator()(const Node& n) const {
      uint64_t h = (uint64_t{n.level} * 0x9E3779B97F4A7C15ULL) ^ (uint64_t{n.lo} * 0xC2B2AE3D27D4EB4FULL) ^
                   (uint64_t{n.hi} * 0x165667B19E3779F9ULL);
      return static_cast<size_t>(h ^ (h >> 29));
    }
  };
  struct KeyEq {
    bool operator()(const Node& a, const Node& b) const {
      return a.level == b.level && a.lo == b.lo && a.hi == b.hi;
    }
  };

  NodeId allocate(const Node& n);
  NodeId restrict_rec(NodeId a, uint32_t lvl, bool value, std::unordered_map<NodeId, NodeId>& memo);
  std::vector<NodeId> reachable(std::span<const NodeId> roots) const;
  std::vector<std::vector<NodeId>> nodes_by_level() const;

  uint32_t modulus_;
  std::vector<Var> var_at_level_;
  std::vector<uint32_t> level_of_var_;
  size_t gc_watermark_;

  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
  std::unordered_map<Node, NodeId, KeyHash, KeyEq> unique_;
  std::unordered_map<uint64_t, NodeId> add_cache_;
  std::unordered_map<NodeId, NodeId> negate_cache_;
  std::unordered_map<NodeId, int> protected_;
  size_t live_ = 0;
  size_t peak_ = 0;
};

/// Variables sorted by (originating qubit, mint time); y' copies sit next to
/// their originals.
std::vector<Var> order_qubit(const SopTensor& tensor);
/// Variables sorted by the first gate that references them (GRCS moment, then
/// mint time, break ties).
std::vector<Var> order_gate(const SopTensor& tensor);
/// Validates that `order` is a permutation of the tensor's live variables.
std::vector<Var> order_explicit(const SopTensor& tensor, std::vector<Var> order);

}  // namespace feyndd
