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

#include "feyndd/mtbdd.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "feyndd/errors.hpp"

namespace feyndd {

mpz_class CountVector::total() const {
  mpz_class sum = 0;
  for (const auto& c : counts) sum += c;
  return sum;
}

DdStore::DdStore(uint32_t modulus, std::vector<Var> order, size_t gc_watermark)
    : modulus_(modulus), var_at_level_(std::move(order)), gc_watermark_(gc_watermark) {
  if (modulus_ < 1 || modulus_ > 65536) throw std::invalid_argument("DdStore: modulus must be in [1, 65536]");
  for (uint32_t lvl = 0; lvl < var_at_level_.size(); ++lvl) {
    Var v = var_at_level_[lvl];
    if (v >= level_of_var_.size()) level_of_var_.resize(v + 1, kNoLevel);
    if (level_of_var_[v] != kNoLevel) throw InputError("variable order lists x" + std::to_string(v + 1) + " twice");
    level_of_var_[v] = lvl;
  }
  for (uint32_t t = 0; t < modulus_; ++t) nodes_.push_back({kTerminalLevel, t, t});
}

uint32_t DdStore::level_of(Var v) const {
  if (!has_var(v)) throw InputError("variable x" + std::to_string(v + 1) + " is missing from the order");
  return level_of_var_[v];
}

NodeId DdStore::allocate(const Node& n) {
  NodeId id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    nodes_[id] = n;
  } else {
    id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(n);
  }
  ++live_;
  peak_ = std::max(peak_, live_);
  return id;
}

NodeId DdStore::make_node(uint32_t lvl, NodeId lo, NodeId hi) {
  if (lo == hi) return lo;
  if (lvl >= nodes_[lo].level || lvl >= nodes_[hi].level) throw std::logic_error("make_node: children must lie below");
  Node key{lvl, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  NodeId id = allocate(key);
  unique_.emplace(key, id);
  return id;
}

NodeId DdStore::build_monomial(const Monomial& m) {
  std::vector<uint32_t> levels;
  levels.reserve(m.vars.size());
  for (Var v : m.vars) levels.push_back(level_of(v));
  std::sort(levels.begin(), levels.end(), std::greater<>());
  NodeId node = terminal(m.coefficient);
  for (uint32_t lvl : levels) node = make_node(lvl, terminal(0), node);
  return node;
}

NodeId DdStore::build(const Polynomial& poly) {
  if (poly.modulus() != modulus_) throw std::invalid_argument("build: polynomial modulus differs from the store");
  if (poly.empty()) return terminal(0);
  std::vector<NodeId> layer;
  layer.reserve(poly.size());
  for (const auto& m : poly.terms()) layer.push_back(build_monomial(m));
  while (layer.size() > 1) {
    std::vector<NodeId> next;
    next.reserve((layer.size() + 1) / 2);
    for (size_t i = 0; i < layer.size(); i += 2) {
      next.push_back(i + 1 < layer.size() ? add_mod(layer[i], layer[i + 1]) : layer[i]);
      if (live_ > gc_watermark_) {
        std::vector<NodeId> roots = next;
        roots.insert(roots.end(), layer.begin() + std::min(i + 2, layer.size()), layer.end());
        maybe_collect(roots);
      }
    }
    layer = std::move(next);
  }
  return layer[0];
}

NodeId DdStore::build_sequential(const Polynomial& poly) {
  if (poly.modulus() != modulus_) throw std::invalid_argument("build: polynomial modulus differs from the store");
  NodeId acc = terminal(0);
  for (const auto& m : poly.terms()) acc = add_mod(acc, build_monomial(m));
  return acc;
}

NodeId DdStore::add_mod(NodeId a, NodeId b) {
  if (a >= nodes_.size() || b >= nodes_.size()) throw std::invalid_argument("add_mod: node not in this store");
  if (is_terminal(a) && is_terminal(b)) return terminal((a + b) % modulus_);
  if (a == 0) return b;
  if (b == 0) return a;
  if (a > b) std::swap(a, b);
  uint64_t key = (uint64_t{a} << 32) | b;
  if (auto it = add_cache_.find(key); it != add_cache_.end()) return it->second;
  uint32_t la = nodes_[a].level, lb = nodes_[b].level;
  uint32_t top = std::min(la, lb);
  NodeId a0 = la == top ? nodes_[a].lo : a, a1 = la == top ? nodes_[a].hi : a;
  NodeId b0 = lb == top ? nodes_[b].lo : b, b1 = lb == top ? nodes_[b].hi : b;
  NodeId lo = add_mod(a0, b0);
  NodeId hi = add_mod(a1, b1);
  NodeId result = make_node(top, lo, hi);
  add_cache_.emplace(key, result);
  return result;
}

NodeId DdStore::negate_terminals(NodeId a) {
  if (is_terminal(a)) return terminal((modulus_ - a) % modulus_);
  if (auto it = negate_cache_.find(a); it != negate_cache_.end()) return it->second;
  Node n = nodes_[a];
  NodeId lo = negate_terminals(n.lo);
  NodeId hi = negate_terminals(n.hi);
  NodeId result = make_node(n.level, lo, hi);
  negate_cache_.emplace(a, result);
  return result;
}

NodeId DdStore::restrict_rec(NodeId a, uint32_t lvl, bool value, std::unordered_map<NodeId, NodeId>& memo) {
  const Node n = nodes_[a];
  if (n.level > lvl) return a;
  if (n.level == lvl) return value ? n.hi : n.lo;
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  NodeId lo = restrict_rec(n.lo, lvl, value, memo);
  NodeId hi = restrict_rec(n.hi, lvl, value, memo);
  NodeId result = make_node(n.level, lo, hi);
  memo.emplace(a, result);
  return result;
}

NodeId DdStore::restrict(NodeId a, Var v, bool value) {
  if (!has_var(v)) return a;
  std::unordered_map<NodeId, NodeId> memo;
  return restrict_rec(a, level_of_var_[v], value, memo);
}

uint32_t DdStore::evaluate(NodeId a, const std::vector<uint8_t>& assignment) const {
  while (!is_terminal(a)) {
    Var v = var(a);
    a = (v < assignment.size() && assignment[v]) ? nodes_[a].hi : nodes_[a].lo;
  }
  return a;
}

std::vector<NodeId> DdStore::reachable(std::span<const NodeId> roots) const {
  std::vector<uint8_t> seen(nodes_.size(), 0);
  std::vector<NodeId> out, stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (seen[n]) continue;
    seen[n] = 1;
    out.push_back(n);
    if (!is_terminal(n)) {
      stack.push_back(nodes_[n].lo);
      stack.push_back(nodes_[n].hi);
    }
  }
  return out;
}

size_t DdStore::node_count(NodeId root) const { return reachable(std::span<const NodeId>(&root, 1)).size(); }

size_t DdStore::node_count(std::span<const NodeId> roots) const { return reachable(roots).size(); }

CountVector DdStore::count_terminals(NodeId a, std::span<const Var> over) const {
  std::vector<Var> vars(over.begin(), over.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  const uint32_t num_levels = static_cast<uint32_t>(var_at_level_.size());
  std::vector<uint8_t> counted(num_levels, 0);
  unsigned long free_vars = 0;
  for (Var v : vars) {
    if (has_var(v)) {
      counted[level_of_var_[v]] = 1;
    } else {
      ++free_vars;
    }
  }
  // rank[l] = number of counted levels strictly above level l.
  std::vector<uint32_t> rank(num_levels + 1, 0);
  for (uint32_t l = 0; l < num_levels; ++l) rank[l + 1] = rank[l] + counted[l];
  auto rank_of = [&](NodeId n) { return is_terminal(n) ? rank[num_levels] : rank[nodes_[n].level]; };

  std::vector<NodeId> nodes = reachable(std::span<const NodeId>(&a, 1));
  for (NodeId n : nodes) {
    if (!is_terminal(n) && !counted[nodes_[n].level]) {
      throw std::invalid_argument("count_terminals: x" + std::to_string(var(n) + 1) + " is reachable but not counted");
    }
  }
  std::sort(nodes.begin(), nodes.end(), [&](NodeId x, NodeId y) { return nodes_[x].level > nodes_[y].level; });

  std::unordered_map<NodeId, size_t> slot;
  slot.reserve(nodes.size());
  std::vector<std::vector<mpz_class>> table(nodes.size());
  mpz_class scratch;
  for (size_t i = 0; i < nodes.size(); ++i) {
    NodeId n = nodes[i];
    slot.emplace(n, i);
    auto& c = table[i];
    c.assign(modulus_, 0);
    if (is_terminal(n)) {
      c[n] = 1;
      continue;
    }
    const Node& node = nodes_[n];
    for (NodeId child : {node.lo, node.hi}) {
      const auto& cc = table[slot.at(child)];
      unsigned long gap = rank_of(child) - rank_of(n) - 1;
      for (uint32_t j = 0; j < modulus_; ++j) {
        if (cc[j] == 0) continue;
        mpz_mul_2exp(scratch.get_mpz_t(), cc[j].get_mpz_t(), gap);
        c[j] += scratch;
      }
    }
  }
  CountVector out;
  out.counts = table[slot.at(a)];
  unsigned long lead = rank_of(a) + free_vars;
  for (auto& c : out.counts) mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), lead);
  return out;
}

void DdStore::protect(NodeId n) { ++protected_[n]; }

void DdStore::unprotect(NodeId n) {
  auto it = protected_.find(n);
  if (it == protected_.end()) return;
  if (--it->second == 0) protected_.erase(it);
}

void DdStore::clear_caches() {
  add_cache_.clear();
  negate_cache_.clear();
}

void DdStore::collect_garbage(std::span<const NodeId> extra_roots) {
  std::vector<NodeId> roots(extra_roots.begin(), extra_roots.end());
  for (const auto& [n, count] : protected_) roots.push_back(n);
  std::vector<NodeId> keep = reachable(roots);
  std::vector<uint8_t> marked(nodes_.size(), 0);
  for (NodeId n : keep) marked[n] = 1;
  for (NodeId n = modulus_; n < nodes_.size(); ++n) {
    if (marked[n] || nodes_[n].level == kFreeLevel) continue;
    unique_.erase(nodes_[n]);
    nodes_[n].level = kFreeLevel;
    free_.push_back(n);
    --live_;
  }
  clear_caches();
}

void DdStore::maybe_collect(std::span<const NodeId> extra_roots) {
  if (live_ <= gc_watermark_) return;
  collect_garbage(extra_roots);
  // Everything may be live; grow instead of collecting on every call.
  if (live_ > gc_watermark_ / 2) gc_watermark_ *= 2;
}

void DdStore::swap_levels(uint32_t i) {
  const uint32_t j = i + 1;
  if (j >= var_at_level_.size()) throw std::invalid_argument("swap_levels: no level below");
  clear_caches();
  std::vector<NodeId> upper, lower;
  for (NodeId n = modulus_; n < nodes_.size(); ++n) {
    if (nodes_[n].level == i) upper.push_back(n);
    if (nodes_[n].level == j) lower.push_back(n);
  }
  for (NodeId n : upper) unique_.erase(nodes_[n]);
  for (NodeId n : lower) unique_.erase(nodes_[n]);
  std::unordered_set<NodeId> lower_set(lower.begin(), lower.end());
  // Lower nodes only reference levels >= i+2: they move up unchanged.
  for (NodeId n : lower) {
    nodes_[n].level = i;
    unique_.emplace(nodes_[n], n);
  }
  std::vector<NodeId> dependent;
  for (NodeId n : upper) {
    if (!lower_set.count(nodes_[n].lo) && !lower_set.count(nodes_[n].hi)) {
      nodes_[n].level = j;
      unique_.emplace(nodes_[n], n);
    } else {
      dependent.push_back(n);
    }
  }
  for (NodeId n : dependent) {
    NodeId lo = nodes_[n].lo, hi = nodes_[n].hi;
    bool lo_dep = lower_set.count(lo) > 0, hi_dep = lower_set.count(hi) > 0;
    NodeId f00 = lo_dep ? nodes_[lo].lo : lo, f01 = lo_dep ? nodes_[lo].hi : lo;
    NodeId f10 = hi_dep ? nodes_[hi].lo : hi, f11 = hi_dep ? nodes_[hi].hi : hi;
    NodeId new_lo = make_node(j, f00, f10);
    NodeId new_hi = make_node(j, f01, f11);
    nodes_[n] = {i, new_lo, new_hi};
    unique_.emplace(nodes_[n], n);
  }
  std::swap(var_at_level_[i], var_at_level_[j]);
  level_of_var_[var_at_level_[i]] = i;
  level_of_var_[var_at_level_[j]] = j;
}

size_t DdStore::sift(std::span<const NodeId> roots, double max_growth) {
  collect_garbage(roots);
  size_t size = node_count(roots);
  const uint32_t num_levels = static_cast<uint32_t>(var_at_level_.size());
  if (num_levels < 2) return size;

  std::vector<size_t> population(num_levels, 0);
  for (NodeId n : reachable(roots)) {
    if (!is_terminal(n)) ++population[nodes_[n].level];
  }
  std::vector<Var> schedule(var_at_level_);
  std::vector<size_t> pop_of_var(level_of_var_.size(), 0);
  for (uint32_t l = 0; l < num_levels; ++l) pop_of_var[var_at_level_[l]] = population[l];
  std::stable_sort(schedule.begin(), schedule.end(), [&](Var a, Var b) { return pop_of_var[a] > pop_of_var[b]; });

  for (Var v : schedule) {
    uint32_t pos = level_of_var_[v];
    size_t best = size;
    uint32_t best_pos = pos;
    auto observe = [&] {
      size_t s = node_count(roots);
      if (s < best) {
        best = s;
        best_pos = pos;
      }
      return static_cast<double>(s) <= max_growth * static_cast<double>(best);
    };
    while (pos + 1 < num_levels) {
      swap_levels(pos);
      ++pos;
      if (!observe()) break;
    }
    while (pos > 0) {
      swap_levels(pos - 1);
      --pos;
      if (!observe()) break;
    }
    while (pos < best_pos) {
      swap_levels(pos);
      ++pos;
    }
    while (pos > best_pos) {
      swap_levels(pos - 1);
      --pos;
    }
    collect_garbage(roots);
    size = best;
  }
  return size;
}

std::string DdStore::to_dot(NodeId root) const {
  std::ostringstream s;
  s << "digraph mtbdd {\n";
  for (NodeId n : reachable(std::span<const NodeId>(&root, 1))) {
    if (is_terminal(n)) {
      s << "  n" << n << " [shape=box,label=\"" << n << "\"];\n";
      continue;
    }
    s << "  n" << n << " [shape=circle,label=\"x" << var(n) + 1 << "\"];\n";
    s << "  n" << n << " -> n" << nodes_[n].lo << " [style=dashed];\n";
    s << "  n" << n << " -> n" << nodes_[n].hi << " [style=solid];\n";
  }
  s << "}\n";
  return s.str();
}

void DdStore::check(NodeId root) const {
  for (NodeId n : reachable(std::span<const NodeId>(&root, 1))) {
    if (is_terminal(n)) continue;
    const Node& node = nodes_[n];
    if (node.level == kFreeLevel) throw std::logic_error("reachable node was freed");
    if (node.lo == node.hi) throw std::logic_error("node with identical children");
    if (node.level >= nodes_[node.lo].level || node.level >= nodes_[node.hi].level) {
      throw std::logic_error("children not strictly below parent");
    }
    auto it = unique_.find(node);
    if (it == unique_.end() || it->second != n) throw std::logic_error("node missing from unique table");
  }
}

namespace {

std::vector<Var> sorted_live(const SopTensor& t, auto key) {
  std::vector<Var> vars = t.live_vars();
  std::stable_sort(vars.begin(), vars.end(), [&](Var a, Var b) { return key(a) < key(b); });
  return vars;
}

}  // namespace

std::vector<Var> order_qubit(const SopTensor& tensor) {
  return sorted_live(tensor, [&](Var v) {
    const VarInfo& info = tensor.var_info[v];
    return std::make_tuple(info.qubit, info.clone ? info.clone_of : v, info.clone);
  });
}

std::vector<Var> order_gate(const SopTensor& tensor) {
  return sorted_live(tensor, [&](Var v) {
    const VarInfo& info = tensor.var_info[v];
    return std::make_tuple(info.first_gate, info.moment, info.clone ? info.clone_of : v, info.clone);
  });
}

std::vector<Var> order_explicit(const SopTensor& tensor, std::vector<Var> order) {
  std::vector<Var> given = order;
  std::sort(given.begin(), given.end());
  if (std::adjacent_find(given.begin(), given.end()) != given.end()) throw InputError("explicit order repeats a variable");
  if (given != tensor.live_vars()) throw InputError("explicit order is not a permutation of the tensor's variables");
  return order;
}

}  // namespace feyndd
