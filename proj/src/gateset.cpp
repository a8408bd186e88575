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

#include "feyndd/gateset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "builtin_gatesets.hpp"
#include "feyndd/errors.hpp"

namespace feyndd {

namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw InputError("gate set: " + where + ": " + what);
}

int64_t integer_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) schema_error(where, std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) schema_error(where, std::string("field '") + key + "' must be an integer");
  return v.get<int64_t>();
}

Slot parse_slot(const std::string& text, const std::string& where) {
  auto parse_index = [&](size_t prefix) {
    std::string digits = text.substr(prefix);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      schema_error(where, "bad slot '" + text + "'");
    }
    return std::stoi(digits);
  };
  if (text.rfind("in", 0) == 0) return {Slot::Kind::kInput, parse_index(2)};
  if (text.rfind("out", 0) == 0) return {Slot::Kind::kOutput, parse_index(3)};
  if (text.rfind("y", 0) == 0) return {Slot::Kind::kInternal, parse_index(1)};
  schema_error(where, "bad slot '" + text + "'");
}

GateSpec parse_gate(const json& g) {
  if (!g.is_object()) schema_error("gates", "each gate must be an object");
  if (!g.contains("name") || !g.at("name").is_string()) schema_error("gates", "gate without a name");
  GateSpec spec;
  spec.name = lower(g.at("name").get<std::string>());
  const std::string where = "gate '" + spec.name + "'";
  if (g.contains("aliases")) {
    for (const auto& a : g.at("aliases")) {
      if (!a.is_string()) schema_error(where, "aliases must be strings");
      spec.aliases.push_back(lower(a.get<std::string>()));
    }
  }
  spec.arity = static_cast<int>(integer_field(g, "arity", where));
  if (spec.arity < 1) schema_error(where, "arity must be positive");

  if (g.contains("expansion")) {
    spec.complex = true;
    for (const auto& step : g.at("expansion")) {
      if (!step.is_array() || step.size() != 2 || !step[0].is_string() || !step[1].is_array()) {
        schema_error(where, "expansion steps are [name, [positions...]]");
      }
      SubGate sub{lower(step[0].get<std::string>()), {}};
      for (const auto& q : step[1]) {
        if (!q.is_number_integer()) schema_error(where, "expansion positions must be integers");
        int p = q.get<int>();
        if (p < 0 || p >= spec.arity) schema_error(where, "expansion position out of range");
        if (std::find(sub.qubits.begin(), sub.qubits.end(), p) != sub.qubits.end()) {
          schema_error(where, "repeated position in expansion step");
        }
        sub.qubits.push_back(p);
      }
      spec.expansion.push_back(std::move(sub));
    }
    if (spec.expansion.empty()) schema_error(where, "empty expansion");
    return spec;
  }

  int64_t modulus = integer_field(g, "modulus", where);
  if (modulus < 1 || modulus > 65536) schema_error(where, "modulus must be in [1, 65536]");
  spec.modulus = static_cast<uint32_t>(modulus);
  spec.sqrt2_exponent = static_cast<int>(integer_field(g, "sqrt2_exponent", where));
  if (spec.sqrt2_exponent < 0) schema_error(where, "sqrt2_exponent must be non-negative");
  spec.internal_count = g.contains("internal") ? static_cast<int>(integer_field(g, "internal", where)) : 0;
  if (spec.internal_count < 0) schema_error(where, "internal must be non-negative");

  if (!g.contains("outputs") || !g.at("outputs").is_array()) schema_error(where, "missing 'outputs'");
  const json& outs = g.at("outputs");
  if (static_cast<int>(outs.size()) != spec.arity) schema_error(where, "'outputs' length must equal arity");
  std::vector<bool> used(spec.arity, false);
  for (const auto& o : outs) {
    if (!o.is_string()) schema_error(where, "outputs entries are \"fresh\" or \"inN\"");
    std::string s = lower(o.get<std::string>());
    if (s == "fresh") {
      spec.output_wiring.push_back(kFreshOutput);
      continue;
    }
    Slot slot = parse_slot(s, where);
    if (slot.kind != Slot::Kind::kInput || slot.index >= spec.arity) {
      schema_error(where, "outputs may only reuse input slots");
    }
    if (used[slot.index]) schema_error(where, "input slot reused by two outputs");
    used[slot.index] = true;
    spec.output_wiring.push_back(slot.index);
  }

  if (!g.contains("terms") || !g.at("terms").is_array()) schema_error(where, "missing 'terms'");
  for (const auto& t : g.at("terms")) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_array()) {
      schema_error(where, "terms are [coefficient, [slots...]]");
    }
    if (!t[0].is_number_integer()) schema_error(where, "coefficient not an integer");
    int64_t c = t[0].get<int64_t>() % modulus;
    if (c < 0) c += modulus;
    GateTerm term{static_cast<uint32_t>(c), {}};
    for (const auto& s : t[1]) {
      if (!s.is_string()) schema_error(where, "slots are strings");
      Slot slot = parse_slot(lower(s.get<std::string>()), where);
      int bound = slot.kind == Slot::Kind::kInternal ? spec.internal_count : spec.arity;
      if (slot.index >= bound) schema_error(where, "slot index out of range");
      if (std::find(term.slots.begin(), term.slots.end(), slot) != term.slots.end()) {
        schema_error(where, "duplicate slot in a term (terms must be multilinear)");
      }
      term.slots.push_back(slot);
    }
    if (term.coefficient != 0) spec.terms.push_back(std::move(term));
  }
  return spec;
}

/// Legs resolved to variables: inputs are 0..a-1, fresh outputs a+k, internals
/// 2a+i. Canonical terms are sorted variable lists with merged coefficients.
using CanonicalTerms = std::map<std::vector<int>, uint32_t>;

int leg_variable(const GateSpec& g, Slot s) {
  switch (s.kind) {
    case Slot::Kind::kInput:
      return s.index;
    case Slot::Kind::kOutput:
      return g.output_wiring[s.index] == kFreshOutput ? g.arity + s.index : g.output_wiring[s.index];
    case Slot::Kind::kInternal:
      return 2 * g.arity + s.index;
  }
  return -1;
}

CanonicalTerms canonical_terms(const GateSpec& g) {
  CanonicalTerms out;
  for (const auto& t : g.terms) {
    std::vector<int> vars;
    for (const auto& s : t.slots) vars.push_back(leg_variable(g, s));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    uint32_t& c = out[vars];
    c = (c + t.coefficient) % g.modulus;
    if (c == 0) out.erase(vars);
  }
  return out;
}

bool same_simple(const GateSpec& a, const GateSpec& b) {
  return !a.complex && !b.complex && a.arity == b.arity && a.modulus == b.modulus &&
         a.sqrt2_exponent == b.sqrt2_exponent && a.output_wiring == b.output_wiring &&
         a.internal_count == b.internal_count && canonical_terms(a) == canonical_terms(b);
}

// Conjugate transpose of a power-form gate: legs swap roles and exponents
// negate. Old input j becomes new output j; old output k becomes new input k.
GateSpec simple_adjoint(const GateSpec& g) {
  GateSpec adj;
  adj.name = g.name + "_dg";
  adj.arity = g.arity;
  adj.modulus = g.modulus;
  adj.sqrt2_exponent = g.sqrt2_exponent;
  adj.internal_count = g.internal_count;
  adj.output_wiring.assign(g.arity, kFreshOutput);
  for (int p = 0; p < g.arity; ++p) {
    if (g.output_wiring[p] != kFreshOutput) adj.output_wiring[g.output_wiring[p]] = p;
  }
  for (const auto& t : g.terms) {
    GateTerm nt{(g.modulus - t.coefficient) % g.modulus, {}};
    for (const auto& s : t.slots) {
      switch (s.kind) {
        case Slot::Kind::kInput:
          nt.slots.push_back({Slot::Kind::kOutput, s.index});
          break;
        case Slot::Kind::kOutput:
          nt.slots.push_back({Slot::Kind::kInput, s.index});
          break;
        case Slot::Kind::kInternal:
          nt.slots.push_back(s);
          break;
      }
    }
    adj.terms.push_back(std::move(nt));
  }
  return adj;
}

}  // namespace

std::vector<int> GateSpec::diagonal_qubits() const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(output_wiring.size()); ++k) {
    if (output_wiring[k] == k) out.push_back(k);
  }
  return out;
}

std::vector<int> GateSpec::fresh_output_qubits() const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(output_wiring.size()); ++k) {
    if (output_wiring[k] == kFreshOutput) out.push_back(k);
  }
  return out;
}

GateSet GateSet::load(std::string_view config_text) {
  json root;
  try {
    root = json::parse(config_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("gate set: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("top level", "expected an object");
  if (!root.contains("id") || !root.at("id").is_string()) schema_error("top level", "missing string 'id'");
  if (!root.contains("gates") || !root.at("gates").is_array()) schema_error("top level", "missing array 'gates'");

  GateSet set;
  set.id_ = root.at("id").get<std::string>();
  std::vector<GateSpec> specs;
  for (const auto& g : root.at("gates")) specs.push_back(parse_gate(g));

  uint32_t common = 1;
  for (const auto& s : specs) {
    if (!s.complex) common = std::lcm(common, s.modulus);
  }
  if (common > 65536) schema_error("top level", "common modulus exceeds 65536");
  set.modulus_ = common;
  for (auto& s : specs) {
    if (s.complex) continue;
    uint32_t scale = common / s.modulus;
    for (auto& t : s.terms) t.coefficient *= scale;
    s.modulus = common;
  }
  for (auto& s : specs) set.add(std::move(s));

  for (const auto& g : set.gates_) {
    for (const auto& sub : g.expansion) {
      const GateSpec* target = set.find(sub.name);
      if (target == nullptr) schema_error("gate '" + g.name + "'", "expansion references unknown gate '" + sub.name + "'");
      if (target->complex) schema_error("gate '" + g.name + "'", "expansion references complex gate '" + sub.name + "'");
      if (target->arity != static_cast<int>(sub.qubits.size())) {
        schema_error("gate '" + g.name + "'", "arity mismatch for '" + sub.name + "' in expansion");
      }
    }
  }
  for (auto& g : set.gates_) {
    for (auto& sub : g.expansion) sub.name = set.canonical_name(sub.name);
  }
  set.derive_adjoints();
  return set;
}

GateSet GateSet::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open gate set file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

GateSet GateSet::builtin(std::string_view id) {
  std::string_view text = detail::builtin_gateset_text(lower(id));
  if (text.empty()) throw InputError("unknown built-in gate set '" + std::string(id) + "'");
  return load(text);
}

GateSet GateSet::resolve(const std::string& id_or_path) {
  if (!detail::builtin_gateset_text(lower(id_or_path)).empty()) return builtin(id_or_path);
  return load_file(id_or_path);
}

void GateSet::add(GateSpec spec) {
  size_t index = gates_.size();
  auto claim = [&](const std::string& name) {
    if (!by_name_.emplace(name, index).second) schema_error("gate '" + spec.name + "'", "duplicate name '" + name + "'");
  };
  claim(spec.name);
  for (const auto& a : spec.aliases) claim(a);
  gates_.push_back(std::move(spec));
}

void GateSet::derive_adjoints() {
  const size_t declared = gates_.size();
  adjoint_.assign(declared, SIZE_MAX);
  for (size_t i = 0; i < declared; ++i) {
    if (gates_[i].complex || adjoint_[i] != SIZE_MAX) continue;
    GateSpec adj = simple_adjoint(gates_[i]);
    size_t match = SIZE_MAX;
    for (size_t j = 0; j < gates_.size(); ++j) {
      if (same_simple(adj, gates_[j])) {
        match = j;
        break;
      }
    }
    if (match == SIZE_MAX) {
      match = gates_.size();
      add(std::move(adj));
      adjoint_.push_back(i);
    }
    adjoint_[i] = match;
    if (match < adjoint_.size()) adjoint_[match] = i;
  }
  for (size_t i = 0; i < declared; ++i) {
    if (!gates_[i].complex) continue;
    std::vector<SubGate> reversed;
    for (auto it = gates_[i].expansion.rbegin(); it != gates_[i].expansion.rend(); ++it) {
      reversed.push_back({adjoint_name(it->name), it->qubits});
    }
    size_t match = SIZE_MAX;
    for (size_t j = 0; j < gates_.size(); ++j) {
      if (gates_[j].complex && gates_[j].arity == gates_[i].arity && gates_[j].expansion == reversed) {
        match = j;
        break;
      }
    }
    if (match == SIZE_MAX) {
      GateSpec adj;
      adj.name = gates_[i].name + "_dg";
      adj.arity = gates_[i].arity;
      adj.complex = true;
      adj.expansion = std::move(reversed);
      match = gates_.size();
      add(std::move(adj));
      adjoint_.push_back(i);
    }
    adjoint_[i] = match;
    adjoint_[match] = i;
  }
}

const GateSpec* GateSet::find(std::string_view name) const {
  auto it = by_name_.find(lower(name));
  return it == by_name_.end() ? nullptr : &gates_[it->second];
}

const GateSpec& GateSet::at(std::string_view name) const {
  const GateSpec* g = find(name);
  if (g == nullptr) throw InputError("gate '" + std::string(name) + "' is not in gate set '" + id_ + "'");
  return *g;
}

const std::string& GateSet::canonical_name(std::string_view name) const { return at(name).name; }

const std::string& GateSet::adjoint_name(std::string_view name) const {
  auto it = by_name_.find(lower(name));
  if (it == by_name_.end()) throw InputError("gate '" + std::string(name) + "' is not in gate set '" + id_ + "'");
  return gates_[adjoint_.at(it->second)].name;
}

std::vector<std::string> GateSet::gate_names() const {
  std::vector<std::string> out;
  for (const auto& g : gates_) out.push_back(g.name);
  return out;
}

std::vector<std::string> GateSet::simple_gate_names() const {
  std::vector<std::string> out;
  for (const auto& g : gates_) {
    if (!g.complex) out.push_back(g.name);
  }
  return out;
}

}  // namespace feyndd
