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
#include <string>
#include <string_view>
#include <vector>

namespace feyndd {

/// A leg of a gate's power form: input wire j, output wire k, or the gate's
/// i-th internal (summed) variable.
struct Slot {
  enum class Kind : uint8_t { kInput, kOutput, kInternal };
  Kind kind;
  int index;

  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// coefficient * prod(slots) in the exponent of omega.
struct GateTerm {
  uint32_t coefficient;
  std::vector<Slot> slots;
};

/// One simple-gate application inside a complex gate. `qubits` are positions
/// within the enclosing gate, not circuit qubits.
struct SubGate {
  std::string name;
  std::vector<int> qubits;

  friend bool operator==(const SubGate&, const SubGate&) = default;
};

/// Output wiring value meaning "this output leg gets a fresh variable".
inline constexpr int kFreshOutput = -1;

/// Sum-of-powers template of one gate. A simple gate has matrix entries
/// 2^(-s/2) * sum_y omega^(poly(in, out, y)); a complex gate is a sequence of
/// simple gates.
struct GateSpec {
  std::string name;
  std::vector<std::string> aliases;
  int arity = 0;
  bool complex = false;

  // Simple gates.
  uint32_t modulus = 0;
  int sqrt2_exponent = 0;
  /// output_wiring[k] is the input position whose variable output k reuses,
  /// or kFreshOutput. Diagonal gates map k -> k; iSWAP maps 0 -> 1, 1 -> 0.
  std::vector<int> output_wiring;
  int internal_count = 0;
  std::vector<GateTerm> terms;

  // Complex gates.
  std::vector<SubGate> expansion;

  std::vector<int> diagonal_qubits() const;
  std::vector<int> fresh_output_qubits() const;
};

/// A validated gate set with every simple gate rescaled to the common modulus
/// (least common multiple of the declared moduli). Also carries the adjoint
/// of every gate; gates whose adjoint is not already a member get a
/// synthesized `<name>_dg` entry.
class GateSet {
 public:
  /// Parses the JSON gate-set schema. Throws InputError on schema violations,
  /// non-integer coefficients, duplicate slots, or expansions that reference
  /// unknown or complex gates.
  static GateSet load(std::string_view config_text);
  static GateSet load_file(const std::string& path);
  /// Built-in sets "z", "t", "g" (the shipped config files, embedded at build
  /// time).
  static GateSet builtin(std::string_view id);
  /// A built-in id or a file path.
  static GateSet resolve(const std::string& id_or_path);

  const std::string& id() const { return id_; }
  uint32_t modulus() const { return modulus_; }

  /// Looks up by canonical name or alias (case-insensitive). nullptr when absent.
  const GateSpec* find(std::string_view name) const;
  /// As find, but throws InputError.
  const GateSpec& at(std::string_view name) const;
  const std::string& canonical_name(std::string_view name) const;
  const std::string& adjoint_name(std::string_view name) const;
  std::vector<std::string> gate_names() const;
  std::vector<std::string> simple_gate_names() const;

 private:
  void add(GateSpec spec);
  void derive_adjoints();

  std::string id_;
  uint32_t modulus_ = 1;
  std::vector<GateSpec> gates_;
  std::map<std::string, size_t, std::less<>> by_name_;
  std::vector<size_t> adjoint_;
};

}  // namespace feyndd
