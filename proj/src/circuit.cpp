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

#include "feyndd/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "feyndd/errors.hpp"
#include "feyndd/random.hpp"

namespace feyndd {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

[[noreturn]] void line_error(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

struct RawLine {
  int number;
  std::vector<std::string_view> words;
};

std::vector<RawLine> content_lines(std::string_view text) {
  std::vector<RawLine> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (!words.empty()) out.push_back({number, std::move(words)});
    pos = end + 1;
  }
  return out;
}

Gate parse_gate_words(const RawLine& line, size_t first, const GateSet& gateset) {
  Gate g;
  g.name = std::string(line.words[first]);
  const GateSpec* spec = gateset.find(g.name);
  if (spec == nullptr) line_error(line.number, "unknown gate '" + g.name + "'");
  g.name = spec->name;
  for (size_t i = first + 1; i < line.words.size(); ++i) {
    auto q = to_int(line.words[i]);
    if (!q || *q < 0) line_error(line.number, "bad qubit index '" + std::string(line.words[i]) + "'");
    g.qubits.push_back(*q);
  }
  if (static_cast<int>(g.qubits.size()) != spec->arity) {
    line_error(line.number, "gate '" + g.name + "' takes " + std::to_string(spec->arity) + " qubits");
  }
  std::set<int> distinct(g.qubits.begin(), g.qubits.end());
  if (distinct.size() != g.qubits.size()) line_error(line.number, "repeated qubit in gate '" + g.name + "'");
  return g;
}

int max_qubit(const std::vector<Gate>& gates) {
  int m = -1;
  for (const auto& g : gates) {
    for (int q : g.qubits) m = std::max(m, q);
  }
  return m;
}

}  // namespace

CircuitFormat parse_format(std::string_view name) {
  if (name == "simple") return CircuitFormat::kSimple;
  if (name == "grcs") return CircuitFormat::kGrcs;
  throw InputError("unknown circuit format '" + std::string(name) + "'");
}

void validate(Circuit& circuit, const GateSet& gateset) {
  if (circuit.num_qubits < 1) throw InputError("circuit must have at least one qubit");
  for (auto& g : circuit.gates) {
    const GateSpec& spec = gateset.at(g.name);
    g.name = spec.name;
    if (static_cast<int>(g.qubits.size()) != spec.arity) {
      throw InputError("gate '" + g.name + "' takes " + std::to_string(spec.arity) + " qubits");
    }
    std::set<int> distinct;
    for (int q : g.qubits) {
      if (q < 0 || q >= circuit.num_qubits) {
        throw InputError("qubit " + std::to_string(q) + " out of range for gate '" + g.name + "'");
      }
      if (!distinct.insert(q).second) throw InputError("repeated qubit in gate '" + g.name + "'");
    }
  }
  circuit.gateset_id = gateset.id();
}

Circuit parse_circuit(std::string_view text, CircuitFormat format, const GateSet& gateset,
                      std::optional<int> num_qubits) {
  auto lines = content_lines(text);
  Circuit c;
  c.gateset_id = gateset.id();
  std::optional<int> header;
  std::vector<std::pair<Gate, int>> parsed;
  size_t start = 0;
  if (format == CircuitFormat::kSimple) {
    if (!lines.empty() && lines[0].words[0] == "qubits") {
      if (lines[0].words.size() != 2) line_error(lines[0].number, "expected 'qubits N'");
      header = to_int(lines[0].words[1]);
      if (!header || *header < 1) line_error(lines[0].number, "bad qubit count");
      start = 1;
    }
    for (size_t i = start; i < lines.size(); ++i) parsed.push_back({parse_gate_words(lines[i], 0, gateset), lines[i].number});
  } else {
    if (!lines.empty() && lines[0].words.size() == 1) {
      header = to_int(lines[0].words[0]);
      if (!header || *header < 1) line_error(lines[0].number, "bad qubit count");
      start = 1;
    }
    for (size_t i = start; i < lines.size(); ++i) {
      const RawLine& line = lines[i];
      if (line.words.size() < 2) line_error(line.number, "expected 'moment gate qubits...'");
      auto moment = to_int(line.words[0]);
      if (!moment || *moment < 0) line_error(line.number, "bad moment '" + std::string(line.words[0]) + "'");
      Gate g = parse_gate_words(line, 1, gateset);
      g.moment = *moment;
      parsed.push_back({std::move(g), line.number});
    }
    std::stable_sort(parsed.begin(), parsed.end(),
                     [](const auto& a, const auto& b) { return a.first.moment < b.first.moment; });
  }
  for (auto& [g, number] : parsed) c.gates.push_back(g);
  if (num_qubits) header = num_qubits;
  c.num_qubits = header ? *header : max_qubit(c.gates) + 1;
  if (c.num_qubits < 1) throw InputError("cannot infer the qubit count of an empty circuit");
  for (const auto& [g, number] : parsed) {
    for (int q : g.qubits) {
      if (q >= c.num_qubits) {
        line_error(number, "qubit " + std::to_string(q) + " out of range (" + std::to_string(c.num_qubits) +
                               " qubits) in gate '" + g.name + "'");
      }
    }
  }
  return c;
}

Circuit read_circuit_file(const std::string& path, CircuitFormat format, const GateSet& gateset) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open circuit file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_circuit(buf.str(), format, gateset);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string serialize(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.num_qubits << "\n";
  for (const auto& g : circuit.gates) {
    out << g.name;
    for (int q : g.qubits) out << ' ' << q;
    out << '\n';
  }
  return out.str();
}

Circuit generate_ghz(int n) {
  if (n < 1) throw InputError("GHZ needs n >= 1");
  Circuit c{n, {}, "z"};
  c.gates.push_back({"h", {0}});
  for (int q = 0; q + 1 < n; ++q) c.gates.push_back({"cx", {q, q + 1}});
  return c;
}

Circuit generate_bv(int n) {
  if (n < 1) throw InputError("BV needs n >= 1");
  Circuit c{n, {}, "z"};
  for (const char* name : {"h", "z", "h"}) {
    for (int q = 0; q < n; ++q) c.gates.push_back({name, {q}});
  }
  return c;
}

LinearNetwork generate_linear_network(int n, int k, uint64_t seed, LinearNetworkOptions options) {
  if (k < 3) throw InputError("linear network needs k >= 3");
  if (k > n) throw InputError("linear network needs k <= n");
  SplitMix64 alpha_rng = SplitMix64(seed).split(1);
  SplitMix64 window_rng = SplitMix64(seed).split(2);

  LinearNetwork net;
  net.alpha.resize(n);
  for (int i = 0; i < n; ++i) net.alpha[i] = options.zero_alpha ? 0 : (alpha_rng.coin() ? 1 : 0);

  // Coefficients mod 2, keyed by sorted index lists.
  std::map<std::vector<int>, int> f;
  auto toggle = [&](std::vector<int> m) {
    if ((f[m] ^= 1) == 0) f.erase(m);
  };
  // A(x) * sum_j x_j = sum_i alpha_i x_i + sum_{i<j} (alpha_i + alpha_j) x_i x_j.
  for (int i = 0; i < n; ++i) {
    if (net.alpha[i]) toggle({i});
    for (int j = i + 1; j < n; ++j) {
      if (net.alpha[i] ^ net.alpha[j]) toggle({i, j});
    }
  }
  std::vector<std::vector<int>> triples;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      for (int d = b + 1; d < k; ++d) triples.push_back({a, b, d});
    }
  }
  for (int start = 0; start + k <= n; ++start) {
    const auto& t = triples[window_rng.below(triples.size())];
    toggle({start + t[0], start + t[1], start + t[2]});
  }

  Circuit& c = net.circuit;
  c.num_qubits = n;
  c.gateset_id = "z";
  for (int q = 0; q < n; ++q) c.gates.push_back({"h", {q}});
  for (const auto& [m, coeff] : f) {
    static const char* names[] = {"", "z", "cz", "ccz"};
    c.gates.push_back({names[m.size()], m});
    net.polynomial.push_back(m);
  }
  for (int q = 0; q < n; ++q) c.gates.push_back({"h", {q}});
  return net;
}

Circuit adjoint(const Circuit& circuit, const GateSet& gateset) {
  Circuit out{circuit.num_qubits, {}, circuit.gateset_id};
  out.gates.reserve(circuit.gates.size());
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    out.gates.push_back({gateset.adjoint_name(it->name), it->qubits, it->moment});
  }
  return out;
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.num_qubits != b.num_qubits) throw InputError("cannot compose circuits with different qubit counts");
  Circuit out = a;
  out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
  return out;
}

}  // namespace feyndd
