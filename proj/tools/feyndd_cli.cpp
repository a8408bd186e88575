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

// feyndd command-line driver: amplitude, prob, sample, equiv, gen.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "feyndd/engine.hpp"
#include "feyndd/errors.hpp"
#include "feyndd/oracle.hpp"

using json = nlohmann::ordered_json;
using namespace feyndd;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Common {
  std::string circuit;
  std::string format = "simple";
  std::string gateset = "z";
  std::string order = "qubit";
  bool sift = false;
  bool no_simplify = false;
  bool oracle = false;
  bool quiet = false;
  uint64_t seed = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fnv1a(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::vector<Var> read_order_file(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Var> order;
  std::string tok;
  while (in >> tok) {
    std::string digits = (tok[0] == 'x' || tok[0] == 'X') ? tok.substr(1) : tok;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("order file: bad variable '" + tok + "'");
    }
    long v = std::stol(digits);
    if (v < 1) throw InputError("order file: variables are numbered from 1");
    order.push_back(static_cast<Var>(v - 1));
  }
  return order;
}

SimOptions make_options(const Common& c) {
  SimOptions o;
  if (c.order.rfind("file:", 0) == 0) {
    o.order = OrderStrategy::kExplicit;
    o.explicit_order = read_order_file(c.order.substr(5));
  } else {
    o.order = parse_order_strategy(c.order);
    if (o.order == OrderStrategy::kExplicit) throw InputError("use --order file:PATH for an explicit order");
  }
  o.sifting = c.sift;
  o.simplify = !c.no_simplify;
  o.seed = c.seed;
  if (const char* env = std::getenv("FEYNDD_GC_WATERMARK")) {
    char* end = nullptr;
    unsigned long long w = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || w == 0) throw InputError("FEYNDD_GC_WATERMARK must be a positive integer");
    o.gc_watermark = static_cast<size_t>(w);
  }
  return o;
}

struct Loaded {
  GateSet gateset;
  Circuit circuit;
  json input;
};

Loaded load(const std::string& path, const Common& c, const GateSet& gs) {
  std::string text = read_file(path);
  Circuit circuit = parse_circuit(text, parse_format(c.format), gs);
  return {gs, std::move(circuit), json{{"path", path}, {"fnv1a64", fnv1a(text)}}};
}

json value_json(const Cyclotomic& v) { return json::parse(to_json(v)); }

json stats_json(const DdStats& s) {
  return {{"dd_size", s.dd_size}, {"peak_nodes", s.peak_nodes}, {"num_vars", s.num_vars}, {"num_terms", s.num_terms}};
}

json base_report(const std::string& task, const Common& c, const GateSet& gs) {
  json r;
  r["task"] = task;
  r["gateset"] = {{"id", gs.id()}, {"modulus", gs.modulus()}};
  r["order"] = c.order;
  r["sifting"] = c.sift;
  r["simplify"] = !c.no_simplify;
  r["seed"] = c.seed;
  return r;
}

void emit(json report, bool quiet, double seconds) {
  if (quiet) {
    std::cout << report["result"].dump() << "\n";
    return;
  }
  report["wall_time_s"] = seconds;
  std::cout << report.dump(2) << "\n";
}

void add_common(CLI::App* cmd, Common& c, bool circuit_flag = true) {
  if (circuit_flag) cmd->add_option("--circuit", c.circuit, "Circuit file")->required();
  cmd->add_option("--format", c.format, "simple | grcs")->check(CLI::IsMember({"simple", "grcs"}));
  cmd->add_option("--gateset", c.gateset, "Built-in id (z, t, g) or JSON config path");
  cmd->add_option("--order", c.order, "qubit | gate | file:PATH");
  cmd->add_flag("--sift", c.sift, "Sift the variable order after building");
  cmd->add_flag("--no-simplify", c.no_simplify, "Skip the counting-identity pass");
  cmd->add_flag("--oracle", c.oracle, "Cross-check against the statevector oracle");
  cmd->add_flag("--quiet", c.quiet, "Print only the result");
  cmd->add_option("--seed", c.seed, "PRNG seed");
}

void oracle_guard(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("oracle disagrees: " + what);
}

int run_amplitude(const Common& c, std::string bits) {
  auto t0 = std::chrono::steady_clock::now();
  GateSet gs = GateSet::resolve(c.gateset);
  Loaded in = load(c.circuit, c, gs);
  if (bits.empty()) bits.assign(in.circuit.num_qubits, '0');
  SimOptions o = make_options(c);
  ExactResult r = amplitude(in.circuit, gs, bits, o);
  json report = base_report("amplitude", c, gs);
  report["inputs"] = {{"circuit", in.input}, {"bitstring", bits}};
  report["num_qubits"] = in.circuit.num_qubits;
  report["num_gates"] = in.circuit.gates.size();
  report.update(stats_json(r.stats));
  report["result"] = value_json(r.value);
  if (c.oracle) {
    auto sv = sv_amplitude(in.circuit, gs, bits);
    auto z = r.value.to_complex();
    double err = std::abs(std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag())) - sv);
    report["oracle"] = {{"re", sv.real()}, {"im", sv.imag()}, {"abs_error", err}};
    oracle_guard(err <= 1e-9, "amplitude");
  }
  emit(report, c.quiet, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

std::vector<int> parse_qubits(const std::string& list) {
  std::vector<int> out;
  std::stringstream s(list);
  std::string tok;
  while (std::getline(s, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("--qubits expects a comma-separated list of indices");
    }
    out.push_back(std::stoi(tok));
  }
  return out;
}

int run_prob(const Common& c, const std::string& qubit_list, const std::string& outcomes) {
  auto t0 = std::chrono::steady_clock::now();
  GateSet gs = GateSet::resolve(c.gateset);
  Loaded in = load(c.circuit, c, gs);
  std::vector<int> qubits = parse_qubits(qubit_list);
  ExactResult r = joint_probability(in.circuit, gs, qubits, outcomes, make_options(c));
  json report = base_report("prob", c, gs);
  report["inputs"] = {{"circuit", in.input}, {"qubits", qubits}, {"outcomes", outcomes}};
  report["num_qubits"] = in.circuit.num_qubits;
  report["num_gates"] = in.circuit.gates.size();
  report.update(stats_json(r.stats));
  json result = value_json(r.value);
  result["probability"] = probability(r.value);
  report["result"] = result;
  if (c.oracle) {
    StateVector sv = sv_state(in.circuit, gs);
    double p = 0;
    for (size_t i = 0; i < sv.amplitudes().size(); ++i) {
      bool match = true;
      for (size_t k = 0; k < qubits.size(); ++k) {
        if (((i >> qubits[k]) & 1) != static_cast<size_t>(outcomes[k] == '1')) match = false;
      }
      if (match) p += std::norm(sv.amplitudes()[i]);
    }
    double err = std::fabs(p - probability(r.value));
    report["oracle"] = {{"probability", p}, {"abs_error", err}};
    oracle_guard(err <= 1e-9, "probability");
  }
  emit(report, c.quiet, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

int run_sample(const Common& c, int shots) {
  auto t0 = std::chrono::steady_clock::now();
  GateSet gs = GateSet::resolve(c.gateset);
  Loaded in = load(c.circuit, c, gs);
  DdStats stats;
  std::vector<std::string> samples = sample(in.circuit, gs, shots, make_options(c), &stats);
  json report = base_report("sample", c, gs);
  report["inputs"] = {{"circuit", in.input}, {"shots", shots}};
  report["num_qubits"] = in.circuit.num_qubits;
  report["num_gates"] = in.circuit.gates.size();
  report.update(stats_json(stats));
  report["result"] = {{"samples", samples}};
  if (c.oracle) {
    StateVector sv = sv_state(in.circuit, gs);
    size_t bad = 0;
    for (const auto& s : samples) {
      if (std::norm(sv.amplitude(s)) < 1e-12) ++bad;
    }
    report["oracle"] = {{"zero_probability_samples", bad}};
    oracle_guard(bad == 0, "sample support");
  }
  emit(report, c.quiet, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

int run_equiv(const Common& c, const std::string& c0_path, std::string c1_path, const std::string& mutate) {
  auto t0 = std::chrono::steady_clock::now();
  GateSet gs = GateSet::resolve(c.gateset);
  if (c1_path.empty()) {
    if (mutate.empty()) throw InputError("--c1 is required unless --mutate is given");
    c1_path = c0_path;
  }
  Loaded a = load(c0_path, c, gs);
  Loaded b = load(c1_path, c, gs);
  json report = base_report("equiv", c, gs);
  report["inputs"] = {{"c0", a.input}, {"c1", b.input}, {"mutate", mutate.empty() ? json(nullptr) : json(mutate)}};
  report["num_qubits"] = a.circuit.num_qubits;
  Circuit other = b.circuit;
  if (mutate == "missing") {
    other = mutate_missing(b.circuit, c.seed);
  } else if (mutate == "reverse") {
    auto m = mutate_reverse(b.circuit, gs, c.seed);
    if (!m) {
      report["result"] = {{"verdict", nullptr}, {"note", "no CNOT"}};
      emit(report, c.quiet, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      return 0;
    }
    other = *m;
  }
  EquivVerdict v = check_equivalence(a.circuit, other, gs, make_options(c));
  report.update(stats_json(v.stats));
  report["result"] = {{"verdict", v.equivalent ? "equivalent" : "not_equivalent"},
                      {"equivalent", v.equivalent},
                      {"trace", value_json(v.trace_value)},
                      {"phase_index", v.phase_index ? json(*v.phase_index) : json(nullptr)}};
  if (c.oracle) {
    Circuit combined = compose(adjoint(a.circuit, gs), other);
    double mag = std::abs(sv_unitary_trace(combined, gs)) / std::ldexp(1.0, a.circuit.num_qubits);
    bool arbiter = std::fabs(mag - 1.0) < 1e-9;
    report["oracle"] = {{"abs_trace_normalized", mag}, {"equivalent", arbiter}};
    oracle_guard(arbiter == v.equivalent, "equivalence verdict");
  }
  emit(report, c.quiet, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

int run_gen(const std::string& family, int n, int k, uint64_t seed, bool zero_alpha, const std::string& out,
            bool quiet) {
  Circuit c;
  json report;
  report["task"] = "gen";
  report["family"] = family;
  report["n"] = n;
  if (n < 1) throw InputError("--n must be positive");
  if (family == "ghz") {
    c = generate_ghz(n);
  } else if (family == "bv") {
    c = generate_bv(n);
  } else {
    if (k < 3 || k > n) throw InputError("linear networks need 3 <= k <= n");
    LinearNetwork ln = generate_linear_network(n, k, seed, {zero_alpha});
    c = ln.circuit;
    report["k"] = k;
    report["seed"] = seed;
    report["zero_alpha"] = zero_alpha;
    report["num_terms"] = ln.polynomial.size();
  }
  std::string text = serialize(c);
  report["num_gates"] = c.gates.size();
  report["fnv1a64"] = fnv1a(text);
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
  report["out"] = out;
  if (!quiet) std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feyndd: exact circuit simulation through decision-diagram counting"};
  app.require_subcommand(1);

  Common common;
  std::string bits;
  auto* amp = app.add_subcommand("amplitude", "Exact amplitude <a|C|0^n>");
  add_common(amp, common);
  amp->add_option("--bitstring", bits, "Output string a; character k is qubit k (default all zeros)");

  std::string qubits, outcomes;
  auto* prob = app.add_subcommand("prob", "Joint probability of measured qubits");
  add_common(prob, common);
  prob->add_option("--qubits", qubits, "Comma-separated qubit indices")->required();
  prob->add_option("--outcomes", outcomes, "One bit per listed qubit")->required();

  int shots = 1;
  auto* smp = app.add_subcommand("sample", "Sequential output sampling");
  add_common(smp, common);
  smp->add_option("--shots", shots, "Number of samples")->check(CLI::NonNegativeNumber);

  std::string c0, c1, mutate;
  auto* eq = app.add_subcommand("equiv", "Equivalence up to global phase");
  add_common(eq, common, false);
  eq->add_option("--c0", c0, "First circuit")->required();
  eq->add_option("--c1", c1, "Second circuit (defaults to --c0 when mutating)");
  eq->add_option("--mutate", mutate, "missing | reverse")->check(CLI::IsMember({"missing", "reverse"}));

  std::string family, out;
  int gen_n = 0, gen_k = 5;
  uint64_t gen_seed = 0;
  bool zero_alpha = false, gen_quiet = false;
  auto* gen = app.add_subcommand("gen", "Write a generated circuit");
  gen->add_option("--family", family, "ghz | bv | linear")->required()->check(CLI::IsMember({"ghz", "bv", "linear"}));
  gen->add_option("--n", gen_n, "Qubit count")->required();
  gen->add_option("--k", gen_k, "Window size (linear)");
  gen->add_option("--seed", gen_seed, "Seed (linear)");
  gen->add_flag("--zero-alpha", zero_alpha, "Force A(x) = 0 (linear)");
  gen->add_option("--out", out, "Output path; stdout when absent");
  gen->add_flag("--quiet", gen_quiet, "No report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*amp) return run_amplitude(common, bits);
    if (*prob) return run_prob(common, qubits, outcomes);
    if (*smp) return run_sample(common, shots);
    if (*eq) return run_equiv(common, c0, c1, mutate);
    if (*gen) return run_gen(family, gen_n, gen_k, gen_seed, zero_alpha, out, gen_quiet);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
