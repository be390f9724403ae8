#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isingq/brickwork.hpp"
#include "isingq/circuit_io.hpp"
#include "isingq/compile_general.hpp"
#include "isingq/compile_unitary.hpp"
#include "isingq/graph_state.hpp"
#include "isingq/iqp.hpp"
#include "isingq/model_io.hpp"
#include "isingq/oracle.hpp"
#include "isingq/report.hpp"
#include "isingq/simulator.hpp"

namespace isingq::cli {

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2 };

struct Options {
  std::string instance, output;
  std::string method = "auto";
  std::string mode = "auto";
  std::string format = "text";
  std::string suite;
  uint64_t samples = 100000;
  uint64_t seed = 1;
  int threads = 1;
  bool force = false;
};

inline int default_threads() {
  if (const char* e = std::getenv("ISING_PFN_THREADS")) {
    try {
      return std::max(0, std::stoi(e));
    } catch (const std::exception&) {
      throw std::invalid_argument("ISING_PFN_THREADS must be an integer");
    }
  }
  return 1;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw std::invalid_argument("cannot write " + o.output);
  f << text;
}

inline RunReport base_report(const IsingInstance& x, std::string method) {
  RunReport r;
  r.n = x.n();
  r.m = x.m();
  r.decorated = x.num_decorated();
  r.domain = to_string(classify_domain(x));
  r.method = std::move(method);
  try {
    r.delta_o = delta_o(x);
    r.delta = is_problem1(x) ? delta_problem1(x) : delta_general(x);
  } catch (const std::overflow_error&) {
    r.delta_o = r.delta = INFINITY;
  }
  return r;
}

inline std::string pick_mode(const Options& o, const IsingInstance& x) {
  if (o.mode != "auto") return o.mode;
  return is_problem1(x) ? "unitary" : "general";
}

// exact value when an oracle can afford it
inline std::optional<ExactResult> try_exact(const IsingInstance& x, const Options& o, const std::string& method) {
  const bool brute_ok = x.num_vertices() <= 26 || o.force;
  if (method == "brute" || (method == "auto" && brute_ok && x.num_vertices() <= 20))
    return brute_force_Z(x, {o.force, o.threads});
  if (method == "transfer" || (method == "auto" && x.n() <= 14)) return transfer_matrix_Z(x);
  if (method != "auto") throw std::invalid_argument("unknown method: " + method);
  return std::nullopt;
}

struct Compiled {
  Circuit circuit;
  double delta = 0;
};

inline Compiled compile_for(const IsingInstance& x, const std::string& mode, bool force) {
  if (mode == "unitary") {
    if (!is_problem1(x))
      throw std::invalid_argument(std::string("mode unitary needs a Problem1 instance; classified as ") +
                                  to_string(classify_domain(x)));
    auto c = compile_problem1(x);
    return {c, c.scale};
  }
  if (mode == "general") {
    auto g = compile_general(x, AncillaMode::Reuse);
    return {g.circuit, g.delta};
  }
  if (mode == "general-fresh") {
    auto g = compile_general(x, AncillaMode::Fresh);
    return {g.circuit, g.delta};
  }
  if (mode == "constant-depth") {
    auto c = build_constant_depth(x, force);
    return {c, c.scale};
  }
  throw std::invalid_argument("unknown mode: " + mode);
}

using Clock = std::chrono::steady_clock;
inline double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

inline int cmd_exact(const Options& o, std::ostream& out) {
  const auto t0 = Clock::now();
  const IsingInstance x = parse_instance(read_file(o.instance));
  auto res = try_exact(x, o, o.method == "auto" ? "auto" : o.method);
  if (!res) throw std::invalid_argument("instance too large for both oracles (use --force for brute force)");
  RunReport r = base_report(x, res->method);
  r.z_exact = res->z;
  r.z_log_scale = res->log_scale;
  r.wall_time = since(t0);
  emit(o, write_report(r, report_format_from_string(o.format)), out);
  return kOk;
}

inline int cmd_compile(const Options& o, std::ostream& out) {
  const IsingInstance x = parse_instance(read_file(o.instance));
  Compiled c = compile_for(x, pick_mode(o, x), o.force);
  c.circuit.scale = c.delta;
  emit(o, circuit_to_json(c.circuit).dump(2) + "\n", out);
  return kOk;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
  const auto t0 = Clock::now();
  const IsingInstance x = parse_instance(read_file(o.instance));
  const std::string mode = pick_mode(o, x);
  Compiled c = compile_for(x, mode, o.force);
  RunReport r = base_report(x, "simulate/" + mode);
  r.delta = c.delta;
  r.z_estimate = c.delta * run_circuit(c.circuit, o.force);
  if (auto e = try_exact(x, o, o.method)) {
    r.z_exact = e->z;
    r.z_log_scale = e->log_scale;
  }
  r.wall_time = since(t0);
  emit(o, write_report(r, report_format_from_string(o.format)), out);
  return kOk;
}

inline int cmd_estimate(const Options& o, std::ostream& out) {
  const auto t0 = Clock::now();
  const IsingInstance x = parse_instance(read_file(o.instance));
  std::string mode = pick_mode(o, x);
  // the Hadamard test needs a unitary circuit: general instances read all ancillas out at the end
  if (mode == "general") mode = "general-fresh";
  Compiled c = compile_for(x, mode, o.force);
  const auto est = hadamard_test(c.circuit, o.samples, o.seed);
  RunReport r = base_report(x, "estimate/" + mode);
  r.delta = c.delta;
  r.z_estimate = c.delta * cplx{est.re, est.im};
  r.samples = o.samples;
  r.seed = o.seed;
  if (auto e = try_exact(x, o, o.method)) {
    r.z_exact = e->z;
    r.z_log_scale = e->log_scale;
  }
  r.wall_time = since(t0);
  emit(o, write_report(r, report_format_from_string(o.format)), out);
  return kOk;
}

inline int cmd_iqp(const Options& o, std::ostream& out) {
  const auto t0 = Clock::now();
  const IsingInstance x = parse_instance(read_file(o.instance));
  const auto cc = to_commuting(x);
  RunReport r = base_report(x, "iqp");
  r.z_estimate = cc.prefactor * iqp_amplitude(cc, o.threads, o.force);
  r.delta_prime = cc.delta_prime;
  r.delta = delta_general(x);
  if (auto e = try_exact(x, o, o.method)) {
    r.z_exact = e->z;
    r.z_log_scale = e->log_scale;
  }
  r.wall_time = since(t0);
  const auto map = real_imag_instance(x);
  std::ostringstream extra;
  if (o.format == "text")
    extra << "iqp_qubits   " << cc.num_qubits << "\n"
          << "graph map    Z = delta' * 2^" << map.log2_scale << " * e^{i " << map.phase
          << "} * Z_G'  (nominal exponent " << map.nominal_exponent << ")\n";
  emit(o, write_report(r, report_format_from_string(o.format)) + extra.str(), out);
  return kOk;
}

inline int cmd_embed(const Options& o, std::ostream& out) {
  const auto t0 = Clock::now();
  const TargetCircuit t = target_from_json(nlohmann::json::parse(read_file(o.instance)));
  const EmbedReport rep = embed_circuit(t, t.n <= 14);
  const double secs = since(t0);
  std::ostringstream os;
  if (o.format == "json") {
    nlohmann::json j;
    j["instance"] = instance_to_json(rep.instance);
    j["cells"] = rep.cells;
    j["gamma_count"] = rep.gamma_count;
    j["delta_count"] = rep.delta_count;
    j["omega_count"] = rep.omega_count;
    j["log2_delta"] = rep.log2_delta;
    j["log2_delta_o"] = rep.log2_delta_o;
    j["log2_delta_t"] = rep.log2_delta_t;
    j["log2_delta_c"] = rep.log2_delta_c;
    j["phase"] = rep.phase;
    j["target_amplitude"] = {rep.target_amplitude.real(), rep.target_amplitude.imag()};
    j["amplitude"] = {rep.amplitude.real(), rep.amplitude.imag()};
    j["error"] = rep.error;
    j["wall_time"] = secs;
    os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    os << embed_csv(rep);
  } else {
    os << std::setprecision(12) << "lattice      " << rep.instance.n() << " x " << rep.instance.m() << " ("
       << rep.cells << " gate cells + entry cell), " << to_string(classify_domain(rep.instance)) << "\n"
       << "#gamma #delta #omega  " << rep.gamma_count << " " << rep.delta_count << " " << rep.omega_count << "\n"
       << "log2 delta   " << rep.log2_delta << "  (o " << rep.log2_delta_o << ", t " << rep.log2_delta_t << ", c "
       << rep.log2_delta_c << ")\n"
       << "target       " << rep.target_amplitude << "\n";
    if (rep.verified)
      os << "Z / delta    " << rep.amplitude << "\n"
         << "error        " << rep.error << " (tracked phase " << rep.phase << ")\n";
    os << "wall_time    " << std::setprecision(4) << secs << " s\n";
  }
  // the embedded instance goes to -o when given, the report to stdout
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) throw std::invalid_argument("cannot write " + o.output);
    f << serialize_instance(rep.instance) << "\n";
  }
  out << os.str();
  return rep.verified && rep.error > 1e-9 ? kVerifyFailed : kOk;
}

// ---- verify suites ------------------------------------------------------------

struct Check {
  std::string name;
  double value;
  double bound;
  bool ok() const { return value < bound; }
};

inline std::vector<Check> suite_identities() {
  std::vector<Check> out;
  for (const auto& c : verify_identities()) out.push_back({c.name, c.distance, 1e-12});
  return out;
}

inline std::vector<Check> suite_projections(uint64_t seed) {
  const auto c = certify_rewrites(200, seed);
  return {{"rewrite rules, " + std::to_string(c.projections) + " projections on " + std::to_string(c.graphs) +
               " graphs",
           c.max_error, 1e-10}};
}

inline std::vector<Check> suite_brickwork() {
  std::vector<Check> out;
  for (const auto& [name, p] : cell_patterns()) out.push_back({"cell pattern " + name, p.distance, 1e-10});
  const auto bw = build_brickwork(2, 15);
  const bool iso = isomorphic(bw.graph.adjacency(), reference_brickwork(2, 15, bw.bridges));
  out.push_back({"2x15 brickwork topology (0 = isomorphic)", iso ? 0.0 : 1.0, 0.5});
  out.push_back({"2x15 |scalar| vs 2^{-#gamma/2}",
                 std::abs(std::log2(std::abs(bw.graph.scalar())) + bw.gamma_count / 2.0), 1e-9});
  const std::vector<std::pair<std::string, TargetCircuit>> targets = {
      {"I", TargetCircuit{2, {{"I", {}}}}},
      {"T", TargetCircuit{2, {{"T", {0}}}}},
      {"H", TargetCircuit{2, {{"H", {0}}}}},
      {"CNOT", TargetCircuit{2, {{"CNOT", {0, 1}}}}},
  };
  for (const auto& [name, t] : targets) out.push_back({"embed " + name, embed_circuit(t).error, 1e-9});
  return out;
}

inline std::vector<Check> suite_iqp(int threads) {
  std::vector<Check> out;
  for (auto [n, m] : {std::pair{1, 2}, {1, 3}, {2, 2}}) {
    double worst = 0;
    for (uint64_t s = 0; s < 5; ++s) {
      const auto x = random_instance(n, m, DomainClass::Physical, s);
      const auto cc = to_commuting(x);
      const cplx z = brute_force_Z(x).z;
      worst = std::max(worst, std::abs(cc.prefactor * iqp_amplitude(cc, threads) - z) / std::abs(z));
    }
    out.push_back({"commuting identity " + std::to_string(n) + "x" + std::to_string(m), worst, 1e-9});
    const auto map = real_imag_instance(random_instance(n, m, DomainClass::Physical, 0));
    out.push_back({"graph-map exponent " + std::to_string(n) + "x" + std::to_string(m) + " = " +
                       std::to_string(static_cast<int>(map.log2_scale)) + " (nominal " +
                       std::to_string(map.nominal_exponent) + "), |measured - (-4nm+n+m)|",
                   std::abs(map.log2_scale - (-4 * n * m + n + m)), 0.5});
  }
  return out;
}

inline std::vector<Check> suite_scales(uint64_t seed) {
  std::vector<Check> out;
  int violations = 0;
  Rng pick(seed);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(pick.below(3)), m = 2 + static_cast<int>(pick.below(3));
    const auto d = pick.below(2) ? DomainClass::Physical : DomainClass::General;
    const auto x = random_instance(n, m, d, seed + t);
    if (!(delta_general(x) < delta_o(x))) ++violations;
  }
  out.push_back({"delta >= delta_o on random instances (count)", static_cast<double>(violations), 0.5});
  double prev = 0, worst = 0;
  for (double h : {1.0, 2.0, 4.0, 8.0}) {
    IsingInstance x(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) x.h(r, c) = h;
    x.jv(0, 0) = x.jv(0, 1) = 0.5;
    x.jh(0, 0) = x.jh(1, 0) = 0.5;
    const double ratio = delta_general(x) / delta_o(x);
    if (ratio <= prev || ratio >= 1) worst = 1;
    prev = ratio;
  }
  out.push_back({"delta/delta_o not increasing in Re(beta h)", worst, 0.5});
  for (auto [n, m, b] : {std::tuple{2, 2, 0.5}, {3, 2, 0.3}, {2, 3, 1.0}}) {
    const auto x = random_bond_instance(n, m, b, seed);
    out.push_back({"random-bond closed form " + std::to_string(n) + "x" + std::to_string(m),
                   std::abs(delta_general(x) / delta_random_bond(n, m, b) - 1), 1e-12});
  }
  return out;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<Check> checks;
  if (o.suite == "identities") checks = suite_identities();
  else if (o.suite == "projections") checks = suite_projections(o.seed);
  else if (o.suite == "brickwork") checks = suite_brickwork();
  else if (o.suite == "iqp") checks = suite_iqp(o.threads);
  else if (o.suite == "scales") checks = suite_scales(o.seed);
  else throw std::invalid_argument("unknown suite: " + o.suite);
  bool all = true;
  std::ostringstream os;
  if (o.format == "csv") os << "check,value,bound,ok\n";
  for (const auto& c : checks) {
    all = all && c.ok();
    if (o.format == "csv")
      os << '"' << c.name << "\"," << std::setprecision(17) << c.value << ',' << c.bound << ',' << c.ok() << '\n';
    else
      os << (c.ok() ? "ok    " : "FAIL  ") << std::left << std::setw(64) << c.name << " " << std::setprecision(3)
         << std::scientific << c.value << std::defaultfloat << '\n';
  }
  if (o.format != "csv") os << (all ? "all checks passed\n" : "verification FAILED\n");
  emit(o, os.str(), out);
  return all ? kOk : kVerifyFailed;
}

// ---- entry point ----------------------------------------------------------------

inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    o.threads = default_threads();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  CLI::App app{"Ising partition functions as quantum circuit amplitudes"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s, bool needs_instance) {
    auto* opt = s->add_option("-i,--instance", o.instance, "input document");
    if (needs_instance) opt->required();
    s->add_option("-o,--output", o.output, "write the result here instead of stdout");
    s->add_option("--threads", o.threads, "worker threads (0 = all cores; default ISING_PFN_THREADS or 1)")
        ->check(CLI::NonNegativeNumber);
    s->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    s->add_flag("--force", o.force, "lift size guards");
    s->add_option("--seed", o.seed, "random seed");
  };
  auto method = [&](CLI::App* s) {
    s->add_option("--method", o.method, "exact oracle: brute or transfer")
        ->check(CLI::IsMember({"auto", "brute", "transfer"}));
  };
  auto mode = [&](CLI::App* s) {
    s->add_option("--mode", o.mode, "circuit construction")
        ->check(CLI::IsMember({"auto", "unitary", "general", "constant-depth"}));
  };
  std::map<std::string, std::function<int()>> run;
  auto* exact = app.add_subcommand("exact", "exact partition function");
  common(exact, true);
  method(exact);
  run["exact"] = [&] { return cmd_exact(o, out); };
  auto* compile = app.add_subcommand("compile", "emit the circuit document");
  common(compile, true);
  mode(compile);
  run["compile"] = [&] { return cmd_compile(o, out); };
  auto* simulate = app.add_subcommand("simulate", "exact circuit amplitude times delta");
  common(simulate, true);
  mode(simulate);
  method(simulate);
  run["simulate"] = [&] { return cmd_simulate(o, out); };
  auto* estimate = app.add_subcommand("estimate", "Hadamard-test estimate of Z");
  common(estimate, true);
  mode(estimate);
  method(estimate);
  estimate->add_option("--samples", o.samples, "shots per real and imaginary part")->check(CLI::PositiveNumber);
  run["estimate"] = [&] { return cmd_estimate(o, out); };
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  common(verify, false);
  verify->add_option("suite", o.suite, "identities, projections, brickwork, iqp or scales")
      ->required()
      ->check(CLI::IsMember({"identities", "projections", "brickwork", "iqp", "scales"}));
  run["verify"] = [&] { return cmd_verify(o, out); };
  auto* embed = app.add_subcommand("embed", "embed an {H,T,CNOT} circuit into a Problem-2 lattice");
  common(embed, true);
  run["embed"] = [&] { return cmd_embed(o, out); };
  auto* iqp = app.add_subcommand("iqp", "commuting-circuit form of a physical instance");
  common(iqp, true);
  method(iqp);
  run["iqp"] = [&] { return cmd_iqp(o, out); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    for (auto* s : app.get_subcommands()) return run.at(s->get_name())();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace isingq::cli
