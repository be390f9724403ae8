#pragma once

#include <cmath>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "isingq/circuit.hpp"
#include "isingq/compile_general.hpp"
#include "isingq/oracle.hpp"

namespace isingq {

// D' = e^{i phase} prod_a e^{i z_a Z_a} prod_ab e^{i zz_ab Z_a Z_b}
struct CommutingCircuit {
  int num_qubits = 0;
  std::map<int, double> z;
  std::map<std::pair<int, int>, double> zz;
  double phase = 0;      // global phase of D'
  double prefactor = 1;  // Z = prefactor * <+|D'|+>
  double delta_prime = 0;

  void add_z(int a, double t) {
    if (t != 0) z[a] += t;
  }
  void add_zz(int a, int b, double t) {
    if (t != 0) zz[{std::min(a, b), std::max(a, b)}] += t;
  }
};

inline void require_physical(const IsingInstance& x) {
  if (!is_physical(x))
    throw std::invalid_argument(std::string("instance is not physical (classified as ") +
                                to_string(classify_domain(x)) + ")");
}

// Rewrites C' gadget by gadget. Each wire is tracked to the qubit currently
// carrying it; an H moves it onto a fresh qubit through a CZ and a <+| readout.
inline CommutingCircuit to_commuting(const IsingInstance& x) {
  require_physical(x);
  const int n = x.n(), m = x.m();
  CommutingCircuit cc;
  cc.num_qubits = n;
  std::vector<int> wire(n);
  for (int r = 0; r < n; ++r) wire[r] = r;
  double dp = delta_o(x) * std::pow(2.0, n / 2.0);
  auto fresh = [&] { return cc.num_qubits++; };

  auto teleport_h = [&](int r) {
    // CZ = e^{i pi/4} e^{i pi/4 ZZ} e^{-i pi/4 Z_a} e^{-i pi/4 Z_b}
    const int a = wire[r], b = fresh();
    cc.add_zz(a, b, kPi / 4);
    cc.add_z(a, -kPi / 4);
    cc.add_z(b, -kPi / 4);
    cc.phase += kPi / 4;
    wire[r] = b;
  };
  // controlled Y(theta) conjugated into controlled Z(theta) on a |+> ancilla,
  // with X^l on the control absorbed into the sign of the ZZ term
  auto type1 = [&](const ProjectionSpec& s, int r, bool final) {
    dp *= s.norm / std::sqrt(2.0);
    cc.phase += (s.phase[0] + s.phase[1]) / 2;
    cc.add_z(wire[r], (s.phase[0] - s.phase[1]) / 2);
    const int anc = fresh();
    cc.add_zz(wire[r], anc, (s.l ? -1 : 1) * s.theta / 4);
    cc.add_z(anc, -s.theta / 4);
    if (!final) teleport_h(r);
  };
  auto type2 = [&](const ProjectionSpec& s, int r) {
    dp *= s.norm / std::sqrt(2.0);
    cc.phase += (s.phase[0] + s.phase[1]) / 2;
    cc.add_zz(wire[r], wire[r + 1], (s.phase[0] - s.phase[1]) / 2);
    const int anc = fresh();
    cc.add_zz(wire[r], anc, (s.l ? -1 : 1) * s.theta / 4);
    cc.add_zz(wire[r + 1], anc, -s.theta / 4);
  };

  for (int col = 0; col < m; ++col) {
    for (int r = 0; r + 1 < n; ++r) type2(type2_spec(fold_hadamard(weighted_bra(x.jv(r, col)))), r);
    for (int r = 0; r < n; ++r) type1(type1_spec(weighted_bra(x.h(r, col))), r, col + 1 == m);
    if (col + 1 < m)
      for (int r = 0; r < n; ++r) type1(type1_spec(fold_hadamard(weighted_bra(x.jh(r, col)))), r, false);
  }
  cc.phase = std::remainder(cc.phase, 2 * kPi);
  cc.delta_prime = dp;
  cc.prefactor = dp * std::pow(2.0, (x.num_vertices() + x.num_horizontal() - n) / 2.0);
  return cc;
}

// <+|D'|+> = 2^{-k} sum over bit vectors of exp(i phase(bits))
inline cplx iqp_amplitude(const CommutingCircuit& cc, int threads = 1, bool force = false) {
  const int k = cc.num_qubits;
  if (k > 26 && !force) throw std::invalid_argument("commuting circuit too large for direct summation");
  if (k > 40) throw std::invalid_argument("commuting circuit too large");
  std::vector<std::pair<int, double>> zt(cc.z.begin(), cc.z.end());
  std::vector<std::tuple<int, int, double>> zzt;
  for (const auto& [e, t] : cc.zz) zzt.emplace_back(e.first, e.second, t);

  const uint64_t total = uint64_t{1} << k;
  const uint64_t chunk = std::min<uint64_t>(total, 4096), nchunks = total / chunk;
  std::vector<cplx> partial(nchunks);
  auto work = [&](uint64_t first, uint64_t stride) {
    for (uint64_t c = first; c < nchunks; c += stride) {
      cplx acc{};
      for (uint64_t b = c * chunk; b < (c + 1) * chunk; ++b) {
        double e = 0;
        for (const auto& [q, t] : zt) e += ((b >> q) & 1) ? -t : t;
        for (const auto& [p, q, t] : zzt) e += (((b >> p) ^ (b >> q)) & 1) ? -t : t;
        acc += std::polar(1.0, e);
      }
      partial[c] = acc;
    }
  };
  const int nt = static_cast<int>(std::min<uint64_t>(detail::resolve_threads(threads), nchunks));
  if (nt <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
    for (auto& th : pool) th.join();
  }
  return std::polar(std::ldexp(1.0, -k), cc.phase) * detail::pairwise_sum(std::move(partial));
}

// Gate-sequence form: H^k, the diagonal terms, H^k; <0|.|0> equals <+|D'|+>.
inline Circuit to_circuit(const CommutingCircuit& cc) {
  Circuit c(cc.num_qubits);
  for (int q = 0; q < cc.num_qubits; ++q) c.add(Gate::h(q));
  for (const auto& [q, t] : cc.z) c.add(Gate::zrot(q, -2 * t));
  for (const auto& [e, t] : cc.zz) c.add(Gate::zz(e.first, e.second, {0, t}));
  if (cc.phase != 0) c.add(Gate::global_phase(cc.phase));
  for (int q = 0; q < cc.num_qubits; ++q) c.add(Gate::h(q));
  return c;
}

// Ising model on an arbitrary graph, used for G'.
struct GraphIsing {
  int num_vertices = 0;
  std::map<int, cplx> h;
  std::map<std::pair<int, int>, cplx> j;
};

inline cplx brute_force_Z(const GraphIsing& g, int threads = 1) {
  CommutingCircuit cc;
  cc.num_qubits = g.num_vertices;
  for (const auto& [a, v] : g.h)
    if (v.real() != 0) throw std::invalid_argument("graph brute force only handles imaginary parameters");
  for (const auto& [e, v] : g.j)
    if (v.real() != 0) throw std::invalid_argument("graph brute force only handles imaginary parameters");
  for (const auto& [a, v] : g.h) cc.add_z(a, v.imag());
  for (const auto& [e, v] : g.j) cc.add_zz(e.first, e.second, v.imag());
  return std::ldexp(1.0, g.num_vertices) * iqp_amplitude(cc, threads);
}

struct RealImagMapping {
  GraphIsing model;       // beta h' = i z_a, beta J' = i zz_ab
  double delta_prime = 0;
  double log2_scale = 0;  // Z_G = delta' * 2^{log2_scale} * e^{i phase} * Z_{G'}
  double phase = 0;
  int nominal_exponent = 0;  // -5nm + 2n + m, the nominal closed form
};

inline RealImagMapping real_imag_instance(const IsingInstance& x) {
  const auto cc = to_commuting(x);
  RealImagMapping out;
  out.model.num_vertices = cc.num_qubits;
  for (const auto& [a, t] : cc.z) out.model.h[a] = {0, t};
  for (const auto& [e, t] : cc.zz) out.model.j[e] = {0, t};
  out.delta_prime = cc.delta_prime;
  out.log2_scale = (x.num_vertices() + x.num_horizontal() - x.n()) / 2.0 - cc.num_qubits;
  out.phase = cc.phase;
  out.nominal_exponent = -5 * x.n() * x.m() + 2 * x.n() + x.m();
  return out;
}

struct ScaleRatioReport {
  double ratio;          // delta / |z|
  double window;         // c = delta / (|z| poly)
  bool multiplicative;   // c <= threshold
  double epsilon_ceiling;  // |z| / delta
};

inline ScaleRatioReport scale_ratio_report(cplx z, double delta, double poly,
                                           double threshold = 1 - std::pow(2.0, -0.25)) {
  if (z == cplx{}) throw std::invalid_argument("z must be nonzero");
  const double r = delta / std::abs(z);
  return {r, r / poly, r / poly <= threshold, 1 / r};
}

}  // namespace isingq
