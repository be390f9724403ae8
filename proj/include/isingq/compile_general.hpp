#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "isingq/circuit.hpp"
#include "isingq/compile_unitary.hpp"
#include "isingq/model.hpp"
#include "isingq/simulator.hpp"

namespace isingq {

struct WeightedBra {
  cplx x0, x1;
};

// w(z) = (e^z, e^-z) / sqrt(|e^z|^2 + |e^-z|^2)
inline WeightedBra weighted_bra(cplx z) {
  const double nn = detail::weight_norm(z);
  return {std::exp(z) / nn, std::exp(-z) / nn};
}

inline WeightedBra fold_hadamard(WeightedBra b) {
  const double s = 1 / std::sqrt(2.0);
  return {(b.x0 + b.x1) * s, (b.x0 - b.x1) * s};
}

enum class ProjectionKind { I, II };

struct ProjectionSpec {
  ProjectionKind kind;
  WeightedBra bra;
  int l = 0;          // 1 when the second singular value is the larger one
  double theta = 0;   // controlled-Y angle, cos(theta/2) = min/max
  double norm = 1;    // operator norm of M
  double phase[2]{};  // W = diag(e^{i phase0}, e^{i phase1}) (type II: on the p/q components)
  std::string label;  // which lattice element, for reports
  std::vector<int> targets;
};

namespace detail {

inline ProjectionSpec make_spec(ProjectionKind kind, WeightedBra bra, cplx u0, cplx u1, double norm_scale) {
  ProjectionSpec s{kind, bra};
  const double a0 = std::abs(u0), a1 = std::abs(u1);
  if (a0 == 0 && a1 == 0) throw std::invalid_argument("zero bra");
  s.l = a0 >= a1 ? 0 : 1;
  const double lo = std::min(a0, a1), hi = std::max(a0, a1);
  // equal singular values up to rounding: no rotation, ancilla decouples
  s.theta = lo / hi > 1 - 1e-12 ? 0.0 : 2 * std::acos(lo / hi);
  s.norm = norm_scale * hi;
  s.phase[0] = a0 > 0 ? std::arg(u0) : 0;
  s.phase[1] = a1 > 0 ? std::arg(u1) : 0;
  return s;
}

}  // namespace detail

// M = sqrt(2) diag(x0, x1)
inline ProjectionSpec type1_spec(WeightedBra b) {
  return detail::make_spec(ProjectionKind::I, b, b.x0, b.x1, std::sqrt(2.0));
}

// M = diag(x0+x1, x0-x1, x0-x1, x0+x1)
inline ProjectionSpec type2_spec(WeightedBra b) {
  return detail::make_spec(ProjectionKind::II, b, b.x0 + b.x1, b.x0 - b.x1, 1.0);
}

// Linear operator M / ||M|| the gadget implements (type I includes the trailing H).
inline Mat2 direct_operator1(const ProjectionSpec& s) {
  const double f = std::sqrt(2.0) / s.norm;
  return gates::H() * Mat2::diag({f * s.bra.x0, f * s.bra.x1});
}

inline Mat4 direct_operator2(const ProjectionSpec& s) {
  const cplx p = (s.bra.x0 + s.bra.x1) / s.norm, q = (s.bra.x0 - s.bra.x1) / s.norm;
  return Mat4::diag({p, q, q, p});
}

// Appends the ancilla gadget for s; returns the global phase it leaves out
// (type II's W is split into a phase and a ZZ rotation).
inline double append_gadget(Circuit& c, const ProjectionSpec& s, int anc, bool project) {
  const int w = s.targets[0];
  double phase = 0;
  if (s.kind == ProjectionKind::I) {
    if (s.phase[0] != 0 || s.phase[1] != 0) c.add(Gate::phase_diag(w, s.phase[0], s.phase[1]));
    if (s.l) c.add(Gate::x(w));
    if (s.theta != 0) c.add(Gate::cy(w, anc, s.theta));
    if (s.l) c.add(Gate::x(w));
    c.add(Gate::h(w));
  } else {
    const int w2 = s.targets[1];
    phase = (s.phase[0] + s.phase[1]) / 2;
    const double d = (s.phase[0] - s.phase[1]) / 2;
    if (d != 0) c.add(Gate::zz(w, w2, {0, d}));
    if (s.l) c.add(Gate::x(w));
    if (s.theta != 0) {
      c.add(Gate::cy(w, anc, s.theta));
      c.add(Gate::cy(w2, anc, -s.theta));
    }
    if (s.l) c.add(Gate::x(w));
  }
  if (project) c.add(Gate::project_zero(anc));
  return phase;
}

enum class AncillaMode {
  Reuse,  // one scratch ancilla, projected to <0| after every block
  Fresh,  // one ancilla per block, all read out at the end (|V~| qubits)
};

struct GeneralCompilation {
  Circuit circuit;
  std::vector<ProjectionSpec> specs;  // in circuit order
  double delta = 0;
  double delta_o = 0;
};

// Projection sequence shared by every evaluation path: per column the
// vertical edges (type II), then unless it is the last column the vertices
// and horizontal edges (type I). Last-column vertices are read out directly.
inline std::vector<ProjectionSpec> projection_specs(const IsingInstance& x) {
  const int n = x.n(), m = x.m();
  std::vector<ProjectionSpec> out;
  for (int col = 0; col < m; ++col) {
    for (int r = 0; r + 1 < n; ++r) {
      auto s = type2_spec(fold_hadamard(weighted_bra(x.jv(r, col))));
      s.label = "jv(" + std::to_string(r) + "," + std::to_string(col) + ")";
      s.targets = {r, r + 1};
      out.push_back(s);
    }
    if (col + 1 == m) break;
    for (int r = 0; r < n; ++r) {
      auto s = type1_spec(weighted_bra(x.h(r, col)));
      s.label = "h(" + std::to_string(r) + "," + std::to_string(col) + ")";
      s.targets = {r};
      out.push_back(s);
    }
    for (int r = 0; r < n; ++r) {
      auto s = type1_spec(fold_hadamard(weighted_bra(x.jh(r, col))));
      s.label = "jh(" + std::to_string(r) + "," + std::to_string(col) + ")";
      s.targets = {r};
      out.push_back(s);
    }
  }
  return out;
}

inline double delta_general(const IsingInstance& x) {
  double d = delta_o(x);
  for (const auto& s : projection_specs(x)) d *= s.norm / std::sqrt(2.0);
  return d;
}

inline GeneralCompilation compile_general(const IsingInstance& x, AncillaMode mode = AncillaMode::Reuse) {
  for (auto v : {x.h_values(), x.jv_values(), x.jh_values()})
    for (auto z : v)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw std::invalid_argument("non-finite parameter");
  const int n = x.n(), m = x.m();
  GeneralCompilation g;
  g.specs = projection_specs(x);
  const int k = mode == AncillaMode::Reuse ? n + 1 : n + static_cast<int>(g.specs.size());
  g.circuit = Circuit(k);
  for (int a = n; a < k; ++a) g.circuit.roles[a] = QubitRole::Ancilla;
  for (int r = 0; r < n; ++r) g.circuit.add(Gate::h(r));
  g.delta_o = delta_o(x);
  g.delta = g.delta_o;
  double phase = 0;
  int next_anc = n;
  for (const auto& s : g.specs) {
    const int anc = mode == AncillaMode::Reuse ? n : next_anc++;
    phase += append_gadget(g.circuit, s, anc, mode == AncillaMode::Reuse);
    g.delta *= s.norm / std::sqrt(2.0);
  }
  for (int r = 0; r < n; ++r) g.circuit.add(Gate::generic(r, readout_gate(x.h(r, m - 1))));
  phase = std::remainder(phase, 2 * kPi);
  if (phase != 0) g.circuit.add(Gate::global_phase(phase));
  g.circuit.scale = g.delta;
  return g;
}

inline void apply_projection_direct(StateVector& st, const ProjectionSpec& s) {
  if (s.kind == ProjectionKind::I)
    st.apply1(s.targets[0], direct_operator1(s));
  else
    st.apply2(s.targets[0], s.targets[1], direct_operator2(s));
}

// <0|C|0> with every gadget replaced by its linear operator, on n qubits.
inline cplx general_amplitude_direct(const IsingInstance& x) {
  const int n = x.n(), m = x.m();
  check_size(n);
  StateVector st(n);
  for (int r = 0; r < n; ++r) st.apply1(r, gates::H());
  for (const auto& s : projection_specs(x)) apply_projection_direct(st, s);
  for (int r = 0; r < n; ++r) st.apply1(r, readout_gate(x.h(r, m - 1)));
  return st[0];
}

// Closed form for the +-1 random-bond model with beta h = beta.
inline double delta_random_bond(int n, int m, double beta) {
  const double nm = static_cast<double>(n) * m;
  return std::pow(2.0, nm) * std::exp((2 * nm - n - m) * beta) * std::pow(std::cosh(beta), nm - n) *
         std::pow(std::cosh(2 * beta), n / 2.0);
}

inline IsingInstance random_bond_instance(int n, int m, double beta, uint64_t seed) {
  IsingInstance x(n, m);
  Rng rng(seed);
  auto pm = [&] { return rng.below(2) ? beta : -beta; };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      x.h(r, c) = beta;
      if (r + 1 < n) x.jv(r, c) = pm();
      if (c + 1 < m) x.jh(r, c) = pm();
    }
  return x;
}

}  // namespace isingq
