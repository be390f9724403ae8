#pragma once

#include <cmath>
#include <stdexcept>

#include "isingq/circuit.hpp"
#include "isingq/model.hpp"

namespace isingq {

// sin(xi) = (-1)^{k+1} e^{-r} / sqrt(2 cosh 2r), cos(xi) >= 0
inline double xi_angle(double r, int k) {
  const double s = (k % 2 == 0 ? -1.0 : 1.0) * std::exp(-r) / std::sqrt(2 * std::cosh(2 * r));
  return std::asin(s);
}

// k with Im(J) = (2k+1) pi/4
inline int quarter_index(cplx j) { return static_cast<int>(std::lround((j.imag() / (kPi / 4) - 1) / 2)); }

inline void require_problem1(const IsingInstance& x) {
  if (!is_problem1(x))
    throw std::invalid_argument(std::string("instance is not in the Problem 1 domain (classified as ") +
                                to_string(classify_domain(x)) + ")");
}

inline double delta_problem1(const IsingInstance& x) {
  require_problem1(x);
  double d = std::pow(2.0, x.n() * (x.m() + 1) / 2.0);
  for (auto j : x.jh_values()) d *= std::sqrt(std::cosh(2 * j.real()));
  return d;
}

namespace detail {

inline double weight_norm(cplx z) {
  if (std::abs(z.real()) > 300) throw std::overflow_error("parameter real part too large for delta_o");
  return std::sqrt(std::norm(std::exp(z)) + std::norm(std::exp(-z)));
}

}  // namespace detail

inline double delta_o(const IsingInstance& x) {
  double d = std::pow(2.0, x.num_vertices() / 2.0);
  for (auto z : x.h_values()) d *= detail::weight_norm(z);
  for (auto z : x.jv_values()) d *= detail::weight_norm(z);
  for (auto z : x.jh_values()) d *= detail::weight_norm(z);
  return d;
}

// (1/N) [[e^z, e^-z], [conj(e^-z), -conj(e^z)]]: first row is the weighted bra
inline Mat2 readout_gate(cplx z) {
  const cplx a = std::exp(z), b = std::exp(-z);
  const double nn = detail::weight_norm(z);
  return {{a / nn, b / nn, std::conj(b) / nn, -std::conj(a) / nn}};
}

enum class Readout {
  Folded,    // last-column vertex gate doubles as the readout
  Explicit,  // emit U_a, U_a^dagger, A_a for debugging; same amplitude
};

inline Circuit compile_problem1(const IsingInstance& x, Readout mode = Readout::Folded) {
  require_problem1(x);
  const int n = x.n(), m = x.m();
  Circuit c(n);
  for (int r = 0; r < n; ++r) c.add(Gate::h(r));
  double phase = 0;
  for (int col = 0; col < m; ++col) {
    for (int r = 0; r + 1 < n; ++r)
      if (x.jv(r, col) != cplx{}) c.add(Gate::zz(r, r + 1, {0, x.jv(r, col).imag()}));
    for (int r = 0; r < n; ++r) {
      // H e^{i phi Z} = H Z(-2 phi)
      c.add(Gate::zrot(r, -2 * x.h(r, col).imag()));
      c.add(Gate::h(r));
      if (col == m - 1 && mode == Readout::Explicit) {
        c.add(Gate::h(r));
        c.add(Gate::zrot(r, 2 * x.h(r, col).imag()));
        c.add(Gate::generic(r, readout_gate({0, x.h(r, col).imag()})));
      }
    }
    if (col + 1 < m)
      for (int r = 0; r < n; ++r) {
        const cplx j = x.jh(r, col);
        const int k = quarter_index(j);
        phase += (2 * k + 1) * kPi / 4;
        c.add(Gate::zrot(r, -2 * xi_angle(j.real(), k)));
        c.add(Gate::h(r));
      }
  }
  phase = std::remainder(phase, 2 * kPi);
  if (phase != 0) c.add(Gate::global_phase(phase));
  c.scale = delta_problem1(x);
  return c;
}

// Decorated-graph qubit numbering: vertices r*m+c, then vertical edges, then
// horizontal edges, each block in row-major order.
struct DecoratedLayout {
  int n, m;
  int vertex(int r, int c) const { return r * m + c; }
  int vertical(int r, int c) const { return n * m + r * m + c; }
  int horizontal(int r, int c) const { return n * m + (n - 1) * m + r * (m - 1) + c; }
  int size() const { return 3 * n * m - n - m; }
};

inline Circuit build_constant_depth(const IsingInstance& x, bool force = false) {
  const int n = x.n(), m = x.m();
  DecoratedLayout L{n, m};
  if (L.size() > 24 && !force) throw std::invalid_argument("too many qubits for the constant-depth circuit");
  Circuit c(L.size());
  for (int q = 0; q < L.size(); ++q) c.add(Gate::h(q));
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < m; ++col) {
      if (r + 1 < n) {
        c.add(Gate::cz(L.vertex(r, col), L.vertical(r, col)));
        c.add(Gate::cz(L.vertical(r, col), L.vertex(r + 1, col)));
      }
      if (col + 1 < m) {
        c.add(Gate::cz(L.vertex(r, col), L.horizontal(r, col)));
        c.add(Gate::cz(L.horizontal(r, col), L.vertex(r, col + 1)));
      }
    }
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < m; ++col) {
      c.add(Gate::generic(L.vertex(r, col), readout_gate(x.h(r, col))));
      if (r + 1 < n) {
        c.add(Gate::h(L.vertical(r, col)));
        c.add(Gate::generic(L.vertical(r, col), readout_gate(x.jv(r, col))));
      }
      if (col + 1 < m) {
        c.add(Gate::h(L.horizontal(r, col)));
        c.add(Gate::generic(L.horizontal(r, col), readout_gate(x.jh(r, col))));
      }
    }
  c.scale = delta_o(x);
  return c;
}

}  // namespace isingq
