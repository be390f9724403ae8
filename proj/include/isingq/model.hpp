#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingq/rng.hpp"

namespace isingq {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Horizontal coupling that projects to an HT gate.
inline const cplx kOmega{0.5 * std::log(std::sqrt(2.0) + 1.0), kPi / 4};

enum class DomainClass { Problem1, Problem2, Problem3, Physical, General };

inline const char* to_string(DomainClass d) {
  switch (d) {
    case DomainClass::Problem1: return "Problem1";
    case DomainClass::Problem2: return "Problem2";
    case DomainClass::Problem3: return "Problem3";
    case DomainClass::Physical: return "Physical";
    case DomainClass::General: return "General";
  }
  return "?";
}

inline DomainClass domain_from_string(const std::string& s) {
  if (s == "Problem1") return DomainClass::Problem1;
  if (s == "Problem2") return DomainClass::Problem2;
  if (s == "Problem3") return DomainClass::Problem3;
  if (s == "Physical") return DomainClass::Physical;
  if (s == "General") return DomainClass::General;
  throw std::invalid_argument("unknown domain: " + s);
}

// n x m square lattice. Row = circuit wire, column = time step.
// Parameters are stored already multiplied by beta.
class IsingInstance {
 public:
  IsingInstance() = default;
  IsingInstance(int n, int m) : n_(n), m_(m) {
    if (n <= 0 || m <= 0) throw std::invalid_argument("empty lattice");
    h_.assign(static_cast<size_t>(n) * m, cplx{});
    jv_.assign(static_cast<size_t>(n - 1) * m, cplx{});
    jh_.assign(static_cast<size_t>(n) * (m - 1), cplx{});
  }

  int n() const { return n_; }
  int m() const { return m_; }

  int num_vertices() const { return n_ * m_; }
  int num_vertical() const { return (n_ - 1) * m_; }
  int num_horizontal() const { return n_ * (m_ - 1); }
  int num_decorated() const { return num_vertices() + num_vertical() + num_horizontal(); }

  cplx& h(int r, int c) { return h_.at(idx_h(r, c)); }
  cplx h(int r, int c) const { return h_.at(idx_h(r, c)); }
  // coupling between (r,c) and (r+1,c)
  cplx& jv(int r, int c) { return jv_.at(idx_v(r, c)); }
  cplx jv(int r, int c) const { return jv_.at(idx_v(r, c)); }
  // coupling between (r,c) and (r,c+1)
  cplx& jh(int r, int c) { return jh_.at(idx_hz(r, c)); }
  cplx jh(int r, int c) const { return jh_.at(idx_hz(r, c)); }

  const std::vector<cplx>& h_values() const { return h_; }
  const std::vector<cplx>& jv_values() const { return jv_; }
  const std::vector<cplx>& jh_values() const { return jh_; }

  bool operator==(const IsingInstance&) const = default;

 private:
  size_t idx_h(int r, int c) const {
    if (r < 0 || r >= n_ || c < 0 || c >= m_) throw std::out_of_range("vertex index out of bounds");
    return static_cast<size_t>(r) * m_ + c;
  }
  size_t idx_v(int r, int c) const {
    if (r < 0 || r >= n_ - 1 || c < 0 || c >= m_) throw std::out_of_range("vertical edge index out of bounds");
    return static_cast<size_t>(r) * m_ + c;
  }
  size_t idx_hz(int r, int c) const {
    if (r < 0 || r >= n_ || c < 0 || c >= m_ - 1)
      throw std::out_of_range("horizontal edge index out of bounds");
    return static_cast<size_t>(r) * (m_ - 1) + c;
  }

  int n_ = 0, m_ = 0;
  std::vector<cplx> h_, jv_, jh_;
};

namespace detail {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool is_imag(cplx z, double tol) { return std::abs(z.real()) <= tol; }

// Im(z) = (2k+1) pi/4 for some integer k
inline bool odd_quarter_pi(double im, double tol) {
  double k = (im / (kPi / 4) - 1) / 2;
  return near(k, std::round(k), tol / (kPi / 2));
}

inline bool eq(cplx a, cplx b, double tol) {
  return std::abs(a.real() - b.real()) <= tol && std::abs(a.imag() - b.imag()) <= tol;
}

template <class Pred>
bool all_of(const std::vector<cplx>& v, Pred p) {
  for (auto z : v)
    if (!p(z)) return false;
  return true;
}

}  // namespace detail

inline bool is_problem1(const IsingInstance& x, double tol = 1e-12) {
  auto imag = [&](cplx z) { return detail::is_imag(z, tol); };
  return detail::all_of(x.h_values(), imag) && detail::all_of(x.jv_values(), imag) &&
         detail::all_of(x.jh_values(), [&](cplx z) { return detail::odd_quarter_pi(z.imag(), tol); });
}

inline bool is_physical(const IsingInstance& x, double tol = 1e-12) {
  auto real = [&](cplx z) { return std::abs(z.imag()) <= tol; };
  return detail::all_of(x.h_values(), real) && detail::all_of(x.jv_values(), real) &&
         detail::all_of(x.jh_values(), real);
}

inline bool is_problem2(const IsingInstance& x, double tol = 1e-12) {
  const cplx q{0, kPi / 4};
  return detail::all_of(x.h_values(), [&](cplx z) { return detail::eq(z, q, tol); }) &&
         detail::all_of(x.jv_values(),
                        [&](cplx z) { return detail::eq(z, 0, tol) || detail::eq(z, q, tol); }) &&
         detail::all_of(x.jh_values(),
                        [&](cplx z) { return detail::eq(z, q, tol) || detail::eq(z, kOmega, tol); });
}

inline bool is_problem3(const IsingInstance& x, double tol = 1e-12) {
  const cplx q{0, kPi / 4}, e{0, kPi / 8};
  auto three = [&](cplx z) {
    return detail::eq(z, 0, tol) || detail::eq(z, q, tol) || detail::eq(z, e, tol);
  };
  auto two = [&](cplx z) { return detail::eq(z, 0, tol) || detail::eq(z, q, tol); };
  return detail::all_of(x.h_values(), three) && detail::all_of(x.jv_values(), two) &&
         detail::all_of(x.jh_values(), [&](cplx z) { return detail::eq(z, q, tol); });
}

// Most specific label. Problem2 is tested before Problem3; the sets only meet
// when every field is i*pi/4 and every horizontal coupling is i*pi/4.
inline DomainClass classify_domain(const IsingInstance& x, double tol = 1e-12) {
  if (tol < 0) throw std::invalid_argument("negative tolerance");
  if (is_problem2(x, tol)) return DomainClass::Problem2;
  if (is_problem3(x, tol)) return DomainClass::Problem3;
  if (is_problem1(x, tol)) return DomainClass::Problem1;
  if (is_physical(x, tol)) return DomainClass::Physical;
  return DomainClass::General;
}

// beta*H for spins given as bits (bit 0 -> sigma=+1), indexed r*m+c.
inline cplx energy(const IsingInstance& x, const std::vector<int>& spins) {
  if (static_cast<int>(spins.size()) != x.num_vertices())
    throw std::invalid_argument("spin vector length mismatch");
  const int n = x.n(), m = x.m();
  auto s = [&](int r, int c) { return spins[static_cast<size_t>(r) * m + c] ? -1.0 : 1.0; };
  cplx e{};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      e -= x.h(r, c) * s(r, c);
      if (r + 1 < n) e -= x.jv(r, c) * (s(r, c) * s(r + 1, c));
      if (c + 1 < m) e -= x.jh(r, c) * (s(r, c) * s(r, c + 1));
    }
  return e;
}

inline IsingInstance random_instance(int n, int m, DomainClass d, uint64_t seed) {
  IsingInstance x(n, m);
  Rng rng(seed);
  auto fill = [&](auto gen) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) {
        x.h(r, c) = gen(0);
        if (r + 1 < n) x.jv(r, c) = gen(1);
        if (c + 1 < m) x.jh(r, c) = gen(2);
      }
  };
  const cplx q{0, kPi / 4};
  switch (d) {
    case DomainClass::Physical:
      fill([&](int) { return cplx{rng.uniform(-2, 2), 0}; });
      break;
    case DomainClass::General:
      fill([&](int) { return cplx{rng.uniform(-1, 1), rng.uniform(-kPi, kPi)}; });
      // keep at least one entry off both axes
      x.h(0, 0) = {rng.uniform(0.1, 1), rng.uniform(0.1, 1)};
      break;
    case DomainClass::Problem1:
      fill([&](int kind) {
        if (kind < 2) return cplx{0, rng.uniform(-kPi, kPi)};
        int k = static_cast<int>(rng.below(4)) - 2;
        return cplx{rng.uniform(-1, 1), (2 * k + 1) * kPi / 4};
      });
      // a nonzero real part on some horizontal edge, or an off-grid field,
      // keeps the instance out of the narrower classes
      x.h(0, 0) = {0, rng.uniform(0.05, 0.35)};
      break;
    case DomainClass::Problem2:
      fill([&](int kind) -> cplx {
        if (kind == 0) return q;
        if (kind == 1) return rng.below(2) ? q : cplx{};
        return rng.below(2) ? q : kOmega;
      });
      break;
    case DomainClass::Problem3: {
      const cplx opts[3] = {cplx{}, q, cplx{0, kPi / 8}};
      fill([&](int kind) -> cplx {
        if (kind == 2) return q;
        return kind == 1 ? opts[rng.below(2)] : opts[rng.below(3)];
      });
      // a field outside {i pi/4} separates it from Problem2
      x.h(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(m))) =
          rng.below(2) ? cplx{} : cplx{0, kPi / 8};
      break;
    }
  }
  return x;
}

}  // namespace isingq
