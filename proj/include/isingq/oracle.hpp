#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "isingq/model.hpp"

namespace isingq {

struct ExactResult {
  cplx z;                 // partition function is z * exp(log_scale)
  double log_scale = 0;   // nonzero only when z alone would overflow
  std::string method;
  uint64_t count = 0;     // spins enumerated (brute) or states per column (transfer)

  cplx value() const { return log_scale == 0 ? z : z * std::exp(log_scale); }
};

namespace detail {

// Fixed-topology pairwise sum so the result does not depend on thread count.
inline cplx pairwise_sum(std::vector<cplx> v) {
  if (v.empty()) return {};
  while (v.size() > 1) {
    size_t half = (v.size() + 1) / 2;
    for (size_t i = 0; i < v.size() / 2; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (v.size() % 2) v[v.size() / 2] = v.back();
    v.resize(half);
  }
  return v[0];
}

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

}  // namespace detail

struct BruteOptions {
  bool force = false;   // lift the nm <= 26 guard
  int threads = 1;      // 0 = hardware concurrency
};

inline ExactResult brute_force_Z(const IsingInstance& x, BruteOptions opt = {}) {
  const int n = x.n(), m = x.m(), nv = n * m;
  if (nv > 26 && !opt.force) throw std::invalid_argument("lattice too large for brute force (nm > 26)");
  if (nv > 62) throw std::invalid_argument("lattice too large for brute force");

  // -beta*H = sum_a h_a s_a + sum_e J_e s_a s_b ; s = 1 - 2*bit
  struct Term { int a, b; cplx w; };
  std::vector<Term> terms;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      int a = r * m + c;
      if (x.h(r, c) != cplx{}) terms.push_back({a, -1, x.h(r, c)});
      if (r + 1 < n && x.jv(r, c) != cplx{}) terms.push_back({a, a + m, x.jv(r, c)});
      if (c + 1 < m && x.jh(r, c) != cplx{}) terms.push_back({a, a + 1, x.jh(r, c)});
    }

  const uint64_t total = uint64_t{1} << nv;
  const uint64_t chunk = std::min<uint64_t>(total, 4096);
  const uint64_t nchunks = total / chunk;
  std::vector<cplx> partial(nchunks);

  std::vector<std::vector<int>> touching(nv);
  for (size_t i = 0; i < terms.size(); ++i) {
    touching[terms[i].a].push_back(static_cast<int>(i));
    if (terms[i].b >= 0) touching[terms[i].b].push_back(static_cast<int>(i));
  }

  // Inside a chunk the low bits run in Gray-code order, so each step flips
  // one spin and updates the exponent from the terms touching it.
  auto work = [&](uint64_t first, uint64_t stride) {
    std::vector<double> s(nv);
    for (uint64_t k = first; k < nchunks; k += stride) {
      const uint64_t base = k * chunk;
      for (int a = 0; a < nv; ++a) s[a] = ((base >> a) & 1) ? -1.0 : 1.0;
      cplx e{};
      for (const auto& t : terms) e += t.w * (t.b < 0 ? s[t.a] : s[t.a] * s[t.b]);
      cplx acc = std::exp(e);
      for (uint64_t i = 1; i < chunk; ++i) {
        const int q = std::countr_zero(i);
        for (int ti : touching[q]) {
          const Term& t = terms[ti];
          e -= 2.0 * t.w * (t.b < 0 ? s[t.a] : s[t.a] * s[t.b]);
        }
        s[q] = -s[q];
        acc += std::exp(e.real()) * cplx(std::cos(e.imag()), std::sin(e.imag()));
      }
      partial[k] = acc;
    }
  };

  const int nt = static_cast<int>(std::min<uint64_t>(detail::resolve_threads(opt.threads), nchunks));
  if (nt <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
    for (auto& th : pool) th.join();
  }
  return {detail::pairwise_sum(std::move(partial)), 0, "brute", total};
}

// Column sweep over the 2^n spin states of one column. Each column's vector is
// rescaled to unit max-modulus, the scale kept in log_scale.
inline ExactResult transfer_matrix_Z(const IsingInstance& x) {
  const int n = x.n(), m = x.m();
  if (n > 14) throw std::invalid_argument("transfer matrix limited to n <= 14");
  const size_t dim = size_t{1} << n;
  std::vector<cplx> v(dim), col(dim);
  double log_scale = 0;

  auto sign = [](size_t s, int r) { return ((s >> r) & 1) ? -1.0 : 1.0; };
  auto column_weights = [&](int c) {
    for (size_t s = 0; s < dim; ++s) {
      cplx e{};
      for (int r = 0; r < n; ++r) {
        e += x.h(r, c) * sign(s, r);
        if (r + 1 < n) e += x.jv(r, c) * (sign(s, r) * sign(s, r + 1));
      }
      col[s] = std::exp(e);
    }
  };
  auto rescale = [&] {
    double mx = 0;
    for (auto& a : v) mx = std::max(mx, std::abs(a));
    if (mx > 0 && std::isfinite(mx)) {
      for (auto& a : v) a /= mx;
      log_scale += std::log(mx);
    }
  };

  column_weights(0);
  v = col;
  rescale();
  for (int c = 1; c < m; ++c) {
    for (int r = 0; r < n; ++r) {
      const cplx ep = std::exp(x.jh(r, c - 1)), em = std::exp(-x.jh(r, c - 1));
      const size_t bit = size_t{1} << r;
      for (size_t s = 0; s < dim; ++s) {
        if (s & bit) continue;
        cplx a0 = v[s], a1 = v[s | bit];
        v[s] = ep * a0 + em * a1;
        v[s | bit] = em * a0 + ep * a1;
      }
    }
    column_weights(c);
    for (size_t s = 0; s < dim; ++s) v[s] *= col[s];
    rescale();
  }
  cplx z{};
  for (auto a : v) z += a;
  ExactResult res{z, log_scale, "transfer", dim};
  // fold the scale back in when the plain value is representable
  if (std::abs(log_scale) < 600) {
    res.z = z * std::exp(log_scale);
    res.log_scale = 0;
  }
  return res;
}

struct FreeEnergyReport {
  double free_energy;  // ln z / (nm), beta read as 1
  double epsilon;      // ln(1 + delta / (poly z)) / (nm)
};

inline FreeEnergyReport free_energy_report(const IsingInstance& x, cplx z, double delta, double poly) {
  if (!is_physical(x)) throw std::invalid_argument("free energy report needs a physical instance");
  if (!(z.real() > 0) || std::abs(z.imag()) > 1e-9 * std::abs(z.real()))
    throw std::invalid_argument("partition function must be real and positive");
  const double nm = x.num_vertices();
  return {std::log(z.real()) / nm, std::log1p(delta / (poly * z.real())) / nm};
}

}  // namespace isingq
