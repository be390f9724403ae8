#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "isingq/circuit.hpp"
#include "isingq/rng.hpp"

namespace isingq {

// Qubit 0 is the least significant bit of the amplitude index.
class StateVector {
 public:
  explicit StateVector(int k) : k_(k) {
    if (k < 0 || k > 30) throw std::invalid_argument("state vector size out of range");
    amp_.assign(size_t{1} << k, cplx{});
    amp_[0] = 1;
  }

  int num_qubits() const { return k_; }
  size_t dim() const { return amp_.size(); }
  cplx& operator[](size_t i) { return amp_[i]; }
  cplx operator[](size_t i) const { return amp_[i]; }
  std::vector<cplx>& data() { return amp_; }
  const std::vector<cplx>& data() const { return amp_; }

  // accumulated scaling from non-unitary steps; projections here are left
  // unnormalized, so this stays 1 unless a caller renormalizes
  double norm_factor = 1;

  double norm2() const {
    double s = 0;
    for (auto a : amp_) s += std::norm(a);
    return s;
  }

  void apply1(int q, const Mat2& u) { apply1_masked(q, u, 0, 0); }
  void apply2(int qa, int qb, const Mat4& u) { apply2_masked(qa, qb, u, 0, 0); }

  void apply_diag1(int q, cplx d0, cplx d1, size_t mask = 0, size_t want = 0) {
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amp_.size(); ++i)
      if ((i & mask) == want) amp_[i] *= (i & bit) ? d1 : d0;
  }

  // apply only on basis states with (index & mask) == want; used for control
  void apply1_masked(int q, const Mat2& u, size_t mask, size_t want) {
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amp_.size(); ++i) {
      if ((i & bit) || (i & mask) != want) continue;
      cplx a0 = amp_[i], a1 = amp_[i | bit];
      amp_[i] = u(0, 0) * a0 + u(0, 1) * a1;
      amp_[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  // row index of u is 2*bit(qa) + bit(qb)
  void apply2_masked(int qa, int qb, const Mat4& u, size_t mask, size_t want) {
    const size_t ba = size_t{1} << qa, bb = size_t{1} << qb;
    for (size_t i = 0; i < amp_.size(); ++i) {
      if ((i & ba) || (i & bb) || (i & mask) != want) continue;
      const size_t idx[4] = {i, i | bb, i | ba, i | ba | bb};
      cplx in[4] = {amp_[idx[0]], amp_[idx[1]], amp_[idx[2]], amp_[idx[3]]};
      for (int r = 0; r < 4; ++r) {
        cplx s{};
        for (int c = 0; c < 4; ++c) s += u(r, c) * in[c];
        amp_[idx[r]] = s;
      }
    }
  }

  void apply(const Gate& g, size_t mask = 0, size_t want = 0) {
    g.validate();
    for (int a : g.q)
      if (a < 0 || a >= k_) throw std::out_of_range("gate qubit out of range");
    switch (g.kind) {
      case GateKind::GlobalPhase: {
        const cplx ph = std::polar(1.0, g.p[0]);
        for (size_t i = 0; i < amp_.size(); ++i)
          if ((i & mask) == want) amp_[i] *= ph;
        return;
      }
      case GateKind::PhaseDiag:
        apply_diag1(g.q[0], std::polar(1.0, g.p[0]), std::polar(1.0, g.p[1]), mask, want);
        return;
      case GateKind::ZRot:
        apply_diag1(g.q[0], std::polar(1.0, -g.p[0] / 2), std::polar(1.0, g.p[0] / 2), mask, want);
        return;
      case GateKind::ProjectZero:
        if (mask != 0) throw std::invalid_argument("projection cannot be controlled");
        apply_diag1(g.q[0], 1, 0);
        return;
      case GateKind::ZZRot: {
        const cplx e0 = std::exp(cplx{g.p[0], g.p[1]}), e1 = std::exp(-cplx{g.p[0], g.p[1]});
        const size_t ba = size_t{1} << g.q[0], bb = size_t{1} << g.q[1];
        for (size_t i = 0; i < amp_.size(); ++i)
          if ((i & mask) == want) amp_[i] *= (((i & ba) != 0) == ((i & bb) != 0)) ? e0 : e1;
        return;
      }
      case GateKind::CZ: {
        const size_t both = (size_t{1} << g.q[0]) | (size_t{1} << g.q[1]);
        for (size_t i = 0; i < amp_.size(); ++i)
          if ((i & mask) == want && (i & both) == both) amp_[i] = -amp_[i];
        return;
      }
      case GateKind::CYRot: {
        const size_t cb = size_t{1} << g.q[0];
        apply1_masked(g.q[1], gates::Yrot(g.p[0]), mask | cb, want | cb);
        return;
      }
      case GateKind::Generic2Q:
        apply2_masked(g.q[0], g.q[1], matrix2(g), mask, want);
        return;
      default:
        apply1_masked(g.q[0], matrix1(g), mask, want);
        return;
    }
  }

 private:
  int k_;
  std::vector<cplx> amp_;
};

inline void check_size(int k, bool force = false) {
  if (k > 26 && !force) throw std::invalid_argument("too many qubits for state-vector simulation");
}

inline StateVector run_state(const Circuit& c, bool force = false) {
  check_size(c.num_qubits, force);
  StateVector s(c.num_qubits);
  for (const auto& g : c.gates) s.apply(g);
  return s;
}

// <0...0| C |0...0>, times the state's norm factor
inline cplx run_circuit(const Circuit& c, bool force = false) {
  StateVector s = run_state(c, force);
  return s[0] * s.norm_factor;
}

struct HadamardEstimate {
  double re = 0, im = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  double stderr_bound = 0;
  double p0_re = 0, p0_im = 0;  // exact outcome probabilities used for sampling
};

// Probability of reading 0 on the control of the Hadamard test; with
// imag=true the control gets S^dagger after the first H.
inline double hadamard_p0(const Circuit& c, bool imag) {
  if (!c.unitary()) throw std::invalid_argument("Hadamard test needs a unitary circuit");
  check_size(c.num_qubits + 1);
  const int anc = c.num_qubits;
  const size_t cb = size_t{1} << anc;
  StateVector s(c.num_qubits + 1);
  s.apply1(anc, gates::H());
  if (imag) s.apply1(anc, gates::Sdg());
  for (const auto& g : c.gates) s.apply(g, cb, cb);
  s.apply1(anc, gates::H());
  double p0 = 0;
  for (size_t i = 0; i < s.dim(); ++i)
    if (!(i & cb)) p0 += std::norm(s[i]);
  return std::min(1.0, std::max(0.0, p0));
}

inline HadamardEstimate hadamard_test(const Circuit& c, uint64_t samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  HadamardEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.p0_re = hadamard_p0(c, false);
  e.p0_im = hadamard_p0(c, true);
  Rng rng(seed);
  auto draw = [&](double p0) {
    uint64_t zeros = 0;
    for (uint64_t i = 0; i < samples; ++i) zeros += rng.uniform() < p0;
    return 2.0 * static_cast<double>(zeros) / static_cast<double>(samples) - 1.0;
  };
  e.re = draw(e.p0_re);
  e.im = draw(e.p0_im);
  e.stderr_bound = 1.0 / std::sqrt(static_cast<double>(samples));
  return e;
}

}  // namespace isingq
