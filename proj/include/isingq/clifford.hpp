#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "isingq/linalg.hpp"

namespace isingq {

// The 24 single-qubit Cliffords modulo global phase. Each element keeps one
// representative matrix; products are looked up in a table that also records
// the phase between the product and the stored representative.
class CliffordGroup {
 public:
  static constexpr int kSize = 24;

  static const CliffordGroup& instance() {
    static const CliffordGroup g;
    return g;
  }

  const Mat2& matrix(int a) const { return mats_[a]; }

  // mats[a] * mats[b] = e^{i phase(a,b)} mats[product(a,b)]
  int product(int a, int b) const { return table_[a][b]; }
  double phase(int a, int b) const { return phase_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }

  // index of u modulo phase, and the phase with u = e^{i ph} mats[index]
  int find(const Mat2& u, double* ph = nullptr) const {
    for (int i = 0; i < static_cast<int>(mats_.size()); ++i) {
      cplx ip{};
      for (int k = 0; k < 4; ++k) ip += std::conj(mats_[i].a[k]) * u.a[k];
      if (std::abs(std::abs(ip) - 2.0) < 1e-9) {
        if (ph) *ph = std::arg(ip);
        return i;
      }
    }
    throw std::invalid_argument("matrix is not a single-qubit Clifford");
  }

  int identity() const { return 0; }

 private:
  CliffordGroup() {
    const Mat2 gens[2] = {gates::H(), gates::S()};
    add(Mat2::identity());
    for (size_t i = 0; i < mats_.size(); ++i)
      for (const auto& g : gens) {
        Mat2 m = mats_[i] * g;
        if (lookup(m) < 0) add(m);
      }
    if (mats_.size() != kSize) throw std::logic_error("Clifford closure failed");
    for (int a = 0; a < kSize; ++a)
      for (int b = 0; b < kSize; ++b) {
        double ph = 0;
        table_[a][b] = find(mats_[a] * mats_[b], &ph);
        phase_[a][b] = ph;
        if (table_[a][b] == 0) inverse_[a] = b;
      }
  }

  // representatives are normalized so the first entry of modulus > 0.5 is real positive
  void add(Mat2 m) {
    for (auto v : m.a)
      if (std::abs(v) > 0.5) {
        const cplx ph = std::conj(v) / std::abs(v);
        for (auto& x : m.a) x *= ph;
        break;
      }
    for (auto& x : m.a) {
      if (std::abs(x.real()) < 1e-15) x.real(0);
      if (std::abs(x.imag()) < 1e-15) x.imag(0);
    }
    mats_.push_back(m);
  }

  int lookup(const Mat2& u) const {
    try {
      return find(u);
    } catch (const std::invalid_argument&) {
      return -1;
    }
  }

  std::vector<Mat2> mats_;
  std::array<std::array<int, kSize>, kSize> table_{};
  std::array<std::array<double, kSize>, kSize> phase_{};
  std::array<int, kSize> inverse_{};
};

// Named elements
namespace cliff {

inline int of(const Mat2& u) { return CliffordGroup::instance().find(u); }
inline int I() { return 0; }
inline int Z() { return of(gates::Z()); }
inline int X() { return of(gates::X()); }
inline int S() { return of(gates::S()); }
inline int Sdg() { return of(gates::Sdg()); }
inline int H() { return of(gates::H()); }

}  // namespace cliff

}  // namespace isingq
