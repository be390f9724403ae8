#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "isingq/graph_state.hpp"
#include "isingq/linalg.hpp"
#include "isingq/model.hpp"
#include "isingq/oracle.hpp"
#include "isingq/simulator.hpp"

namespace isingq {

// ---- gate set ---------------------------------------------------------------

inline Mat4 gate_u1() { return kron(gates::Z(), gates::Z()); }
inline Mat4 gate_u2() { return gate_u1() * kron(gates::Zrot(-kPi / 4), Mat2::identity()); }
inline Mat4 gate_u3() { return gate_u1() * kron(gates::Xrot(-kPi / 4), Mat2::identity()); }
inline Mat4 gate_u4() {
  const Mat2 I = Mat2::identity();
  return kron(gates::Sdg(), gates::Z()) * gates::CZ() * kron(gates::Xrot(-kPi / 4), I) * gates::CZ() *
         kron(gates::Sdg(), I);
}

inline std::array<Mat4, 4> gate_set() { return {gate_u1(), gate_u2(), gate_u3(), gate_u4()}; }

inline Mat4 swap_wires(const Mat4& u) {
  static const int p[4] = {0, 2, 1, 3};
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(p[i], p[j]) = u(i, j);
  return r;
}

// U1..U4 plus the variants acting on the second wire (suffix m)
inline const std::map<std::string, Mat4>& cell_targets() {
  static const std::map<std::string, Mat4> t = {
      {"I", Mat4::identity()},        {"U1", gate_u1()},
      {"U2", gate_u2()},              {"U3", gate_u3()},
      {"U4", gate_u4()},              {"U2m", swap_wires(gate_u2())},
      {"U3m", swap_wires(gate_u3())}, {"U4m", swap_wires(gate_u4())},
  };
  return t;
}

struct IdentityCheck {
  std::string name;
  double distance;  // global-phase-free
};

inline Mat4 mat_pow(const Mat4& u, int k) {
  Mat4 r = Mat4::identity();
  for (int i = 0; i < k; ++i) r = r * u;
  return r;
}

inline std::vector<IdentityCheck> verify_identities() {
  const Mat2 I = Mat2::identity();
  const Mat4 u1 = gate_u1(), u2 = gate_u2(), u3 = gate_u3(), u4 = gate_u4();
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, const auto& a, const auto& b) {
    out.push_back({std::move(name), phase_free_distance(a, b)});
  };
  int k = 0;
  for (const auto& u : gate_set()) add("U" + std::to_string(++k) + " unitary", adjoint(u) * u, Mat4::identity());
  add("U1^2 = I", u1 * u1, Mat4::identity());
  add("T = (U1U2)^7", mat_pow(u1 * u2, 7), kron(gates::T(), I));
  for (k = 0; k < 8; ++k) {
    add("Z(" + std::to_string(k) + "pi/4) = (U1U2)^" + std::to_string(8 - k), mat_pow(u1 * u2, 8 - k),
        kron(gates::Zrot(k * kPi / 4), I));
    add("X(" + std::to_string(k) + "pi/4) = (U1U3)^" + std::to_string(8 - k), mat_pow(u1 * u3, 8 - k),
        kron(gates::Xrot(k * kPi / 4), I));
  }
  add("H = Z(pi/2)X(pi/2)Z(pi/2)", gates::Zrot(kPi / 2) * gates::Xrot(kPi / 2) * gates::Zrot(kPi / 2), gates::H());
  // control on the second wire
  const Mat4 cnot21 = swap_wires(gates::CNOT());
  add("CNOT = (X(pi/2)I)(Z(pi/2)Z(-pi/2))U4U1U4(Z(pi/2)I)",
      kron(gates::Xrot(kPi / 2), I) * kron(gates::Zrot(kPi / 2), gates::Zrot(-kPi / 2)) * u4 * u1 * u4 *
          kron(gates::Zrot(kPi / 2), I),
      cnot21);
  return out;
}

// Operator Schmidt rank of a two-qubit operator (1 for product operators).
inline int operator_schmidt_rank(const Mat4& u, double tol = 1e-9) {
  // realignment: R[(i1 j1), (i2 j2)] = u[(i1 i2), (j1 j2)]
  std::array<std::array<cplx, 4>, 4> r{};
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) r[2 * i1 + j1][2 * i2 + j2] = u(2 * i1 + i2, 2 * j1 + j2);
  // rank by Gaussian elimination with partial pivoting
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = rank;
    for (int i = rank; i < 4; ++i)
      if (std::abs(r[i][col]) > std::abs(r[piv][col])) piv = i;
    if (std::abs(r[piv][col]) < tol) continue;
    std::swap(r[piv], r[rank]);
    for (int i = rank + 1; i < 4; ++i) {
      const cplx f = r[i][col] / r[rank][col];
      for (int j = col; j < 4; ++j) r[i][j] -= f * r[rank][j];
    }
    ++rank;
  }
  return rank;
}

// ---- unit cell ----------------------------------------------------------------
//
// A cell is 15 lattice columns. Column c applies the bridge e^{i pi/4 ZZ} if c
// is a bridge column, then He^{i pi/4 Z} on each wire, then (c < 14) the
// horizontal-edge gate. Column 14's horizontal edge joins the next cell and is
// fixed to i pi/4; it acts as that cell's prefix.

namespace cell {

constexpr int kWidth = 15;
constexpr int kBridges[2] = {4, 7};

// horizontal edges with a fixed value i pi/4 inside a cell
inline bool fixed_column(int c) { return c == 4 || c == 7 || c == kWidth - 1; }

inline bool bridge_column(int c) { return c == kBridges[0] || c == kBridges[1]; }

inline const Mat2& vertex_gate() {
  static const Mat2 v = gates::H() * gates::expZ({0, kPi / 4});
  return v;
}
// horizontal gate e^{i pi/4} H e^{i xi Z}: xi = -pi/4 for i pi/4, -pi/8 for Omega
inline const Mat2& edge_s() {
  static const Mat2 m = std::polar(1.0, kPi / 4) * (gates::H() * gates::expZ({0, -kPi / 4}));
  return m;
}
inline const Mat2& edge_t() {
  static const Mat2 m = std::polar(1.0, kPi / 4) * (gates::H() * gates::expZ({0, -kPi / 8}));
  return m;
}
inline const Mat4& bridge() {
  static const Mat4 b = gates::expZZ({0, kPi / 4});
  return b;
}

enum class Prefix { H, S };

inline const Mat2& prefix_matrix(Prefix p) {
  static const Mat2 h = gates::H();
  return p == Prefix::H ? h : edge_s();
}

inline std::vector<int> free_columns() {
  std::vector<int> f;
  for (int c = 0; c < kWidth - 1; ++c)
    if (!fixed_column(c)) f.push_back(c);
  return f;
}

// single-wire product of columns [c0, c1); bits select Omega on free columns, in order
inline Mat2 segment(int c0, int c1, uint32_t bits) {
  Mat2 m = Mat2::identity();
  int j = 0;
  for (int c = c0; c < c1; ++c) {
    m = vertex_gate() * m;
    if (c < kWidth - 1) {
      bool omega = false;
      if (!fixed_column(c)) omega = (bits >> j++) & 1;
      m = (omega ? edge_t() : edge_s()) * m;
    }
  }
  return m;
}

inline int free_in(int c0, int c1) {
  int k = 0;
  for (int c = c0; c < c1 && c < kWidth - 1; ++c) k += !fixed_column(c);
  return k;
}

}  // namespace cell

// omega[c] is true where the horizontal edge after column c carries Omega.
using WirePattern = std::array<bool, cell::kWidth - 1>;

inline Mat2 wire_unitary(const WirePattern& w, cell::Prefix p) {
  Mat2 m = cell::prefix_matrix(p);
  for (int c = 0; c < cell::kWidth; ++c) {
    m = cell::vertex_gate() * m;
    if (c < cell::kWidth - 1) m = (w[c] ? cell::edge_t() : cell::edge_s()) * m;
  }
  return m;
}

struct CellPattern {
  std::string gate;
  cell::Prefix prefix = cell::Prefix::S;
  std::array<WirePattern, 2> wires{};  // first and second wire of the pair
  Mat4 realized;                       // exact operator of the cell including its prefix
  double phase = 0;                    // realized = e^{i phase} target
  double distance = 0;
  int omega_count() const {
    int k = 0;
    for (const auto& w : wires)
      for (bool b : w) k += b;
    return k;
  }
};

inline Mat4 pair_unitary(const std::array<WirePattern, 2>& w, cell::Prefix p) {
  const Mat2& pm = cell::prefix_matrix(p);
  Mat4 m = kron(pm, pm);
  for (int c = 0; c < cell::kWidth; ++c) {
    if (cell::bridge_column(c)) m = cell::bridge() * m;
    m = kron(cell::vertex_gate(), cell::vertex_gate()) * m;
    if (c < cell::kWidth - 1) m = kron(w[0][c] ? cell::edge_t() : cell::edge_s(), w[1][c] ? cell::edge_t() : cell::edge_s()) * m;
  }
  return m;
}

namespace detail {

using Key = std::array<long long, 8>;
struct KeyHash {
  size_t operator()(const Key& k) const {
    size_t h = 0;
    for (long long v : k) h = h * 1000003u ^ std::hash<long long>()(v);
    return h;
  }
};

// matrix modulo global phase, rounded
inline Key phase_key(const Mat2& m) {
  int idx = 0;
  double best = 0;
  for (int i = 0; i < 4; ++i)
    if (std::abs(m.a[i]) > best + 1e-6) {
      best = std::abs(m.a[i]);
      idx = i;
    }
  const cplx ph = std::conj(m.a[idx]) / std::abs(m.a[idx]);
  Key k;
  for (int i = 0; i < 4; ++i) {
    const cplx v = m.a[i] * ph;
    k[2 * i] = std::llround(v.real() * 1e6);
    k[2 * i + 1] = std::llround(v.imag() * 1e6);
  }
  return k;
}

// N = A (x) B for unitary N; false when N is entangling
inline bool split_product(const Mat4& n, Mat2& a, Mat2& b) {
  int bi = 0, bj = 0;
  double best = -1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) s += std::norm(n(2 * i + k, 2 * j + l));
      if (s > best) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) b(k, l) = n(2 * bi + k, 2 * bj + l);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx ip{};
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) ip += std::conj(b(k, l)) * n(2 * i + k, 2 * j + l);
      a(i, j) = ip / best;
    }
  if (max_abs_diff(kron(a, b), n) > 1e-8) return false;
  // move the scale into a so that b is unitary
  const double nb = std::sqrt(best / 2);
  for (auto& v : b.a) v /= nb;
  for (auto& v : a.a) v *= nb;
  return true;
}

inline WirePattern expand(uint32_t b1, uint32_t b2, uint32_t b3) {
  WirePattern w{};
  const auto fc = cell::free_columns();
  const int n1 = cell::free_in(0, cell::kBridges[0]), n2 = cell::free_in(cell::kBridges[0], cell::kBridges[1]);
  for (size_t j = 0; j < fc.size(); ++j) {
    const int jj = static_cast<int>(j);
    bool v = jj < n1 ? (b1 >> jj) & 1 : jj < n1 + n2 ? (b2 >> (jj - n1)) & 1 : (b3 >> (jj - n1 - n2)) & 1;
    w[fc[j]] = v;
  }
  return w;
}

inline void finish(CellPattern& p, const Mat4& target) {
  p.realized = pair_unitary(p.wires, p.prefix);
  cplx ip{};
  for (int i = 0; i < 16; ++i) ip += std::conj(target.a[i]) * p.realized.a[i];
  p.phase = std::arg(ip);
  p.distance = max_abs_diff(p.realized, std::polar(1.0, p.phase) * target);
}

}  // namespace detail

// Meet in the middle over the three wire segments cut by the two bridges:
// enumerate both wires' first and middle segments, and look the remaining
// last-segment factors up in a table. Among all hits the pattern with the
// fewest Omega edges wins (ties: first found).
inline std::map<std::string, CellPattern> search_patterns(cell::Prefix prefix = cell::Prefix::S) {
  using namespace cell;
  const int b0 = kBridges[0], b1 = kBridges[1];
  const int n1 = free_in(0, b0), n2 = free_in(b0, b1), n3 = free_in(b1, kWidth);
  std::vector<Mat2> s1(1u << n1), s2(1u << n2);
  for (uint32_t b = 0; b < s1.size(); ++b) s1[b] = segment(0, b0, b) * prefix_matrix(prefix);
  for (uint32_t b = 0; b < s2.size(); ++b) s2[b] = segment(b0, b1, b);
  std::unordered_map<detail::Key, std::vector<uint32_t>, detail::KeyHash> last;
  std::vector<Mat2> s3(1u << n3);
  for (uint32_t b = 0; b < s3.size(); ++b) {
    s3[b] = segment(b1, kWidth, b);
    last[detail::phase_key(s3[b])].push_back(b);
  }
  auto popcount = [](uint32_t v) { return std::popcount(v); };

  std::map<std::string, CellPattern> out;
  for (const auto& [name, target] : cell_targets()) {
    CellPattern best;
    int best_omega = 1 << 20;
    for (uint32_t a1 = 0; a1 < s1.size(); ++a1)
      for (uint32_t a2 = 0; a2 < s1.size(); ++a2) {
        const Mat4 first = bridge() * kron(s1[a1], s1[a2]);
        for (uint32_t m1 = 0; m1 < s2.size(); ++m1)
          for (uint32_t m2 = 0; m2 < s2.size(); ++m2) {
            const Mat4 mid = bridge() * kron(s2[m1], s2[m2]) * first;
            // target = (L1 (x) L2) mid  =>  L1 (x) L2 = target mid^dagger
            Mat2 l1, l2;
            if (!detail::split_product(target * adjoint(mid), l1, l2)) continue;
            auto f1 = last.find(detail::phase_key(l1));
            auto f2 = last.find(detail::phase_key(l2));
            if (f1 == last.end() || f2 == last.end()) continue;
            for (uint32_t e1 : f1->second)
              for (uint32_t e2 : f2->second) {
                const int om = popcount(a1) + popcount(a2) + popcount(m1) + popcount(m2) + popcount(e1) +
                               popcount(e2);
                if (om >= best_omega) continue;
                CellPattern p;
                p.gate = name;
                p.prefix = prefix;
                p.wires = {detail::expand(a1, m1, e1), detail::expand(a2, m2, e2)};
                detail::finish(p, target);
                if (p.distance > 1e-10) continue;
                best = p;
                best_omega = om;
              }
          }
      }
    if (best_omega < (1 << 20)) out[name] = best;
  }
  return out;
}

// Single-wire identity (no bridges) for the given prefix, fewest Omega edges.
inline WirePattern search_wire_identity(cell::Prefix prefix, double* phase = nullptr) {
  const auto fc = cell::free_columns();
  int best = 1 << 20;
  WirePattern found{};
  for (uint32_t b = 0; b < (1u << fc.size()); ++b) {
    WirePattern w{};
    for (size_t j = 0; j < fc.size(); ++j) w[fc[j]] = (b >> j) & 1;
    const Mat2 u = wire_unitary(w, prefix);
    if (phase_free_distance(u, Mat2::identity()) > 1e-10) continue;
    if (std::popcount(b) < best) {
      best = std::popcount(b);
      found = w;
      if (phase) *phase = std::arg(u(0, 0));
    }
  }
  if (best == (1 << 20)) throw std::runtime_error("no single-wire identity pattern for this prefix");
  return found;
}

// ---- brickwork graph state ----------------------------------------------------

struct BrickworkState {
  GraphState graph;
  int gamma_count = 0;                   // qubits removed by Pauli projections
  std::vector<int> remaining;            // free horizontal-edge qubits
  std::vector<std::pair<int, int>> bridges;  // (row, column) of vertical bridges
};

// Pair (r, r+1) is bridged in cell k when r has the parity of k.
inline std::vector<std::pair<int, int>> brickwork_bridges(int n, int m) {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k * cell::kWidth < m; ++k)
    for (int r = k % 2; r + 1 < n; r += 2)
      for (int b : cell::kBridges) out.emplace_back(r, k * cell::kWidth + b);
  return out;
}

// Projects every qubit whose bra is a fixed Pauli eigenbra in a Problem-2
// lattice: vertices (beta h = i pi/4), all vertical edges (0 or the bridge
// value i pi/4), and horizontal edges on the fixed columns. What remains are
// the free horizontal qubits, joined into a brickwork.
inline BrickworkState build_brickwork(int n, int m, const std::vector<std::pair<int, int>>* bridge_list = nullptr) {
  if (n < 2) throw std::invalid_argument("brickwork needs at least two wires");
  if (m < 1) throw std::invalid_argument("brickwork needs at least one column");
  const auto bridges = bridge_list ? *bridge_list : brickwork_bridges(n, m);
  if (!bridge_list && m % cell::kWidth != 0)
    throw std::invalid_argument("brickwork width must be a multiple of " + std::to_string(cell::kWidth));
  DecoratedLayout L{n, m};
  BrickworkState out;
  out.graph = decorated_graph(n, m);
  out.bridges = bridges;
  std::set<std::pair<int, int>> is_bridge(bridges.begin(), bridges.end());
  const double s = 1 / std::sqrt(2.0);
  const cplx q{0, kPi / 4};
  auto bra = [](cplx z) {
    const double nn = detail::weight_norm(z);
    return Bra{std::exp(z) / nn, std::exp(-z) / nn};
  };
  auto folded = [&](cplx z) {
    const Bra b = bra(z);
    return Bra{(b[0] + b[1]) * s, (b[0] - b[1]) * s};
  };
  auto project = [&](int v, const Bra& b) {
    if (!out.graph.project(v, b)) throw std::logic_error("fixed projection is not Pauli");
    ++out.gamma_count;
  };
  for (int r = 0; r + 1 < n; ++r)
    for (int c = 0; c < m; ++c) project(L.vertical(r, c), folded(is_bridge.count({r, c}) ? q : cplx{}));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) project(L.vertex(r, c), bra(q));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c + 1 < m; ++c) {
      if (cell::fixed_column(c % cell::kWidth))
        project(L.horizontal(r, c), folded(q));
      else
        out.remaining.push_back(L.horizontal(r, c));
    }
  // The Y projections at a bridge leave a triangle on the upper wire; a
  // state-preserving local complementation at the qubit after the bridge
  // turns it into a single rung.
  for (const auto& [r, c] : bridges)
    if (c + 1 < m - 1 && !cell::fixed_column((c + 1) % cell::kWidth))
      out.graph.local_complement_preserving(L.horizontal(r, c + 1));
  return out;
}

// Reference brickwork topology: one path per wire through the free
// horizontal qubits, plus a rung between the wires after every bridge.
inline std::map<int, std::set<int>> reference_brickwork(int n, int m, const std::vector<std::pair<int, int>>& bridges) {
  DecoratedLayout L{n, m};
  std::map<int, std::set<int>> adj;
  auto link = [&](int a, int b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  for (int r = 0; r < n; ++r) {
    int prev = -1;
    for (int c = 0; c + 1 < m; ++c) {
      if (cell::fixed_column(c % cell::kWidth)) continue;
      const int v = L.horizontal(r, c);
      adj[v];
      if (prev >= 0) link(prev, v);
      prev = v;
    }
  }
  for (const auto& [r, c] : bridges)
    if (c + 1 < m - 1) link(L.horizontal(r, c + 1), L.horizontal(r + 1, c + 1));
  return adj;
}

// Backtracking isomorphism test for small graphs.
inline bool isomorphic(const std::map<int, std::set<int>>& a, const std::map<int, std::set<int>>& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> va, vb;
  for (const auto& [v, nb] : a) va.push_back(v);
  for (const auto& [v, nb] : b) vb.push_back(v);
  size_t ea = 0, eb = 0;
  for (const auto& [v, nb] : a) ea += nb.size();
  for (const auto& [v, nb] : b) eb += nb.size();
  if (ea != eb) return false;
  // order a's vertices so each one after the first touches an earlier one when possible
  std::vector<int> order;
  std::set<int> seen;
  for (int root : va) {
    if (seen.count(root)) continue;
    std::vector<int> stack = {root};
    seen.insert(root);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int u : a.at(v))
        if (!seen.count(u)) {
          seen.insert(u);
          stack.push_back(u);
        }
    }
  }
  std::map<int, int> map_ab;
  std::set<int> used;
  std::function<bool(size_t)> extend = [&](size_t i) {
    if (i == order.size()) return true;
    const int v = order[i];
    for (int w : vb) {
      if (used.count(w) || a.at(v).size() != b.at(w).size()) continue;
      bool ok = true;
      for (const auto& [x, y] : map_ab)
        if (a.at(v).count(x) != b.at(w).count(y)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      map_ab[v] = w;
      used.insert(w);
      if (extend(i + 1)) return true;
      map_ab.erase(v);
      used.erase(w);
    }
    return false;
  };
  return extend(0);
}

// ---- circuit embedding ---------------------------------------------------------

struct TargetGate {
  std::string name;  // H, T, CNOT (control, target) or I
  std::vector<int> wires;
};

struct TargetCircuit {
  int n = 2;
  std::vector<TargetGate> gates;

  TargetCircuit& add(std::string name, std::vector<int> wires = {}) {
    gates.push_back({std::move(name), std::move(wires)});
    return *this;
  }

  Circuit to_circuit() const {
    Circuit c(n);
    for (const auto& g : gates) {
      if (g.name == "H") c.add(Gate::h(g.wires.at(0)));
      else if (g.name == "T") c.add(Gate::generic(g.wires.at(0), gates::T()));
      else if (g.name == "CNOT") c.add(Gate::generic(g.wires.at(0), g.wires.at(1), gates::CNOT()));
      else if (g.name != "I") throw std::invalid_argument("unsupported gate: " + g.name);
    }
    return c;
  }
};

// One cell of the embedding: pattern `gate` on wires (first, first+1), every
// other wire idle. gate "idle" leaves all wires idle.
struct CellOp {
  std::string gate;
  int first = 0;
};

inline const std::map<std::string, CellPattern>& cell_patterns() {
  static const std::map<std::string, CellPattern> p = search_patterns(cell::Prefix::S);
  return p;
}

inline const WirePattern& idle_wire() {
  static const WirePattern w = search_wire_identity(cell::Prefix::S);
  return w;
}

// Cell sequence (in time order) realizing the target. The word equals the
// target only up to a global phase per gate; those phases are summed into
// *phase.
inline std::vector<CellOp> cell_word(const TargetCircuit& t, double* phase = nullptr) {
  if (t.n < 2) throw std::invalid_argument("embedding needs at least two wires");
  std::vector<CellOp> out;
  double total = 0;
  auto rep = [&](std::string g, int first, int k) {
    for (int i = 0; i < k; ++i) {
      out.push_back({g, first});
      out.push_back({"U1", first});
    }
  };
  auto check = [&](int w) {
    if (w < 0 || w >= t.n) throw std::out_of_range("target wire out of range");
  };
  const Mat2 I = Mat2::identity();
  for (const auto& g : t.gates) {
    const size_t begin = out.size();
    int first = 0;
    Mat4 want = Mat4::identity();
    if (g.name == "I") {
      out.push_back({"idle", 0});
      continue;
    } else if (g.name == "H" || g.name == "T") {
      if (g.wires.size() != 1) throw std::invalid_argument(g.name + " takes one wire");
      const int w = g.wires[0];
      check(w);
      const bool low = w + 1 < t.n;
      first = low ? w : w - 1;
      const std::string z = low ? "U2" : "U2m", x = low ? "U3" : "U3m";
      const Mat2 u = g.name == "T" ? gates::T() : gates::H();
      want = low ? kron(u, I) : kron(I, u);
      // Z(k pi/4) = (U1U2)^{8-k}, X(k pi/4) = (U1U3)^{8-k}
      if (g.name == "T") {
        rep(z, first, 7);
      } else {
        rep(z, first, 6);
        rep(x, first, 6);
        rep(z, first, 6);
      }
    } else if (g.name == "CNOT") {
      if (g.wires.size() != 2) throw std::invalid_argument("CNOT takes control and target");
      const int c = g.wires[0], tg = g.wires[1];
      check(c);
      check(tg);
      if (std::abs(c - tg) != 1) throw std::invalid_argument("CNOT wires must be adjacent");
      // written for control on the second wire of the pair; mirrored otherwise
      const bool second = c > tg;
      first = std::min(c, tg);
      want = second ? swap_wires(gates::CNOT()) : gates::CNOT();
      const std::string s = second ? "" : "m", o = second ? "m" : "";
      rep("U2" + s, first, 6);
      out.push_back({"U4" + s, first});
      out.push_back({"U1", first});
      out.push_back({"U4" + s, first});
      rep("U2" + s, first, 6);
      rep("U2" + o, first, 2);
      rep("U3" + s, first, 6);
    } else {
      throw std::invalid_argument("unsupported gate: " + g.name);
    }
    Mat4 prod = Mat4::identity();
    for (size_t i = begin; i < out.size(); ++i) prod = cell_targets().at(out[i].gate) * prod;
    cplx ip{};
    for (int i = 0; i < 16; ++i) ip += std::conj(want.a[i]) * prod.a[i];
    if (phase_free_distance(prod, want) > 1e-10) throw std::logic_error("gate word does not realize " + g.name);
    total += std::arg(ip);
  }
  if (out.empty()) out.push_back({"idle", 0});
  if (phase) *phase = total;
  return out;
}

struct EmbedReport {
  IsingInstance instance;
  std::vector<CellOp> word;
  int cells = 0;  // gate cells, excluding the entry cell
  int gamma_count = 0, delta_count = 0, omega_count = 0;
  // log2 of the scales; the plain values under- or overflow beyond a few cells
  double log2_delta = 0, log2_delta_o = 0, log2_delta_t = 0, log2_delta_c = 0;
  double delta = 0, delta_t = 0, delta_c = 0;
  double phase = 0;          // realized circuit = e^{i phase} target
  cplx target_amplitude;     // <0|target|0>
  cplx amplitude;            // Delta^{-1} Z from the transfer matrix
  double error = -1;         // |amplitude - e^{i phase} target_amplitude|
  double modulus_error = -1; // ||amplitude| - |target_amplitude||
  bool verified = false;
};

inline double log2_delta_o(const IsingInstance& x) {
  double l = x.num_vertices() / 2.0;
  for (auto z : x.h_values()) l += std::log2(detail::weight_norm(z));
  for (auto z : x.jv_values()) l += std::log2(detail::weight_norm(z));
  for (auto z : x.jh_values()) l += std::log2(detail::weight_norm(z));
  return l;
}

// Problem-2 instance whose amplitude Delta^{-1} Z is <0|target|0> up to a
// tracked global phase. The lattice starts with an entry cell of unbridged
// wires (a diagonal gate on |0>), then one cell per word letter.
inline EmbedReport embed_circuit(const TargetCircuit& t, bool verify = true) {
  using namespace cell;
  const auto& pats = cell_patterns();
  const auto& idle = idle_wire();
  EmbedReport rep;
  double phase = 0;
  rep.word = cell_word(t, &phase);
  rep.cells = static_cast<int>(rep.word.size());
  const int n = t.n, m = kWidth * (rep.cells + 1);
  IsingInstance x(n, m);
  const cplx q{0, kPi / 4};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      x.h(r, c) = q;
      if (c + 1 < m) x.jh(r, c) = q;
    }

  auto place = [&](int r, int k, const WirePattern& w) {
    for (int c = 0; c + 1 < kWidth; ++c)
      if (w[c]) x.jh(r, k * kWidth + c) = kOmega;
  };
  // entry cell: every wire all-i pi/4, which is diagonal after the H prefix
  const WirePattern entry{};
  for (int r = 0; r < n; ++r) place(r, 0, entry);

  StateVector psi(n);
  auto apply1 = [&](int r, const Mat2& u) { psi.apply(Gate::generic(r, u)); };
  for (int r = 0; r < n; ++r) apply1(r, wire_unitary(entry, Prefix::H));

  for (int r = 0; r < n; ++r) phase += std::arg(wire_unitary(entry, Prefix::H)(0, 0));
  const Mat2 idle_u = wire_unitary(idle, Prefix::S);
  const double idle_phase = std::arg(idle_u(0, 0));
  for (int k = 1; k <= rep.cells; ++k) {
    const auto& op = rep.word[k - 1];
    int a = -1;
    if (op.gate != "idle") {
      auto it = pats.find(op.gate);
      if (it == pats.end()) throw std::logic_error("no cell pattern for " + op.gate);
      a = op.first;
      const CellPattern& p = it->second;
      place(a, k, p.wires[0]);
      place(a + 1, k, p.wires[1]);
      for (int b : kBridges) x.jv(a, k * kWidth + b) = q;
      psi.apply(Gate::generic(a, a + 1, p.realized));
      phase += p.phase;
    }
    for (int r = 0; r < n; ++r) {
      if (a >= 0 && (r == a || r == a + 1)) continue;
      place(r, k, idle);
      apply1(r, idle_u);
      phase += idle_phase;
    }
  }
  rep.instance = std::move(x);
  const IsingInstance& inst = rep.instance;

  rep.gamma_count = 0;
  rep.delta_count = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c + 1 < m; ++c) (fixed_column(c % kWidth) ? rep.gamma_count : rep.delta_count) += 1;
  rep.gamma_count += inst.num_vertices() + (n - 1) * m;
  for (auto z : inst.jh_values()) rep.omega_count += z == kOmega;

  rep.log2_delta_o = log2_delta_o(inst);
  rep.log2_delta_t = -rep.gamma_count / 2.0;
  rep.log2_delta_c = -(rep.delta_count - n) / 2.0;
  rep.log2_delta = rep.log2_delta_o + rep.log2_delta_t + rep.log2_delta_c;
  rep.delta = std::exp2(rep.log2_delta);
  rep.delta_t = std::exp2(rep.log2_delta_t);
  rep.delta_c = std::exp2(rep.log2_delta_c);
  rep.phase = std::remainder(phase, 2 * kPi);

  rep.target_amplitude = run_circuit(t.to_circuit());
  // the cell product, phase included, must reproduce the target
  const cplx realized = psi[0];
  if (std::abs(realized - std::polar(1.0, rep.phase) * rep.target_amplitude) > 1e-9)
    throw std::logic_error("cell product does not realize the target");

  if (verify) {
    const ExactResult z = transfer_matrix_Z(inst);
    rep.amplitude = z.z * std::exp(z.log_scale - rep.log2_delta * std::log(2.0));
    rep.error = std::abs(rep.amplitude - std::polar(1.0, rep.phase) * rep.target_amplitude);
    rep.modulus_error = std::abs(std::abs(rep.amplitude) - std::abs(rep.target_amplitude));
    rep.verified = true;
  }
  return rep;
}

}  // namespace isingq
