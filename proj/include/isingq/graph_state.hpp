#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isingq/clifford.hpp"
#include "isingq/compile_unitary.hpp"
#include "isingq/linalg.hpp"
#include "isingq/rng.hpp"

namespace isingq {

using Bra = std::array<cplx, 2>;

enum class PauliBra { ZPlus, ZMinus, XPlus, XMinus, YPlus, YMinus };

inline Bra pauli_bra(PauliBra p) {
  const double s = 1 / std::sqrt(2.0);
  switch (p) {
    case PauliBra::ZPlus: return {1, 0};
    case PauliBra::ZMinus: return {0, 1};
    case PauliBra::XPlus: return {s, s};
    case PauliBra::XMinus: return {s, -s};
    case PauliBra::YPlus: return {s, cplx{0, -s}};
    case PauliBra::YMinus: return {s, cplx{0, s}};
  }
  return {};
}

inline const char* to_string(PauliBra p) {
  static const char* names[] = {"Z+", "Z-", "X+", "X-", "Y+", "Y-"};
  return names[static_cast<int>(p)];
}

// If b = w * pauli_bra(p) for a unit w, returns true and fills p and w.
inline bool identify_pauli_bra(const Bra& b, PauliBra* p, cplx* w) {
  for (int k = 0; k < 6; ++k) {
    const Bra v = pauli_bra(static_cast<PauliBra>(k));
    const cplx ov = std::conj(v[0]) * b[0] + std::conj(v[1]) * b[1];
    if (std::abs(std::abs(ov) - 1) < 1e-9 && std::abs(std::norm(b[0]) + std::norm(b[1]) - 1) < 1e-9) {
      *p = static_cast<PauliBra>(k);
      *w = ov;
      return true;
    }
  }
  return false;
}

// scalar * (tensor of frame Cliffords) |G>, frames acting on the ket.
class GraphState {
 public:
  GraphState() = default;

  void add_vertex(int v) {
    adj_.try_emplace(v);
    frame_.try_emplace(v, 0);
  }
  void add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("self loop");
    add_vertex(a);
    add_vertex(b);
    adj_[a].insert(b);
    adj_[b].insert(a);
  }
  void toggle_edge(int a, int b) {
    if (adj_[a].count(b)) {
      adj_[a].erase(b);
      adj_[b].erase(a);
    } else {
      adj_[a].insert(b);
      adj_[b].insert(a);
    }
  }

  bool has_vertex(int v) const { return adj_.count(v) > 0; }
  const std::set<int>& neighbors(int v) const { return adj_.at(v); }
  const std::map<int, std::set<int>>& adjacency() const { return adj_; }
  int frame(int v) const { return frame_.at(v); }
  Mat2 frame_matrix(int v) const { return CliffordGroup::instance().matrix(frame_.at(v)); }
  cplx scalar() const { return scalar_; }
  size_t size() const { return adj_.size(); }
  size_t num_edges() const {
    size_t e = 0;
    for (const auto& [v, nb] : adj_) e += nb.size();
    return e / 2;
  }
  std::vector<int> vertices() const {
    std::vector<int> vs;
    for (const auto& [v, nb] : adj_) vs.push_back(v);
    return vs;
  }

  void set_frame(int v, int c) { frame_.at(v) = c; }
  void scale(cplx s) { scalar_ *= s; }

  // frame(v) <- frame(v) * m, m a Clifford up to phase
  void right_multiply(int v, const Mat2& m) {
    const auto& g = CliffordGroup::instance();
    double ph = 0;
    const int c = g.find(m, &ph);
    const int f = frame_.at(v);
    scalar_ *= std::polar(1.0, ph + g.phase(f, c));
    frame_[v] = g.product(f, c);
  }

  // toggles all edges inside the neighbourhood of a
  void local_complement(int a) {
    std::vector<int> nb(adj_.at(a).begin(), adj_.at(a).end());
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) toggle_edge(nb[i], nb[j]);
  }

  // Local complementation at a with frames compensated so the state is unchanged:
  // e^{-i pi/4 X_a} prod_b e^{i pi/4 Z_b}|G> = e^{i pi/4 (|N|-1)} |tau_a G>.
  void local_complement_preserving(int a) {
    std::vector<int> nb(adj_.at(a).begin(), adj_.at(a).end());
    local_complement(a);
    scalar_ *= std::polar(1.0, kPi / 4 * (static_cast<double>(nb.size()) - 1));
    const double s = 1 / std::sqrt(2.0);
    right_multiply(a, Mat2{{s, cplx{0, s}, cplx{0, s}, s}});  // e^{i pi/4 X}
    for (int c : nb) right_multiply(c, gates::expZ({0, -kPi / 4}));
  }

  void remove_vertex(int a) {
    for (int b : adj_.at(a)) adj_[b].erase(a);
    adj_.erase(a);
    frame_.erase(a);
  }

  // Contracts vertex v with a bra that is a Pauli eigenbra after passing
  // through v's frame. Returns false (and leaves the state alone) otherwise.
  bool project(int v, const Bra& bra) {
    Bra b = through_frame(v, bra);
    PauliBra p;
    cplx w;
    if (!identify_pauli_bra(b, &p, &w)) return false;
    if ((p == PauliBra::XPlus || p == PauliBra::XMinus) && !adj_.at(v).empty()) {
      local_complement_preserving(*adj_.at(v).begin());
      b = through_frame(v, bra);
      if (!identify_pauli_bra(b, &p, &w) || (p != PauliBra::YPlus && p != PauliBra::YMinus))
        throw std::logic_error("X projection did not turn into Y");
    }
    const std::vector<int> nb(adj_.at(v).begin(), adj_.at(v).end());
    const double s = 1 / std::sqrt(2.0);
    switch (p) {
      case PauliBra::ZPlus:
      case PauliBra::ZMinus:
        scalar_ *= w * s;
        if (p == PauliBra::ZMinus)
          for (int u : nb) right_multiply(u, gates::Z());
        break;
      case PauliBra::YPlus:
      case PauliBra::YMinus: {
        const int sg = p == PauliBra::YPlus ? 1 : -1;
        scalar_ *= w * std::polar(s, -sg * kPi / 4);
        local_complement(v);
        for (int u : nb) right_multiply(u, sg == 1 ? gates::S() : gates::Sdg());
        break;
      }
      case PauliBra::XPlus:
      case PauliBra::XMinus:  // isolated vertex
        scalar_ *= p == PauliBra::XPlus ? w : cplx{};
        break;
    }
    remove_vertex(v);
    return true;
  }

  bool project(int v, PauliBra p) { return project(v, pauli_bra(p)); }

  // Dense amplitudes over the sorted vertex list (first vertex = bit 0).
  std::vector<cplx> explicit_state(size_t max_vertices = 20) const {
    if (adj_.size() > max_vertices) throw std::invalid_argument("graph too large for explicit state");
    const auto vs = vertices();
    std::map<int, int> pos;
    for (size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);
    const size_t dim = size_t{1} << vs.size();
    std::vector<cplx> psi(dim, cplx{std::pow(2.0, -0.5 * vs.size())});
    for (size_t i = 0; i < dim; ++i) {
      int par = 0;
      for (const auto& [a, nb] : adj_)
        for (int b : nb)
          if (a < b) par ^= ((i >> pos[a]) & 1) & ((i >> pos[b]) & 1);
      if (par) psi[i] = -psi[i];
    }
    for (int v : vs) {
      const Mat2 u = frame_matrix(v);
      const size_t bit = size_t{1} << pos[v];
      for (size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        cplx a0 = psi[i], a1 = psi[i | bit];
        psi[i] = u(0, 0) * a0 + u(0, 1) * a1;
        psi[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
      }
    }
    for (auto& a : psi) a *= scalar_;
    return psi;
  }

 private:
  Bra through_frame(int v, const Bra& bra) const {
    const Mat2 f = frame_matrix(v);
    return {bra[0] * f(0, 0) + bra[1] * f(1, 0), bra[0] * f(0, 1) + bra[1] * f(1, 1)};
  }

  std::map<int, std::set<int>> adj_;
  std::map<int, int> frame_;
  cplx scalar_{1};
};

// Lattice graph with one extra vertex on every edge, numbered as in DecoratedLayout.
inline GraphState decorated_graph(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("lattice dimensions must be positive");
  DecoratedLayout L{n, m};
  GraphState g;
  for (int q = 0; q < L.size(); ++q) g.add_vertex(q);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      if (r + 1 < n) {
        g.add_edge(L.vertex(r, c), L.vertical(r, c));
        g.add_edge(L.vertical(r, c), L.vertex(r + 1, c));
      }
      if (c + 1 < m) {
        g.add_edge(L.vertex(r, c), L.horizontal(r, c));
        g.add_edge(L.horizontal(r, c), L.vertex(r, c + 1));
      }
    }
  return g;
}

// Contract one qubit of a dense state (qubit q of k, LSB = 0) with a bra.
inline std::vector<cplx> contract_qubit(const std::vector<cplx>& psi, int q, const Bra& bra) {
  const size_t dim = psi.size() / 2, bit = size_t{1} << q;
  std::vector<cplx> out(dim);
  for (size_t j = 0; j < dim; ++j) {
    const size_t lo = j & (bit - 1), hi = (j & ~(bit - 1)) << 1;
    const size_t i0 = hi | lo;
    out[j] = bra[0] * psi[i0] + bra[1] * psi[i0 | bit];
  }
  return out;
}

// K_v = X_v prod_{u~v} Z_u on the plain graph state (identity frames)
inline double max_stabilizer_violation(const GraphState& g, const std::vector<cplx>& psi) {
  const auto vs = g.vertices();
  std::map<int, int> pos;
  for (size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);
  double worst = 0;
  for (int v : vs) {
    size_t zmask = 0;
    for (int u : g.neighbors(v)) zmask |= size_t{1} << pos[u];
    const size_t xbit = size_t{1} << pos[v];
    for (size_t i = 0; i < psi.size(); ++i) {
      // (K psi)[i] = sign(i ^ x) psi[i ^ x]
      const size_t j = i ^ xbit;
      const int sgn = (__builtin_popcountll(j & zmask) & 1) ? -1 : 1;
      worst = std::max(worst, std::abs(static_cast<double>(sgn) * psi[j] - psi[i]));
    }
  }
  return worst;
}

struct RewriteCertificate {
  int graphs = 0;
  int projections = 0;
  double max_error = 0;  // symbolic vs explicit amplitudes, worst case
};

// Random graphs on 2..6 vertices with random Clifford frames; every symbolic
// projection is compared with contracting the explicit state vector.
inline RewriteCertificate certify_rewrites(int graphs, uint64_t seed) {
  Rng rng(seed);
  const auto& cg = CliffordGroup::instance();
  RewriteCertificate out;
  for (int t = 0; t < graphs; ++t) {
    GraphState g;
    const int k = 2 + static_cast<int>(rng.below(5));
    for (int v = 0; v < k; ++v) g.add_vertex(v);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (rng.below(2)) g.add_edge(a, b);
    for (int v = 0; v < k; ++v) g.set_frame(v, static_cast<int>(rng.below(CliffordGroup::kSize)));
    auto psi = g.explicit_state();
    const int steps = 1 + static_cast<int>(rng.below(k));
    for (int s = 0; s < steps; ++s) {
      const auto vs = g.vertices();
      const size_t pos = rng.below(vs.size());
      const int v = vs[pos];
      const Bra p = pauli_bra(static_cast<PauliBra>(rng.below(6)));
      const Mat2 fi = cg.matrix(cg.inverse(g.frame(v)));
      const cplx ph = std::polar(1.0, rng.uniform(0, 2 * kPi));
      const Bra bra = {ph * (p[0] * fi(0, 0) + p[1] * fi(1, 0)), ph * (p[0] * fi(0, 1) + p[1] * fi(1, 1))};
      psi = contract_qubit(psi, static_cast<int>(pos), bra);
      if (!g.project(v, bra)) throw std::logic_error("certification bra is not Pauli");
      ++out.projections;
      const auto sym = g.explicit_state();
      for (size_t i = 0; i < psi.size(); ++i) out.max_error = std::max(out.max_error, std::abs(sym[i] - psi[i]));
    }
    ++out.graphs;
  }
  return out;
}

}  // namespace isingq
