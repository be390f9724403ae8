#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "isingq/linalg.hpp"

namespace isingq {

enum class GateKind {
  H,
  X,
  PhaseDiag,    // diag(e^{i p0}, e^{i p1})
  ZRot,         // e^{-i t Z/2}
  XRot,         // e^{-i t X/2}
  ZZRot,        // e^{c Z(x)Z}, complex c as (re, im)
  CZ,
  CYRot,        // controlled Y(t), control first
  GlobalPhase,  // e^{i p}, no qubits
  Generic1Q,    // 4 complex entries as 8 reals
  Generic2Q,    // 16 complex entries as 32 reals
  ProjectZero,  // unnormalized <0| on the qubit, leaving it in |0>
};

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::PhaseDiag: return "PhaseDiag";
    case GateKind::ZRot: return "ZRot";
    case GateKind::XRot: return "XRot";
    case GateKind::ZZRot: return "ZZRot";
    case GateKind::CZ: return "CZ";
    case GateKind::CYRot: return "CYRot";
    case GateKind::GlobalPhase: return "GlobalPhase";
    case GateKind::Generic1Q: return "Generic1Q";
    case GateKind::Generic2Q: return "Generic2Q";
    case GateKind::ProjectZero: return "ProjectZero";
  }
  return "?";
}

inline GateKind gate_kind_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(GateKind::ProjectZero); ++k)
    if (s == to_string(static_cast<GateKind>(k))) return static_cast<GateKind>(k);
  throw std::invalid_argument("unknown gate kind: " + s);
}

inline int arity(GateKind k) {
  switch (k) {
    case GateKind::GlobalPhase: return 0;
    case GateKind::ZZRot:
    case GateKind::CZ:
    case GateKind::CYRot:
    case GateKind::Generic2Q: return 2;
    default: return 1;
  }
}

inline size_t param_count(GateKind k) {
  switch (k) {
    case GateKind::PhaseDiag:
    case GateKind::ZZRot: return 2;
    case GateKind::ZRot:
    case GateKind::XRot:
    case GateKind::CYRot:
    case GateKind::GlobalPhase: return 1;
    case GateKind::Generic1Q: return 8;
    case GateKind::Generic2Q: return 32;
    default: return 0;
  }
}

struct Gate {
  GateKind kind;
  std::vector<int> q;
  std::vector<double> p;

  bool unitary() const;

  void validate() const {
    if (static_cast<int>(q.size()) != arity(kind)) throw std::invalid_argument("gate arity mismatch");
    if (p.size() != param_count(kind)) throw std::invalid_argument("gate parameter count mismatch");
    if (q.size() == 2 && q[0] == q[1]) throw std::invalid_argument("two-qubit gate on one qubit");
  }

  static Gate h(int a) { return {GateKind::H, {a}, {}}; }
  static Gate x(int a) { return {GateKind::X, {a}, {}}; }
  static Gate phase_diag(int a, double p0, double p1) { return {GateKind::PhaseDiag, {a}, {p0, p1}}; }
  static Gate zrot(int a, double t) { return {GateKind::ZRot, {a}, {t}}; }
  static Gate xrot(int a, double t) { return {GateKind::XRot, {a}, {t}}; }
  static Gate zz(int a, int b, cplx c) { return {GateKind::ZZRot, {a, b}, {c.real(), c.imag()}}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, {}}; }
  static Gate cy(int ctrl, int tgt, double t) { return {GateKind::CYRot, {ctrl, tgt}, {t}}; }
  static Gate global_phase(double ph) { return {GateKind::GlobalPhase, {}, {ph}}; }
  static Gate project_zero(int a) { return {GateKind::ProjectZero, {a}, {}}; }
  static Gate generic(int a, const Mat2& u) {
    Gate g{GateKind::Generic1Q, {a}, {}};
    for (auto v : u.a) g.p.insert(g.p.end(), {v.real(), v.imag()});
    return g;
  }
  static Gate generic(int a, int b, const Mat4& u) {
    Gate g{GateKind::Generic2Q, {a, b}, {}};
    for (auto v : u.a) g.p.insert(g.p.end(), {v.real(), v.imag()});
    return g;
  }
};

inline Mat2 matrix1(const Gate& g) {
  using namespace gates;
  switch (g.kind) {
    case GateKind::H: return H();
    case GateKind::X: return X();
    case GateKind::PhaseDiag: return phase_diag(g.p[0], g.p[1]);
    case GateKind::ZRot: return Zrot(g.p[0]);
    case GateKind::XRot: return Xrot(g.p[0]);
    case GateKind::ProjectZero: return Mat2::diag({1, 0});
    case GateKind::Generic1Q: {
      Mat2 u;
      for (int i = 0; i < 4; ++i) u.a[i] = {g.p[2 * i], g.p[2 * i + 1]};
      return u;
    }
    default: throw std::invalid_argument("not a one-qubit gate");
  }
}

inline Mat4 matrix2(const Gate& g) {
  using namespace gates;
  switch (g.kind) {
    case GateKind::ZZRot: return expZZ({g.p[0], g.p[1]});
    case GateKind::CZ: return CZ();
    case GateKind::CYRot: return controlled(Yrot(g.p[0]));
    case GateKind::Generic2Q: {
      Mat4 u;
      for (int i = 0; i < 16; ++i) u.a[i] = {g.p[2 * i], g.p[2 * i + 1]};
      return u;
    }
    default: throw std::invalid_argument("not a two-qubit gate");
  }
}

inline bool Gate::unitary() const {
  switch (kind) {
    case GateKind::ProjectZero: return false;
    case GateKind::ZZRot: return p[0] == 0;
    case GateKind::Generic1Q: return unitarity_error(matrix1(*this)) < 1e-10;
    case GateKind::Generic2Q: return unitarity_error(matrix2(*this)) < 1e-10;
    default: return true;
  }
}

enum class QubitRole { Wire, Ancilla };

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  double scale = 1;  // the approximation scale the circuit carries
  std::vector<QubitRole> roles;

  explicit Circuit(int k = 0) : num_qubits(k), roles(k, QubitRole::Wire) {}

  void add(Gate g) {
    g.validate();
    for (int a : g.q)
      if (a < 0 || a >= num_qubits) throw std::out_of_range("gate qubit out of range");
    gates.push_back(std::move(g));
  }

  bool unitary() const {
    for (const auto& g : gates)
      if (!g.unitary()) return false;
    return true;
  }

  // U^dagger: reversed order, each gate inverted
  Circuit inverse() const {
    Circuit r(*this);
    r.gates.clear();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) r.gates.push_back(invert(*it));
    return r;
  }

  static Gate invert(const Gate& g) {
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::CZ: return g;
      case GateKind::PhaseDiag: return Gate::phase_diag(g.q[0], -g.p[0], -g.p[1]);
      case GateKind::ZRot: return Gate::zrot(g.q[0], -g.p[0]);
      case GateKind::XRot: return Gate::xrot(g.q[0], -g.p[0]);
      case GateKind::CYRot: return Gate::cy(g.q[0], g.q[1], -g.p[0]);
      case GateKind::GlobalPhase: return Gate::global_phase(-g.p[0]);
      case GateKind::ZZRot:
        if (g.p[0] != 0) throw std::invalid_argument("non-unitary ZZRot has no inverse");
        return Gate::zz(g.q[0], g.q[1], {0, -g.p[1]});
      case GateKind::Generic1Q: return Gate::generic(g.q[0], adjoint(matrix1(g)));
      case GateKind::Generic2Q: return Gate::generic(g.q[0], g.q[1], adjoint(matrix2(g)));
      case GateKind::ProjectZero: break;
    }
    throw std::invalid_argument("projection has no inverse");
  }
};

}  // namespace isingq
