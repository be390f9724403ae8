// Embed a two-wire circuit into a brickwork Ising lattice and read the
// amplitude back out of the partition function.
#include <cstdio>

#include "isingq/brickwork.hpp"

using namespace isingq;

int main() {
  TargetCircuit t{2, {}};
  t.add("H", {0});
  t.add("CNOT", {0, 1});
  const auto r = embed_circuit(t);
  std::printf("H then CNOT on 2 wires -> %d x %d lattice, %d cells, %d Omega horizontals\n", r.instance.n(),
              r.instance.m(), r.cells, r.omega_count);
  std::printf("log2 delta = %.3f (n(m+1)/2 + #Omega/4 = %.3f)\n", r.log2_delta,
              r.instance.n() * (r.instance.m() + 1) / 2.0 + r.omega_count / 4.0);
  std::printf("<00|U|00> = %+.6f %+.6fi\n", r.target_amplitude.real(), r.target_amplitude.imag());
  // the gate words carry a known global phase
  const cplx want = std::polar(1.0, r.phase) * r.target_amplitude;
  std::printf("with phase %.4f: %+.6f %+.6fi\n", r.phase, want.real(), want.imag());
  std::printf("Z / delta       = %+.6f %+.6fi  (error %.2g)\n", r.amplitude.real(), r.amplitude.imag(), r.error);
}
