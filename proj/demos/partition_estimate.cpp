// Estimate Z of a small Problem-1 lattice with the Hadamard test and compare
// against the exact spin sum. Also runs a Physical instance through the
// ancilla compiler.
#include <cstdio>

#include "isingq/compile_general.hpp"
#include "isingq/compile_unitary.hpp"
#include "isingq/oracle.hpp"
#include "isingq/simulator.hpp"

using namespace isingq;

int main() {
  auto x = random_instance(2, 3, DomainClass::Problem1, 5);
  auto c = compile_problem1(x);
  const cplx exact = brute_force_Z(x).z;
  std::printf("2x3 Problem1: %zu gates on %d qubits, delta = %.4g\n", c.gates.size(), c.num_qubits, c.scale);
  std::printf("  exact      %+.6f %+.6fi\n", exact.real(), exact.imag());
  std::printf("  amplitude  %+.6f %+.6fi\n", (c.scale * run_circuit(c)).real(), (c.scale * run_circuit(c)).imag());
  for (uint64_t n : {1000, 100000, 1000000}) {
    const auto e = hadamard_test(c, n, 1);
    const cplx z = c.scale * cplx{e.re, e.im};
    std::printf("  N=%-8llu %+.6f %+.6fi  (|err| %.3g)\n", static_cast<unsigned long long>(n), z.real(), z.imag(),
                std::abs(z - exact));
  }

  auto y = random_instance(2, 2, DomainClass::Physical, 3);
  auto g = compile_general(y);
  const cplx zy = brute_force_Z(y).z, ay = g.delta * run_circuit(g.circuit);
  std::printf("2x2 Physical: delta = %.4g (delta_o %.4g)\n", g.delta, delta_o(y));
  std::printf("  exact      %+.6f %+.6fi\n", zy.real(), zy.imag());
  std::printf("  amplitude  %+.6f %+.6fi\n", ay.real(), ay.imag());
}
