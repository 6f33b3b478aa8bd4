#pragma once

#include "feynmandd/circuit.hpp"
#include "feynmandd/mtbdd.hpp"
#include "feynmandd/ordering.hpp"
#include "feynmandd/sop.hpp"

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace fdd {

using Mat2 = std::array<std::complex<double>, 4>;   // row-major, [out][in]
using Mat4 = std::array<std::complex<double>, 16>;  // row-major, [out][in]

// Gate matrices in the SOP phase convention (reconstructed from the per-gate
// power forms), so oracle and FeynmanDD amplitudes agree exactly, not just up
// to phase.
Mat2 gate_matrix_1q(GateKind k);
Mat4 gate_matrix_2q(GateKind k);

// Reference gates for the fidelity check: principal square roots for
// sqrt(X)/sqrt(Y)/sqrt(W); iSWAP in the Google supremacy convention
// fSim(pi/2, 0), the gate this set actually names.
Mat2 textbook_matrix_1q(GateKind k);
Mat4 textbook_matrix_2q(GateKind k);

struct Statevector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amps; // index bit q = qubit q

    double norm() const;
};

// Dense simulation, n <= 20. Throws TooLarge beyond.
Statevector simulate_statevector(const Circuit& c, std::span<const std::uint8_t> in_bits,
                                 int threads = 1);

std::complex<double> statevector_amplitude(const Circuit& c,
                                           std::span<const std::uint8_t> in_bits,
                                           std::span<const std::uint8_t> out_bits,
                                           int threads = 1);

// Definitional counting oracle: enumerates all 2^n inputs with evaluate_sop.
// n_vars <= 24; deterministic for any thread count.
CountVector brute_force_counts(const SopPolynomial& p, int threads = 1);

// Minimum ordering width over all n! permutations; n <= 9.
int brute_force_lrw(const VariableGraph& g);

} // namespace fdd
