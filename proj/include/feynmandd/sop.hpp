#pragma once

#include "feynmandd/circuit.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fdd {

// f(x) = (r/2)·sum_{(i,j)} x_i x_j + (r/2)·sum_{(i,j,k)} x_i x_j x_k
//        + b·x + constant   (mod r),      tensor weight 1/R with R = 2^{e/2}.
// Quadratic/cubic term sets store parity of the term multiplicity: adding a
// coefficient-r/2 term twice cancels mod r.
struct SopPolynomial {
    int modulus = 2;
    int n_vars = 0;
    std::vector<std::pair<int, int>> quadratic;   // sorted, i < j
    std::vector<std::array<int, 3>> cubic;        // sorted, i < j < k; r == 2 only
    std::vector<int> linear;                      // b, entries reduced mod r
    int constant = 0;                             // gamma_0
    int norm_exponent = 0;                        // e, R = 2^{e/2}
    std::vector<std::pair<int, int>> external;    // qubit -> (input var, output var)

    int new_var();
    void add_linear(int var, int amount);
    void add_constant(int amount);
    // Parity toggles. A degenerate pair (i,i) folds to linear +r/2 via
    // x^2 = x; a degenerate triple folds one level down likewise.
    void toggle_quadratic(int i, int j);
    void toggle_cubic(int i, int j, int k);

    int degree() const;
    std::string debug_string() const; // e.g. "4*x0*x1 + 1*x2 + 3 (mod 8), e=2"
};

// Externals substituted, only summed (internal) variables remain.
// `vanishes` marks tasks whose boundary constraints are contradictory (an
// identified input/output variable assigned two different bits); their
// amplitude is exactly 0 and counts do not sum to 2^n_internal.
struct AmplitudeTask {
    SopPolynomial poly;
    int n_internal = 0;
    bool vanishes = false;
};

SopPolynomial extract_sop(const Circuit& c);

AmplitudeTask substitute_externals(const SopPolynomial& p,
                                   std::span<const std::uint8_t> in_bits,
                                   std::span<const std::uint8_t> out_bits);

int evaluate_sop(const SopPolynomial& p, std::span<const std::uint8_t> x);

} // namespace fdd
