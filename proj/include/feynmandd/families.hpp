#pragma once

#include "feynmandd/circuit.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fdd {

// Generated circuit plus a comment header recording the drawn parameters;
// both are pure functions of (n, k, seed).
struct FamilyInstance {
    Circuit circuit;
    std::vector<std::string> header; // without the leading '#'

    std::string to_file_string() const;
};

// IQP circuit over gate set Z computing f = A(x)·sum_i x_i + sum_i C_{i:i+k-1}
// with A(x) = sum alpha_i x_i: H layer, then Z/CZ from the GF(2) expansion of
// the first term plus the drawn window cubics as CCZ, then H layer. 3 <= k <= n.
FamilyInstance gen_linear_network(int n, int k, std::uint64_t seed);

// IQP circuit over gate set T whose diagonal part has adjacency
// A = a·v0 v0^T + sum_{i=1..k} v_i v_i^T (v0 all-ones, zero diagonal) and
// T-gate powers b in Z_8^n; every cut-rank of A is <= k+1. 1 <= k < n.
FamilyInstance gen_lrw_family(int n, int k, std::uint64_t seed);

// m gates drawn uniformly over (kind, distinct qubit tuple).
FamilyInstance gen_random_circuit(GateSetName set, int n, int m, std::uint64_t seed);

} // namespace fdd
