#pragma once

#include "feynmandd/bigint.hpp"
#include "feynmandd/ordering.hpp"
#include "feynmandd/sop.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fdd {

struct CapacityExceeded : std::runtime_error {
    explicit CapacityExceeded(std::size_t cap)
        : std::runtime_error("diagram node arena exceeded " + std::to_string(cap) + " nodes") {}
};

inline constexpr std::size_t kDefaultMaxNodes = std::size_t(1) << 28;

// Reduced ordered multi-terminal BDD with long edges. Levels are 0-based
// positions in the variable order; terminals sit at level n_vars and store
// their label gamma in `zero`. Nodes are kept in a deterministic topological
// order (by level, then first visit of a zero-before-one DFS from the root),
// so two canonical diagrams of the same function are element-wise equal.
struct Mtbdd {
    struct Node {
        std::int32_t level;
        std::int32_t zero; // child id; terminal label when one < 0
        std::int32_t one;  // child id; -1 for terminals
        bool operator==(const Node&) const = default;
    };

    int n_vars = 0;
    int modulus = 2;
    std::vector<int> var_of_pos; // level -> original variable id
    std::vector<Node> nodes;
    std::int32_t root = -1;

    bool is_terminal(std::int32_t id) const { return nodes[id].one < 0; }
    int terminal_label(std::int32_t id) const { return nodes[id].zero; }

    // x is indexed by original variable id; skipped levels consume their bit
    // without branching.
    int evaluate(std::span<const std::uint8_t> x) const;

    // Debug/test format: `id level zero one` per internal node (1-based
    // levels, terminal children printed as t<gamma>), then one `t<gamma>`
    // line per terminal, in deterministic topological order.
    std::string dump() const;
};

struct DiagramStats {
    std::vector<std::int64_t> per_level; // internal nodes per level, size n_vars
    std::int64_t total_internal = 0;
    int terminals = 0;
};
DiagramStats diagram_stats(const Mtbdd& d);

struct CountVector {
    std::vector<BigUint> counts; // N_0..N_{r-1}
    int n_internal = 0;
};
// One bottom-up pass; an edge skipping s levels contributes weight 2^s.
CountVector count_solutions(const Mtbdd& d);

// Alg.-1 style level-by-level construction for degree <= 2 polynomials whose
// quadratic coefficient is r/2. Nodes of a level are deduplicated by the
// tuple (gamma, c_1..c_rank) of the induced linear form in the RREF basis of
// the boundary matrix. Throws DegreeTooHigh on cubic terms.
Mtbdd build_level_by_level(const SopPolynomial& p, const LinearOrdering& ord,
                           std::size_t max_nodes = kDefaultMaxNodes);

// Generic construction for degree <= 3: per-monomial diagrams folded with a
// memoized binary add-mod-r apply, in a balanced tree.
Mtbdd build_by_apply(const SopPolynomial& p, const std::vector<int>& perm,
                     std::size_t max_nodes = kDefaultMaxNodes);

// Canonical-form comparison; valid because both builders emit compacted
// canonical diagrams.
bool same_structure(const Mtbdd& a, const Mtbdd& b);

struct AmplitudeResult {
    std::complex<double> amplitude;
    CountVector counts;
    int e = 0; // R = 2^{e/2}
};

// Builds the diagram (level builder when degree <= 2, apply builder
// otherwise), counts, and returns sum_j N_j w_r^j / 2^{e/2}.
AmplitudeResult amplitude(const AmplitudeTask& task, const LinearOrdering& ord,
                          std::size_t max_nodes = kDefaultMaxNodes);

std::complex<double> counts_to_amplitude(const CountVector& counts, int modulus, int e);

} // namespace fdd
