#pragma once

#include "feynmandd/gf2.hpp"
#include "feynmandd/sop.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace fdd {

struct DegreeTooHigh : std::runtime_error {
    DegreeTooHigh() : std::runtime_error("polynomial has a cubic term; no variable graph") {}
};
struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Graph on SOP variables; adjacency A = A_up + A_up^T of the quadratic part.
struct VariableGraph {
    int n = 0;
    F2Matrix adj; // symmetric, zero diagonal

    VariableGraph() = default;
    explicit VariableGraph(int n_) : n(n_), adj(n_, n_) {}

    void add_edge(int i, int j) {
        adj.set(i, j, true);
        adj.set(j, i, true);
    }
    bool has_edge(int i, int j) const { return adj.get(i, j); }
};

// Throws DegreeTooHigh when the polynomial has cubic terms.
VariableGraph variable_graph(const SopPolynomial& p);

struct LinearOrdering {
    std::vector<int> perm;    // position -> vertex
    int width = 0;            // max of profile
    std::vector<int> profile; // profile[i] = cut-rank of the first i vertices; n+1 entries
};

LinearOrdering ordering_width(const VariableGraph& g, std::vector<int> perm);

// True linear rank-width via DP over subsets; deterministic
// (lexicographically least optimal permutation). Throws TooLarge above cap.
LinearOrdering exhaustive_lrw(const VariableGraph& g, int cap = 12);

// Left-to-right greedy: append the vertex minimizing the next prefix
// cut-rank, ties broken by smallest vertex id.
LinearOrdering greedy_ordering(const VariableGraph& g);

// Replaces edge (i,j) by a path i-u_1-...-u_chain-j (an H/T chain on a wire
// segment) and inserts the new vertices right after the earlier endpoint of
// base_perm. Returns the widths before and after; the insertion theorem
// guarantees new_width <= old_width + 2.
struct InsertionCheck {
    int old_width = 0;
    int new_width = 0;
    VariableGraph modified;
    std::vector<int> modified_perm;
};
InsertionCheck insertion_width_bound_check(const VariableGraph& g,
                                           const std::vector<int>& base_perm,
                                           std::pair<int, int> wire, int chain_len);

} // namespace fdd
