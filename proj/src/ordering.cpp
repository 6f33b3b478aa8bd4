#include "feynmandd/ordering.hpp"

#include <algorithm>

namespace fdd {

VariableGraph variable_graph(const SopPolynomial& p) {
    if (!p.cubic.empty()) throw DegreeTooHigh();
    VariableGraph g(p.n_vars);
    for (const auto& [i, j] : p.quadratic) g.add_edge(i, j);
    return g;
}

namespace {

// Row of the adjacency matrix restricted to the columns not yet placed.
BitVec masked_row(const VariableGraph& g, int v, const BitVec& remaining) {
    BitVec r = g.adj.row[v];
    r &= remaining;
    return r;
}

} // namespace

LinearOrdering ordering_width(const VariableGraph& g, std::vector<int> perm) {
    if (int(perm.size()) != g.n) throw std::invalid_argument("permutation length != vertex count");
    {
        std::vector<bool> seen(g.n, false);
        for (int v : perm) {
            if (v < 0 || v >= g.n || seen[v])
                throw std::invalid_argument("not a permutation of the vertices");
            seen[v] = true;
        }
    }
    LinearOrdering out;
    out.profile.assign(static_cast<std::size_t>(g.n) + 1, 0);
    BitVec remaining(g.n);
    for (int v = 0; v < g.n; ++v) remaining.set(v);

    RrefBasis basis(g.n);
    for (int i = 0; i < g.n; ++i) {
        int v = perm[i];
        remaining.clear(v);
        basis = advance_boundary(basis, v, masked_row(g, v, remaining));
        out.profile[i + 1] = basis.rank();
        out.width = std::max(out.width, basis.rank());
    }
    out.perm = std::move(perm);
    return out;
}

namespace {

// Cut-rank of every vertex subset, indexed by bitmask. n <= ~20.
std::vector<int> all_cut_ranks(const VariableGraph& g) {
    const int n = g.n;
    std::vector<std::uint32_t> rows(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.adj.get(i, j)) rows[i] |= std::uint32_t(1) << j;

    std::vector<int> rho(static_cast<std::size_t>(1) << n, 0);
    for (std::uint32_t s = 1; s + 1 < (std::uint32_t(1) << n); ++s) {
        std::uint32_t outside = ~s & ((std::uint32_t(1) << n) - 1);
        std::uint32_t basis[32] = {0}; // keyed by highest set bit
        int r = 0;
        for (int v = 0; v < n; ++v) {
            if (!(s >> v & 1)) continue;
            std::uint32_t row = rows[v] & outside;
            while (row) {
                int b = 31 - __builtin_clz(row);
                if (!basis[b]) {
                    basis[b] = row;
                    ++r;
                    break;
                }
                row ^= basis[b];
            }
        }
        rho[s] = r;
    }
    return rho;
}

} // namespace

LinearOrdering exhaustive_lrw(const VariableGraph& g, int cap) {
    const int n = g.n;
    if (n > cap || n > 25) // the subset DP allocates 2^n entries
        throw TooLarge("exhaustive_lrw: " + std::to_string(n) + " vertices exceeds cap " +
                       std::to_string(std::min(cap, 25)));
    if (n == 0) return LinearOrdering{{}, 0, {0}};

    std::vector<int> rho = all_cut_ranks(g);

    // F[S] = best achievable max-cut-rank over the orderings that extend the
    // prefix set S; the prefix's own internal order does not matter.
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    std::vector<std::uint8_t> F(static_cast<std::size_t>(1) << n, 0);
    std::vector<std::uint32_t> by_popcount_order(static_cast<std::size_t>(1) << n);
    for (std::uint32_t s = 0; s <= full; ++s) by_popcount_order[s] = s;
    std::sort(by_popcount_order.begin(), by_popcount_order.end(),
              [](std::uint32_t a, std::uint32_t b) {
                  int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
                  return pa != pb ? pa > pb : a < b;
              });
    for (std::uint32_t s : by_popcount_order) {
        if (s == full) {
            F[s] = 0;
            continue;
        }
        int best = n + 1;
        for (int v = 0; v < n; ++v) {
            if (s >> v & 1) continue;
            std::uint32_t t = s | (std::uint32_t(1) << v);
            best = std::min(best, std::max(rho[t], int(F[t])));
        }
        F[s] = std::uint8_t(best);
    }

    const int lrw = F[0];
    std::vector<int> perm;
    perm.reserve(n);
    std::uint32_t s = 0;
    while (int(perm.size()) < n) {
        for (int v = 0; v < n; ++v) {
            if (s >> v & 1) continue;
            std::uint32_t t = s | (std::uint32_t(1) << v);
            if (std::max(rho[t], int(F[t])) <= lrw) {
                perm.push_back(v);
                s = t;
                break;
            }
        }
    }
    return ordering_width(g, std::move(perm));
}

LinearOrdering greedy_ordering(const VariableGraph& g) {
    const int n = g.n;
    std::vector<int> perm;
    perm.reserve(n);
    BitVec remaining(n);
    for (int v = 0; v < n; ++v) remaining.set(v);
    RrefBasis basis(n);
    for (int step = 0; step < n; ++step) {
        int best_v = -1, best_rank = n + 1;
        for (int v = 0; v < n; ++v) {
            if (!remaining.get(v)) continue;
            BitVec rem = remaining;
            rem.clear(v);
            RrefBasis cand = advance_boundary(basis, v, masked_row(g, v, rem));
            if (cand.rank() < best_rank) {
                best_rank = cand.rank();
                best_v = v;
            }
        }
        remaining.clear(best_v);
        basis = advance_boundary(basis, best_v, masked_row(g, best_v, remaining));
        perm.push_back(best_v);
    }
    return ordering_width(g, std::move(perm));
}

InsertionCheck insertion_width_bound_check(const VariableGraph& g,
                                           const std::vector<int>& base_perm,
                                           std::pair<int, int> wire, int chain_len) {
    auto [i, j] = wire;
    if (!g.has_edge(i, j)) throw std::invalid_argument("wire is not an edge");
    if (chain_len < 1) throw std::invalid_argument("chain_len must be >= 1");

    InsertionCheck out;
    out.old_width = ordering_width(g, base_perm).width;

    VariableGraph mod(g.n + chain_len);
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            if (g.has_edge(a, b) && !(a == std::min(i, j) && b == std::max(i, j)))
                mod.add_edge(a, b);
    // chain vertices g.n .. g.n+chain_len-1, path from i to j
    mod.add_edge(i, g.n);
    for (int u = 0; u + 1 < chain_len; ++u) mod.add_edge(g.n + u, g.n + u + 1);
    mod.add_edge(g.n + chain_len - 1, j);

    // Insert the chain right after the earlier endpoint, nearest vertex first.
    std::size_t pos_i = 0, pos_j = 0;
    for (std::size_t p = 0; p < base_perm.size(); ++p) {
        if (base_perm[p] == i) pos_i = p;
        if (base_perm[p] == j) pos_j = p;
    }
    std::vector<int> perm;
    perm.reserve(base_perm.size() + std::size_t(chain_len));
    const bool i_first = pos_i < pos_j;
    const std::size_t anchor = i_first ? pos_i : pos_j;
    for (std::size_t p = 0; p < base_perm.size(); ++p) {
        perm.push_back(base_perm[p]);
        if (p == anchor) {
            if (i_first)
                for (int u = 0; u < chain_len; ++u) perm.push_back(g.n + u);
            else
                for (int u = chain_len - 1; u >= 0; --u) perm.push_back(g.n + u);
        }
    }
    LinearOrdering mod_ord = ordering_width(mod, std::move(perm));
    out.new_width = mod_ord.width;
    out.modified = std::move(mod);
    out.modified_perm = std::move(mod_ord.perm);
    return out;
}

} // namespace fdd
