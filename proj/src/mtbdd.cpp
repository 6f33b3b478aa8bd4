#include "feynmandd/mtbdd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace fdd {

namespace {

struct RawNode {
    std::int32_t level;
    std::int32_t zero;
    std::int32_t one;
};

// Shared by both builders: raw arena plus lazily materialized terminals.
struct Arena {
    int n;
    std::size_t max_nodes;
    std::vector<RawNode> nodes;
    std::unordered_map<int, std::int32_t> terminals;

    Arena(int n_, std::size_t cap) : n(n_), max_nodes(cap) {}

    std::int32_t add(std::int32_t level, std::int32_t zero, std::int32_t one) {
        if (nodes.size() >= max_nodes) throw CapacityExceeded(max_nodes);
        nodes.push_back({level, zero, one});
        return std::int32_t(nodes.size() - 1);
    }
    std::int32_t terminal(int gamma) {
        auto it = terminals.find(gamma);
        if (it != terminals.end()) return it->second;
        std::int32_t id = add(n, gamma, -1);
        terminals.emplace(gamma, id);
        return id;
    }
    bool is_terminal(std::int32_t id) const { return nodes[id].one < 0; }
};

// Relabels the reachable part of the arena into the canonical order: by
// level, then by first visit of a preorder DFS that follows zero before one.
// The result is independent of arena id assignment, so both builders agree
// node-for-node on equal functions.
Mtbdd compact(const Arena& arena, std::int32_t root, int modulus,
              std::vector<int> var_of_pos) {
    std::vector<std::int32_t> order;
    std::vector<std::int32_t> visit_rank(arena.nodes.size(), -1);
    std::vector<std::int32_t> stack{root};
    while (!stack.empty()) {
        std::int32_t id = stack.back();
        stack.pop_back();
        if (visit_rank[id] >= 0) continue;
        visit_rank[id] = std::int32_t(order.size());
        order.push_back(id);
        if (!arena.is_terminal(id)) {
            stack.push_back(arena.nodes[id].one);  // popped after zero
            stack.push_back(arena.nodes[id].zero);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        if (arena.nodes[a].level != arena.nodes[b].level)
            return arena.nodes[a].level < arena.nodes[b].level;
        return visit_rank[a] < visit_rank[b];
    });

    std::vector<std::int32_t> remap(arena.nodes.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = std::int32_t(i);

    Mtbdd out;
    out.n_vars = arena.n;
    out.modulus = modulus;
    out.var_of_pos = std::move(var_of_pos);
    out.nodes.reserve(order.size());
    for (std::int32_t id : order) {
        const RawNode& nd = arena.nodes[id];
        if (arena.is_terminal(id))
            out.nodes.push_back({nd.level, nd.zero, -1});
        else
            out.nodes.push_back({nd.level, remap[nd.zero], remap[nd.one]});
    }
    out.root = remap[root];
    return out;
}

BitVec suffix_of(const BitVec& v, int from) {
    BitVec out = v;
    for (int i = 0; i < from && i < out.size(); ++i) out.clear(i);
    return out;
}

// Unique-table key for the level builder: gamma plus the coefficient bits of
// the node's linear form in the boundary RREF basis.
struct WideKey {
    std::vector<std::uint64_t> words;
    bool operator==(const WideKey&) const = default;
};
struct WideKeyHash {
    std::size_t operator()(const WideKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : k.words) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return std::size_t(h);
    }
};

} // namespace

Mtbdd build_level_by_level(const SopPolynomial& p, const LinearOrdering& ord,
                           std::size_t max_nodes) {
    if (!p.cubic.empty()) throw DegreeTooHigh();
    const int n = p.n_vars;
    const int r = p.modulus;
    const int half = r / 2;
    if (int(ord.perm.size()) != n)
        throw std::invalid_argument("ordering length != variable count");

    // Translate the polynomial into position space.
    std::vector<int> pos_of_var(n);
    for (int i = 0; i < n; ++i) pos_of_var[ord.perm[i]] = i;
    std::vector<BitVec> arow(n, BitVec(n));
    for (const auto& [vi, vj] : p.quadratic) {
        int i = pos_of_var[vi], j = pos_of_var[vj];
        arow[i].set(j);
        arow[j].set(i);
    }
    std::vector<int> b(n);
    for (int i = 0; i < n; ++i) b[i] = p.linear[ord.perm[i]];
    std::vector<bool> has_later(n);
    for (int i = 0; i < n; ++i) has_later[i] = arow[i].first_set_from(i + 1) >= 0;

    // Boundary RREF bases: bases[s] spans rows 0..s-1 restricted to columns
    // >= s; reused from level to level instead of recomputed.
    std::vector<RrefBasis> bases(static_cast<std::size_t>(std::max(n, 1)));
    bases[0] = RrefBasis(n);
    for (int s = 1; s < n; ++s)
        bases[s] = advance_boundary(bases[s - 1], s - 1, suffix_of(arow[s - 1], s));

    Arena arena(n, max_nodes);
    struct Pending {
        BitVec alpha; // linear coefficients induced by the path, mod 2
        int gamma;
    };
    std::vector<std::vector<std::int32_t>> level_ids(static_cast<std::size_t>(std::max(n, 1)));
    std::vector<std::vector<Pending>> level_states(static_cast<std::size_t>(std::max(n, 1)));
    std::vector<std::unordered_map<WideKey, std::int32_t, WideKeyHash>> tables(
        std::size_t(std::max(n, 1)));

    auto essential = [&](int s, const BitVec& alpha) {
        return (half * alpha.get(s) + b[s]) % r != 0 || has_later[s];
    };

    // Resolves the child of a level-i node (i = -1 for the root) given the
    // child's state, skipping levels the subfunction does not depend on.
    auto make_child = [&](int from_level, BitVec alpha, int gamma) -> std::int32_t {
        int s = from_level + 1;
        while (s < n && !essential(s, alpha)) ++s;
        if (s == n) return arena.terminal(gamma);
        WideKey key;
        const auto& pivots = bases[s].pivots();
        key.words.assign(1 + (pivots.size() + 63) / 64, 0);
        key.words[0] = std::uint64_t(gamma);
        for (std::size_t j = 0; j < pivots.size(); ++j)
            if (alpha.get(pivots[j]))
                key.words[1 + j / 64] |= std::uint64_t(1) << (j % 64);
        auto [it, inserted] = tables[s].try_emplace(std::move(key), 0);
        if (!inserted) return it->second;
        std::int32_t id = arena.add(s, -1, -1);
        it->second = id;
        level_ids[s].push_back(id);
        level_states[s].push_back({std::move(alpha), gamma});
        return id;
    };

    std::int32_t root = make_child(-1, BitVec(n), ((p.constant % r) + r) % r);

    for (int s = 0; s < n; ++s) {
        for (std::size_t idx = 0; idx < level_ids[s].size(); ++idx) {
            std::int32_t id = level_ids[s][idx];
            const Pending state = level_states[s][idx];
            arena.nodes[id].zero = make_child(s, state.alpha, state.gamma);
            int gamma1 = (state.gamma + half * state.alpha.get(s) + b[s]) % r;
            BitVec alpha1 = state.alpha;
            alpha1 ^= arow[s];
            arena.nodes[id].one = make_child(s, std::move(alpha1), gamma1);
        }
        level_states[s].clear();
        level_states[s].shrink_to_fit();
        tables[s].clear();
    }

    return compact(arena, root, r, ord.perm);
}

namespace {

struct NodeKey3 {
    std::int32_t level, zero, one;
    bool operator==(const NodeKey3&) const = default;
};
struct NodeKey3Hash {
    std::size_t operator()(const NodeKey3& k) const {
        std::uint64_t h = std::uint64_t(std::uint32_t(k.level));
        h = (h * 0x9e3779b97f4a7c15ull) ^ std::uint64_t(std::uint32_t(k.zero));
        h = (h * 0x9e3779b97f4a7c15ull) ^ std::uint64_t(std::uint32_t(k.one));
        h *= 0xbf58476d1ce4e5b9ull;
        return std::size_t(h ^ (h >> 32));
    }
};

struct ApplyManager {
    Arena arena;
    int r;
    std::unordered_map<NodeKey3, std::int32_t, NodeKey3Hash> unique;
    std::unordered_map<std::uint64_t, std::int32_t> cache; // exact (a,b) packing

    ApplyManager(int n, int r_, std::size_t cap) : arena(n, cap), r(r_) {}

    std::int32_t make(std::int32_t level, std::int32_t z, std::int32_t o) {
        if (z == o) return z;
        auto [it, inserted] = unique.try_emplace({level, z, o}, 0);
        if (!inserted) return it->second;
        std::int32_t id = arena.add(level, z, o);
        it->second = id;
        return id;
    }

    std::int32_t apply_add(std::int32_t a, std::int32_t b) {
        if (arena.is_terminal(a) && arena.is_terminal(b))
            return arena.terminal((arena.nodes[a].zero + arena.nodes[b].zero) % r);
        if (a > b) std::swap(a, b); // addition commutes
        std::uint64_t key = (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        std::int32_t la = arena.nodes[a].level, lb = arena.nodes[b].level;
        std::int32_t level = std::min(la, lb);
        std::int32_t az = a, ao = a, bz = b, bo = b;
        if (la == level) az = arena.nodes[a].zero, ao = arena.nodes[a].one;
        if (lb == level) bz = arena.nodes[b].zero, bo = arena.nodes[b].one;
        std::int32_t z = apply_add(az, bz);
        std::int32_t o = apply_add(ao, bo);
        std::int32_t res = make(level, z, o);
        cache.emplace(key, res);
        return res;
    }
};

} // namespace

Mtbdd build_by_apply(const SopPolynomial& p, const std::vector<int>& perm,
                     std::size_t max_nodes) {
    const int n = p.n_vars;
    const int r = p.modulus;
    const int half = r / 2;
    if (int(perm.size()) != n) throw std::invalid_argument("ordering length != variable count");
    std::vector<int> pos_of_var(n);
    for (int i = 0; i < n; ++i) pos_of_var[perm[i]] = i;

    ApplyManager mgr(n, r, max_nodes);

    auto monomial = [&](std::vector<int> positions, int value) -> std::int32_t {
        value = ((value % r) + r) % r;
        std::sort(positions.begin(), positions.end());
        std::int32_t acc = mgr.arena.terminal(value);
        if (value == 0) return acc;
        std::int32_t zero_t = mgr.arena.terminal(0);
        for (std::size_t i = positions.size(); i-- > 0;)
            acc = mgr.make(positions[i], zero_t, acc);
        return acc;
    };

    struct Mono {
        std::vector<int> pos;
        int value;
    };
    std::vector<Mono> monos;
    monos.push_back({{}, ((p.constant % r) + r) % r});
    for (int v = 0; v < n; ++v)
        if (p.linear[v]) monos.push_back({{pos_of_var[v]}, p.linear[v]});
    for (const auto& [i, j] : p.quadratic) monos.push_back({{pos_of_var[i], pos_of_var[j]}, half});
    for (const auto& t : p.cubic)
        monos.push_back({{pos_of_var[t[0]], pos_of_var[t[1]], pos_of_var[t[2]]}, half});
    for (auto& m : monos) std::sort(m.pos.begin(), m.pos.end());
    std::sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
        return a.pos != b.pos ? a.pos < b.pos : a.value < b.value;
    });

    std::vector<std::int32_t> layer;
    layer.reserve(monos.size());
    for (auto& m : monos) layer.push_back(monomial(std::move(m.pos), m.value));

    // Balanced fold keeps intermediate diagrams variable-local.
    while (layer.size() > 1) {
        std::vector<std::int32_t> next;
        next.reserve(layer.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2)
            next.push_back(mgr.apply_add(layer[i], layer[i + 1]));
        if (layer.size() % 2) next.push_back(layer.back());
        layer = std::move(next);
    }

    return compact(mgr.arena, layer[0], r, perm);
}

int Mtbdd::evaluate(std::span<const std::uint8_t> x) const {
    if (int(x.size()) != n_vars) throw std::invalid_argument("assignment length != variable count");
    std::int32_t id = root;
    while (!is_terminal(id)) {
        const Node& nd = nodes[id];
        id = x[var_of_pos[nd.level]] ? nd.one : nd.zero;
    }
    return terminal_label(id);
}

std::string Mtbdd::dump() const {
    std::ostringstream out;
    auto ref = [&](std::int32_t id) -> std::string {
        if (is_terminal(id)) return "t" + std::to_string(terminal_label(id));
        return std::to_string(id);
    };
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        if (is_terminal(std::int32_t(id))) continue;
        out << id << ' ' << nodes[id].level + 1 << ' ' << ref(nodes[id].zero) << ' '
            << ref(nodes[id].one) << '\n';
    }
    std::vector<int> labels;
    for (std::size_t id = 0; id < nodes.size(); ++id)
        if (is_terminal(std::int32_t(id))) labels.push_back(terminal_label(std::int32_t(id)));
    std::sort(labels.begin(), labels.end());
    for (int g : labels) out << 't' << g << '\n';
    return out.str();
}

DiagramStats diagram_stats(const Mtbdd& d) {
    DiagramStats s;
    s.per_level.assign(static_cast<std::size_t>(d.n_vars), 0);
    for (std::size_t id = 0; id < d.nodes.size(); ++id) {
        if (d.is_terminal(std::int32_t(id))) {
            s.terminals += 1;
        } else {
            s.per_level[std::size_t(d.nodes[id].level)] += 1;
            s.total_internal += 1;
        }
    }
    return s;
}

CountVector count_solutions(const Mtbdd& d) {
    const int r = d.modulus;
    CountVector out;
    out.n_internal = d.n_vars;
    out.counts.assign(static_cast<std::size_t>(r), BigUint());

    // Children always come later in the compacted order (higher level, and
    // within a level nodes have no edges), so one reverse sweep suffices.
    std::vector<std::vector<BigUint>> weight(d.nodes.size());
    for (std::size_t i = d.nodes.size(); i-- > 0;) {
        std::int32_t id = std::int32_t(i);
        auto& w = weight[i];
        w.assign(static_cast<std::size_t>(r), BigUint());
        const Mtbdd::Node& nd = d.nodes[i];
        if (d.is_terminal(id)) {
            w[std::size_t(nd.zero)] = BigUint(1);
            continue;
        }
        int skip_zero = d.nodes[nd.zero].level - nd.level - 1;
        int skip_one = d.nodes[nd.one].level - nd.level - 1;
        for (int j = 0; j < r; ++j) {
            w[std::size_t(j)].add_shifted(weight[std::size_t(nd.zero)][std::size_t(j)], skip_zero);
            w[std::size_t(j)].add_shifted(weight[std::size_t(nd.one)][std::size_t(j)], skip_one);
        }
    }
    int root_skip = d.nodes[d.root].level;
    for (int j = 0; j < r; ++j)
        out.counts[std::size_t(j)].add_shifted(weight[std::size_t(d.root)][std::size_t(j)], root_skip);
    return out;
}

bool same_structure(const Mtbdd& a, const Mtbdd& b) {
    return a.n_vars == b.n_vars && a.modulus == b.modulus && a.root == b.root &&
           a.nodes == b.nodes;
}

std::complex<double> counts_to_amplitude(const CountVector& cv, int modulus, int e) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < modulus; ++j) {
        double nj = cv.counts[std::size_t(j)].to_double();
        if (nj == 0.0) continue;
        double theta = 2.0 * std::numbers::pi * double(j) / double(modulus);
        acc += nj * std::complex<double>(std::cos(theta), std::sin(theta));
    }
    acc = std::complex<double>(std::ldexp(acc.real(), -(e / 2)), std::ldexp(acc.imag(), -(e / 2)));
    if (e % 2) acc *= std::numbers::sqrt2 / 2.0;
    return acc;
}

AmplitudeResult amplitude(const AmplitudeTask& task, const LinearOrdering& ord,
                          std::size_t max_nodes) {
    AmplitudeResult res;
    res.e = task.poly.norm_exponent;
    if (task.vanishes) {
        res.amplitude = 0.0;
        res.counts.counts.assign(static_cast<std::size_t>(task.poly.modulus), BigUint());
        res.counts.n_internal = task.n_internal;
        return res;
    }
    Mtbdd d = task.poly.cubic.empty() ? build_level_by_level(task.poly, ord, max_nodes)
                                      : build_by_apply(task.poly, ord.perm, max_nodes);
    res.counts = count_solutions(d);
    res.amplitude = counts_to_amplitude(res.counts, task.poly.modulus, res.e);
    return res;
}

} // namespace fdd
