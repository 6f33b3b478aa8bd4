#include "feynmandd/families.hpp"

#include "feynmandd/rng.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fdd {

std::string FamilyInstance::to_file_string() const {
    std::ostringstream out;
    for (const auto& line : header) out << "# " << line << "\n";
    out << serialize_circuit(circuit);
    return out.str();
}

namespace {

std::string bits_to_string(const std::vector<int>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (int b : bits) s.push_back(char('0' + b));
    return s;
}

void push_h_layer(Circuit& c) {
    for (int q = 0; q < c.n_qubits; ++q)
        c.gates.push_back({GateKind::H, {q, -1, -1}});
}

} // namespace

FamilyInstance gen_linear_network(int n, int k, std::uint64_t seed) {
    if (k < 3 || k > n) throw std::invalid_argument("gen_linear_network requires 3 <= k <= n");
    SplitMix64 rng(seed);

    std::vector<int> alpha(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) alpha[std::size_t(i)] = rng.bit();

    // Window cubics; a triple drawn an even number of times cancels mod 2.
    std::vector<std::array<int, 3>> triples;
    auto toggle = [&](std::array<int, 3> t) {
        auto it = std::find(triples.begin(), triples.end(), t);
        if (it != triples.end())
            triples.erase(it);
        else
            triples.push_back(t);
    };
    for (int i = 0; i + k - 1 < n; ++i)
        for (int a = i; a < i + k; ++a)
            for (int b = a + 1; b < i + k; ++b)
                for (int c = b + 1; c < i + k; ++c)
                    if (rng.bit()) toggle({a, b, c});
    std::sort(triples.begin(), triples.end());

    FamilyInstance inst;
    inst.circuit.gate_set = GateSet::from_name(GateSetName::Z);
    inst.circuit.n_qubits = n;
    Circuit& c = inst.circuit;
    push_h_layer(c);
    // A(x)·sum_j x_j over GF(2) with x^2 = x: Z_i where alpha_i = 1,
    // CZ_{ij} where alpha_i + alpha_j = 1.
    for (int i = 0; i < n; ++i)
        if (alpha[std::size_t(i)]) c.gates.push_back({GateKind::Z, {i, -1, -1}});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (alpha[std::size_t(i)] ^ alpha[std::size_t(j)])
                c.gates.push_back({GateKind::CZ, {i, j, -1}});
    for (const auto& t : triples) c.gates.push_back({GateKind::CCZ, {t[0], t[1], t[2]}});
    push_h_layer(c);

    inst.header = {
        "family linear-network",
        "n " + std::to_string(n) + " k " + std::to_string(k) + " seed " + std::to_string(seed),
        "alpha " + bits_to_string(alpha),
        "cubics " + std::to_string(triples.size()),
    };
    return inst;
}

FamilyInstance gen_lrw_family(int n, int k, std::uint64_t seed) {
    if (k < 1 || k >= n) throw std::invalid_argument("gen_lrw_family requires 1 <= k < n");
    SplitMix64 rng(seed);

    int a = rng.bit();
    std::vector<std::vector<int>> v(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < k; ++i)
        for (int q = 0; q < n; ++q) v[std::size_t(i)][std::size_t(q)] = rng.bit();
    std::vector<int> b(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) b[std::size_t(q)] = int(rng.below(8));

    // A = a·v0 v0^T + sum v_i v_i^T over F2, diagonal zeroed.
    std::vector<std::vector<int>> A(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int e = a; // v0 v0^T contributes everywhere
            for (int t = 0; t < k; ++t)
                e ^= v[std::size_t(t)][std::size_t(i)] & v[std::size_t(t)][std::size_t(j)];
            A[std::size_t(i)][std::size_t(j)] = (i == j) ? 0 : e;
        }

    FamilyInstance inst;
    inst.circuit.gate_set = GateSet::from_name(GateSetName::T);
    inst.circuit.n_qubits = n;
    Circuit& c = inst.circuit;
    push_h_layer(c);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (A[std::size_t(i)][std::size_t(j)]) c.gates.push_back({GateKind::CZ, {i, j, -1}});
    for (int q = 0; q < n; ++q)
        for (int t = 0; t < b[std::size_t(q)]; ++t)
            c.gates.push_back({GateKind::T, {q, -1, -1}});
    push_h_layer(c);

    inst.header = {
        "family lrw",
        "n " + std::to_string(n) + " k " + std::to_string(k) + " seed " + std::to_string(seed),
        "a " + std::to_string(a),
    };
    for (int i = 0; i < k; ++i)
        inst.header.push_back("v" + std::to_string(i + 1) + " " + bits_to_string(v[std::size_t(i)]));
    {
        std::string bs = "b";
        for (int q = 0; q < n; ++q) bs += " " + std::to_string(b[std::size_t(q)]);
        inst.header.push_back(bs);
    }
    return inst;
}

FamilyInstance gen_random_circuit(GateSetName set, int n, int m, std::uint64_t seed) {
    static constexpr GateKind kAll[] = {GateKind::H,  GateKind::T,  GateKind::Z,
                                        GateKind::CZ, GateKind::CCZ, GateKind::SX,
                                        GateKind::SY, GateKind::SW, GateKind::ISWAP};
    std::vector<GateKind> kinds;
    int max_arity = 0;
    for (GateKind k : kAll)
        if (gate_in_set(k, set)) {
            kinds.push_back(k);
            max_arity = std::max(max_arity, gate_arity(k));
        }
    if (n < max_arity)
        throw std::invalid_argument("qubit count below the largest gate arity in the set");
    if (m < 0) throw std::invalid_argument("negative gate count");

    SplitMix64 rng(seed);
    FamilyInstance inst;
    inst.circuit.gate_set = GateSet::from_name(set);
    inst.circuit.n_qubits = n;
    for (int g = 0; g < m; ++g) {
        GateKind kind = kinds[std::size_t(rng.below(kinds.size()))];
        Gate gate{kind, {-1, -1, -1}};
        for (int i = 0; i < gate_arity(kind); ++i) {
            int q;
            bool fresh;
            do {
                q = int(rng.below(std::uint64_t(n)));
                fresh = true;
                for (int j = 0; j < i; ++j)
                    if (gate.qubits[j] == q) fresh = false;
            } while (!fresh);
            gate.qubits[i] = q;
        }
        inst.circuit.gates.push_back(gate);
    }
    inst.header = {
        "family random",
        "gateset " + inst.circuit.gate_set.to_string() + " n " + std::to_string(n) + " m " +
            std::to_string(m) + " seed " + std::to_string(seed),
    };
    return inst;
}

} // namespace fdd
