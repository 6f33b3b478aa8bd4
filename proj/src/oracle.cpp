#include "feynmandd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace fdd {

namespace {

std::complex<double> omega(int modulus, int power) {
    double theta = 2.0 * std::numbers::pi * double(((power % modulus) + modulus) % modulus) /
                   double(modulus);
    return {std::cos(theta), std::sin(theta)};
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

} // namespace

Mat2 gate_matrix_1q(GateKind k) {
    // M[out][in] = factor * w_r^{exponent(in, out)}
    Mat2 m{};
    auto fill = [&](int r, int lin_in, int lin_out, int quad, double factor) {
        for (int in = 0; in < 2; ++in)
            for (int out = 0; out < 2; ++out)
                m[std::size_t(out * 2 + in)] =
                    factor * omega(r, lin_in * in + lin_out * out + quad * in * out);
    };
    switch (k) {
    case GateKind::H: fill(8, 0, 0, 4, kInvSqrt2); break;
    case GateKind::T: {
        m = {1, 0, 0, omega(8, 1)};
        break;
    }
    case GateKind::Z: m = {1, 0, 0, -1}; break;
    case GateKind::SX: fill(24, 18, 18, 12, kInvSqrt2); break;
    case GateKind::SY: fill(24, 12, 0, 12, kInvSqrt2); break;
    case GateKind::SW: fill(24, 15, 21, 12, kInvSqrt2); break;
    default: throw std::invalid_argument("not a single-qubit gate");
    }
    return m;
}

Mat4 gate_matrix_2q(GateKind k) {
    Mat4 m{};
    switch (k) {
    case GateKind::CZ:
        for (int i = 0; i < 4; ++i) m[std::size_t(i * 4 + i)] = (i == 3) ? -1.0 : 1.0;
        break;
    case GateKind::ISWAP:
        // in (x0,x1) -> out (x1,x0) with phase w24^{18x0+18x1+12x0x1}
        for (int x0 = 0; x0 < 2; ++x0)
            for (int x1 = 0; x1 < 2; ++x1) {
                int in = x0 | (x1 << 1);
                int out = x1 | (x0 << 1);
                m[std::size_t(out * 4 + in)] = omega(24, 18 * x0 + 18 * x1 + 12 * x0 * x1);
            }
        break;
    default: throw std::invalid_argument("not a two-qubit gate");
    }
    return m;
}

Mat2 textbook_matrix_1q(GateKind k) {
    const std::complex<double> i{0.0, 1.0};
    switch (k) {
    case GateKind::H: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::T: return {1, 0, 0, omega(8, 1)};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::SX: // (I - iX) e^{ipi/4}/sqrt(2)
        return {0.5 * (1. + i), 0.5 * (1. - i), 0.5 * (1. - i), 0.5 * (1. + i)};
    case GateKind::SY:
        return {0.5 * (1. + i), -0.5 * (1. + i), 0.5 * (1. + i), 0.5 * (1. + i)};
    case GateKind::SW: {
        // principal square root of W = (X + Y)/sqrt(2):
        // sqrt(W) = e^{i pi/4} (I - iW)/sqrt(2) = (1/sqrt2) [[e^{i pi/4}, -i], [1, e^{i pi/4}]]
        std::complex<double> p = std::exp(i * (std::numbers::pi / 4.0));
        return {p * kInvSqrt2, -i * kInvSqrt2, kInvSqrt2, p * kInvSqrt2};
    }
    default: throw std::invalid_argument("no textbook 1q matrix");
    }
}

Mat4 textbook_matrix_2q(GateKind k) {
    const std::complex<double> i{0.0, 1.0};
    switch (k) {
    case GateKind::CZ: {
        Mat4 m{};
        for (int d = 0; d < 4; ++d) m[std::size_t(d * 4 + d)] = (d == 3) ? -1.0 : 1.0;
        return m;
    }
    case GateKind::ISWAP: { // fSim(pi/2, 0): |01> -> -i|10>, |10> -> -i|01>
        Mat4 m{};
        m[0] = 1;
        m[1 * 4 + 2] = -i;
        m[2 * 4 + 1] = -i;
        m[3 * 4 + 3] = 1;
        return m;
    }
    default: throw std::invalid_argument("no textbook 2q matrix");
    }
}

double Statevector::norm() const {
    double s = 0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

namespace {

void apply_1q(Statevector& sv, const Mat2& m, int q, int threads) {
    const std::size_t size = sv.amps.size();
    const std::size_t stride = std::size_t(1) << q;
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t base = begin; base < end; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                std::complex<double>& a0 = sv.amps[base + off];
                std::complex<double>& a1 = sv.amps[base + off + stride];
                std::complex<double> n0 = m[0] * a0 + m[1] * a1;
                std::complex<double> n1 = m[2] * a0 + m[3] * a1;
                a0 = n0;
                a1 = n1;
            }
        }
    };
    if (threads <= 1 || size < (static_cast<std::size_t>(1) << 12)) {
        work(0, size);
        return;
    }
    // block boundaries aligned to 2*stride keep writes disjoint
    std::size_t blocks = size / (2 * stride);
    int nt = int(std::min<std::size_t>(static_cast<std::size_t>(threads), blocks));
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) {
        std::size_t b0 = blocks * std::size_t(t) / std::size_t(nt);
        std::size_t b1 = blocks * std::size_t(t + 1) / std::size_t(nt);
        pool.emplace_back(work, b0 * 2 * stride, b1 * 2 * stride);
    }
    for (auto& th : pool) th.join();
}

void apply_2q(Statevector& sv, const Mat4& m, int q0, int q1) {
    // q0 is the low bit of the 2-bit block index (x0), q1 the high bit
    const std::size_t size = sv.amps.size();
    const std::size_t m0 = std::size_t(1) << q0;
    const std::size_t m1 = std::size_t(1) << q1;
    for (std::size_t idx = 0; idx < size; ++idx) {
        if (idx & (m0 | m1)) continue;
        std::array<std::complex<double>, 4> v{sv.amps[idx], sv.amps[idx | m0],
                                              sv.amps[idx | m1], sv.amps[idx | m0 | m1]};
        for (int out = 0; out < 4; ++out) {
            std::complex<double> acc = 0;
            for (int in = 0; in < 4; ++in) acc += m[std::size_t(out * 4 + in)] * v[std::size_t(in)];
            std::size_t pos = idx | ((out & 1) ? m0 : 0) | ((out & 2) ? m1 : 0);
            sv.amps[pos] = acc;
        }
    }
}

} // namespace

Statevector simulate_statevector(const Circuit& c, std::span<const std::uint8_t> in_bits,
                                 int threads) {
    if (c.n_qubits > 20) throw TooLarge("statevector oracle capped at 20 qubits");
    if (int(in_bits.size()) != c.n_qubits)
        throw std::invalid_argument("input bitstring length != qubit count");
    Statevector sv;
    sv.n_qubits = c.n_qubits;
    sv.amps.assign(static_cast<std::size_t>(1) << c.n_qubits, 0.0);
    std::size_t idx = 0;
    for (int q = 0; q < c.n_qubits; ++q)
        if (in_bits[std::size_t(q)]) idx |= std::size_t(1) << q;
    sv.amps[idx] = 1.0;

    for (const Gate& g : c.gates) {
        switch (g.kind) {
        case GateKind::H:
        case GateKind::T:
        case GateKind::Z:
        case GateKind::SX:
        case GateKind::SY:
        case GateKind::SW:
            apply_1q(sv, gate_matrix_1q(g.kind), g.qubits[0], threads);
            break;
        case GateKind::CZ:
        case GateKind::ISWAP:
            apply_2q(sv, gate_matrix_2q(g.kind), g.qubits[0], g.qubits[1]);
            break;
        case GateKind::CCZ: {
            std::size_t mask = (static_cast<std::size_t>(1) << g.qubits[0]) |
                               (static_cast<std::size_t>(1) << g.qubits[1]) |
                               (static_cast<std::size_t>(1) << g.qubits[2]);
            for (std::size_t i = 0; i < sv.amps.size(); ++i)
                if ((i & mask) == mask) sv.amps[i] = -sv.amps[i];
            break;
        }
        }
    }
    return sv;
}

std::complex<double> statevector_amplitude(const Circuit& c,
                                           std::span<const std::uint8_t> in_bits,
                                           std::span<const std::uint8_t> out_bits,
                                           int threads) {
    if (int(out_bits.size()) != c.n_qubits)
        throw std::invalid_argument("output bitstring length != qubit count");
    Statevector sv = simulate_statevector(c, in_bits, threads);
    std::size_t idx = 0;
    for (int q = 0; q < c.n_qubits; ++q)
        if (out_bits[std::size_t(q)]) idx |= std::size_t(1) << q;
    return sv.amps[idx];
}

CountVector brute_force_counts(const SopPolynomial& p, int threads) {
    if (p.n_vars > 24) throw TooLarge("brute-force counting capped at 24 variables");
    const int n = p.n_vars;
    const int r = p.modulus;
    const std::uint64_t total = std::uint64_t(1) << n;

    auto count_range = [&](std::uint64_t begin, std::uint64_t end,
                           std::vector<std::uint64_t>& hist) {
        std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
        for (std::uint64_t v = begin; v < end; ++v) {
            for (int i = 0; i < n; ++i) x[std::size_t(i)] = (v >> i) & 1;
            hist[std::size_t(evaluate_sop(p, x))] += 1;
        }
    };

    int nt = std::max(1, threads);
    nt = int(std::min<std::uint64_t>(std::uint64_t(nt), total ? total : 1));
    std::vector<std::vector<std::uint64_t>> hists(static_cast<std::size_t>(nt),
                                                  std::vector<std::uint64_t>(static_cast<std::size_t>(r), 0));
    if (nt == 1) {
        count_range(0, total, hists[0]);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back(count_range, total * std::uint64_t(t) / std::uint64_t(nt),
                              total * std::uint64_t(t + 1) / std::uint64_t(nt),
                              std::ref(hists[std::size_t(t)]));
        for (auto& th : pool) th.join();
    }

    CountVector out;
    out.n_internal = n;
    out.counts.assign(static_cast<std::size_t>(r), BigUint());
    for (int t = 0; t < nt; ++t) // fixed merge order
        for (int j = 0; j < r; ++j)
            out.counts[std::size_t(j)] += BigUint(hists[std::size_t(t)][std::size_t(j)]);
    return out;
}

int brute_force_lrw(const VariableGraph& g) {
    if (g.n > 9) throw TooLarge("brute-force lrw capped at 9 vertices");
    if (g.n == 0) return 0;
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) perm[std::size_t(i)] = i;
    int best = g.n + 1;
    do {
        // incremental profile with early abort at the current best
        BitVec remaining(g.n);
        for (int v = 0; v < g.n; ++v) remaining.set(v);
        RrefBasis basis(g.n);
        int width = 0;
        for (int i = 0; i < g.n && width < best; ++i) {
            int v = perm[std::size_t(i)];
            remaining.clear(v);
            BitVec row = g.adj.row[std::size_t(v)];
            row &= remaining;
            basis = advance_boundary(basis, v, row);
            width = std::max(width, basis.rank());
        }
        best = std::min(best, width);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace fdd
