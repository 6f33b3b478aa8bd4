#include "feynmandd/sop.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fdd {

int SopPolynomial::new_var() {
    linear.push_back(0);
    return n_vars++;
}

void SopPolynomial::add_linear(int var, int amount) {
    linear[var] = ((linear[var] + amount) % modulus + modulus) % modulus;
}

void SopPolynomial::add_constant(int amount) {
    constant = ((constant + amount) % modulus + modulus) % modulus;
}

void SopPolynomial::toggle_quadratic(int i, int j) {
    if (i == j) {
        add_linear(i, modulus / 2);
        return;
    }
    if (i > j) std::swap(i, j);
    std::pair<int, int> t{i, j};
    auto it = std::lower_bound(quadratic.begin(), quadratic.end(), t);
    if (it != quadratic.end() && *it == t)
        quadratic.erase(it);
    else
        quadratic.insert(it, t);
}

void SopPolynomial::toggle_cubic(int i, int j, int k) {
    std::array<int, 3> t{i, j, k};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1]) {
        toggle_quadratic(t[1], t[2]); // also resolves t[1] == t[2]
        return;
    }
    if (t[1] == t[2]) {
        toggle_quadratic(t[0], t[1]);
        return;
    }
    auto it = std::lower_bound(cubic.begin(), cubic.end(), t);
    if (it != cubic.end() && *it == t)
        cubic.erase(it);
    else
        cubic.insert(it, t);
}

int SopPolynomial::degree() const {
    if (!cubic.empty()) return 3;
    if (!quadratic.empty()) return 2;
    for (int b : linear)
        if (b) return 1;
    return 0;
}

std::string SopPolynomial::debug_string() const {
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first) out << " + ";
        first = false;
    };
    for (const auto& [i, j] : quadratic) {
        sep();
        out << modulus / 2 << "*x" << i << "*x" << j;
    }
    for (const auto& t : cubic) {
        sep();
        out << modulus / 2 << "*x" << t[0] << "*x" << t[1] << "*x" << t[2];
    }
    for (int i = 0; i < n_vars; ++i)
        if (linear[i]) {
            sep();
            out << linear[i] << "*x" << i;
        }
    if (constant || first) {
        sep();
        out << constant;
    }
    out << " (mod " << modulus << "), e=" << norm_exponent;
    return out.str();
}

SopPolynomial extract_sop(const Circuit& c) {
    SopPolynomial p;
    p.modulus = c.gate_set.modulus;

    // One timeline variable per wire segment; cur[q] is the variable the
    // wire of qubit q currently carries. Diagonal gates identify their
    // output variables with the inputs, i.e. leave cur untouched.
    std::vector<int> cur(c.n_qubits);
    std::vector<int> input_var(c.n_qubits);
    for (int q = 0; q < c.n_qubits; ++q) input_var[q] = cur[q] = p.new_var();

    for (const Gate& g : c.gates) {
        const int q0 = g.qubits[0];
        switch (g.kind) {
        case GateKind::H: {
            int v = p.new_var();
            p.toggle_quadratic(cur[q0], v);
            p.norm_exponent += 1;
            cur[q0] = v;
            break;
        }
        case GateKind::T:
            p.add_linear(cur[q0], 1);
            break;
        case GateKind::Z:
            p.add_linear(cur[q0], 1);
            break;
        case GateKind::CZ:
            p.toggle_quadratic(cur[q0], cur[g.qubits[1]]);
            break;
        case GateKind::CCZ:
            p.toggle_cubic(cur[q0], cur[g.qubits[1]], cur[g.qubits[2]]);
            break;
        case GateKind::SX: {
            int v = p.new_var();
            p.add_linear(cur[q0], 18);
            p.add_linear(v, 18);
            p.toggle_quadratic(cur[q0], v);
            p.norm_exponent += 1;
            cur[q0] = v;
            break;
        }
        case GateKind::SY: {
            int v = p.new_var();
            p.add_linear(cur[q0], 12);
            p.toggle_quadratic(cur[q0], v);
            p.norm_exponent += 1;
            cur[q0] = v;
            break;
        }
        case GateKind::SW: {
            int v = p.new_var();
            p.add_linear(cur[q0], 15);
            p.add_linear(v, 21);
            p.toggle_quadratic(cur[q0], v);
            p.norm_exponent += 1;
            cur[q0] = v;
            break;
        }
        case GateKind::ISWAP: {
            int q1 = g.qubits[1];
            p.add_linear(cur[q0], 18);
            p.add_linear(cur[q1], 18);
            p.toggle_quadratic(cur[q0], cur[q1]);
            std::swap(cur[q0], cur[q1]);
            break;
        }
        }
    }

    p.external.resize(c.n_qubits);
    for (int q = 0; q < c.n_qubits; ++q) p.external[q] = {input_var[q], cur[q]};
    return p;
}

AmplitudeTask substitute_externals(const SopPolynomial& p,
                                   std::span<const std::uint8_t> in_bits,
                                   std::span<const std::uint8_t> out_bits) {
    const std::size_t n_qubits = p.external.size();
    if (in_bits.size() != n_qubits || out_bits.size() != n_qubits)
        throw std::invalid_argument("boundary bitstring length != qubit count");

    constexpr int kFree = -1;
    std::vector<int> value(p.n_vars, kFree);
    bool vanishes = false;
    auto assign = [&](int var, int bit) {
        if (value[var] == kFree)
            value[var] = bit;
        else if (value[var] != bit)
            vanishes = true;
    };
    for (std::size_t q = 0; q < n_qubits; ++q) {
        assign(p.external[q].first, in_bits[q] ? 1 : 0);
        assign(p.external[q].second, out_bits[q] ? 1 : 0);
    }

    // Renumber the surviving variables, preserving creation order.
    std::vector<int> remap(p.n_vars, -1);
    AmplitudeTask task;
    task.poly.modulus = p.modulus;
    task.poly.norm_exponent = p.norm_exponent;
    for (int v = 0; v < p.n_vars; ++v)
        if (value[v] == kFree) remap[v] = task.poly.new_var();
    task.n_internal = task.poly.n_vars;
    task.vanishes = vanishes;
    if (vanishes) return task;

    const int half = p.modulus / 2;
    task.poly.add_constant(p.constant);
    for (int v = 0; v < p.n_vars; ++v) {
        if (!p.linear[v]) continue;
        if (value[v] == kFree)
            task.poly.add_linear(remap[v], p.linear[v]);
        else if (value[v] == 1)
            task.poly.add_constant(p.linear[v]);
    }
    for (const auto& [i, j] : p.quadratic) {
        int fi = value[i], fj = value[j];
        if (fi == kFree && fj == kFree)
            task.poly.toggle_quadratic(remap[i], remap[j]);
        else if (fi == kFree) {
            if (fj == 1) task.poly.add_linear(remap[i], half);
        } else if (fj == kFree) {
            if (fi == 1) task.poly.add_linear(remap[j], half);
        } else if (fi == 1 && fj == 1)
            task.poly.add_constant(half);
    }
    for (const auto& t : p.cubic) {
        int free_vars[3];
        int n_free = 0;
        bool zero = false;
        for (int v : t) {
            if (value[v] == kFree)
                free_vars[n_free++] = remap[v];
            else if (value[v] == 0)
                zero = true;
        }
        if (zero) continue;
        switch (n_free) {
        case 3: task.poly.toggle_cubic(free_vars[0], free_vars[1], free_vars[2]); break;
        case 2: task.poly.toggle_quadratic(free_vars[0], free_vars[1]); break;
        case 1: task.poly.add_linear(free_vars[0], half); break;
        case 0: task.poly.add_constant(half); break;
        }
    }
    return task;
}

int evaluate_sop(const SopPolynomial& p, std::span<const std::uint8_t> x) {
    if (int(x.size()) != p.n_vars)
        throw std::invalid_argument("assignment length != variable count");
    int parity = 0; // quadratic/cubic terms all carry coefficient r/2
    for (const auto& [i, j] : p.quadratic) parity ^= x[i] & x[j];
    for (const auto& t : p.cubic) parity ^= x[t[0]] & x[t[1]] & x[t[2]];
    long acc = parity ? p.modulus / 2 : 0;
    for (int i = 0; i < p.n_vars; ++i)
        if (x[i]) acc += p.linear[i];
    return int((acc + p.constant) % p.modulus);
}

} // namespace fdd
