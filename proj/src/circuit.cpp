#include "feynmandd/circuit.hpp"

#include <fstream>
#include <sstream>

namespace fdd {

GateSet GateSet::from_name(GateSetName n) {
    switch (n) {
    case GateSetName::T: return {GateSetName::T, 8};
    case GateSetName::G: return {GateSetName::G, 24};
    case GateSetName::Z: return {GateSetName::Z, 2};
    }
    throw std::logic_error("bad gate set");
}

GateSet GateSet::from_string(std::string_view s) {
    if (s == "T") return from_name(GateSetName::T);
    if (s == "G") return from_name(GateSetName::G);
    if (s == "Z") return from_name(GateSetName::Z);
    throw std::invalid_argument("unknown gate set '" + std::string(s) + "'");
}

std::string GateSet::to_string() const {
    switch (name) {
    case GateSetName::T: return "T";
    case GateSetName::G: return "G";
    case GateSetName::Z: return "Z";
    }
    return "?";
}

int gate_arity(GateKind k) {
    switch (k) {
    case GateKind::H:
    case GateKind::T:
    case GateKind::Z:
    case GateKind::SX:
    case GateKind::SY:
    case GateKind::SW: return 1;
    case GateKind::CZ:
    case GateKind::ISWAP: return 2;
    case GateKind::CCZ: return 3;
    }
    return 0;
}

bool gate_in_set(GateKind k, GateSetName set) {
    switch (set) {
    case GateSetName::T:
        return k == GateKind::H || k == GateKind::T || k == GateKind::CZ;
    case GateSetName::Z:
        return k == GateKind::H || k == GateKind::Z || k == GateKind::CZ ||
               k == GateKind::CCZ;
    case GateSetName::G:
        return k == GateKind::SX || k == GateKind::SY || k == GateKind::SW ||
               k == GateKind::ISWAP;
    }
    return false;
}

std::string_view gate_mnemonic(GateKind k) {
    switch (k) {
    case GateKind::H: return "h";
    case GateKind::T: return "t";
    case GateKind::Z: return "z";
    case GateKind::CZ: return "cz";
    case GateKind::CCZ: return "ccz";
    case GateKind::SX: return "sx";
    case GateKind::SY: return "sy";
    case GateKind::SW: return "sw";
    case GateKind::ISWAP: return "iswap";
    }
    return "?";
}

namespace {

bool mnemonic_to_kind(std::string_view s, GateKind& out) {
    static constexpr GateKind kinds[] = {
        GateKind::H,  GateKind::T,  GateKind::Z,  GateKind::CZ, GateKind::CCZ,
        GateKind::SX, GateKind::SY, GateKind::SW, GateKind::ISWAP};
    for (GateKind k : kinds)
        if (gate_mnemonic(k) == s) {
            out = k;
            return true;
        }
    return false;
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : line) {
        if (ch == '#') break;
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

int parse_int(const std::string& tok, int line, const char* what) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
    if (pos != tok.size() || v < 0)
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    return v;
}

} // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_gateset = false, have_qubits = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(
            start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;

        auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (!have_gateset) {
            if (toks[0] != "gateset" || toks.size() != 2)
                throw ParseError(line_no, "expected 'gateset <T|G|Z>'");
            try {
                c.gate_set = GateSet::from_string(toks[1]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
            have_gateset = true;
            continue;
        }
        if (!have_qubits) {
            if (toks[0] != "qubits" || toks.size() != 2)
                throw ParseError(line_no, "expected 'qubits <n>'");
            c.n_qubits = parse_int(toks[1], line_no, "qubit count");
            if (c.n_qubits <= 0) throw ParseError(line_no, "qubit count must be positive");
            have_qubits = true;
            continue;
        }

        GateKind kind;
        if (!mnemonic_to_kind(toks[0], kind))
            throw ParseError(line_no, "unknown gate '" + toks[0] + "'");
        if (!gate_in_set(kind, c.gate_set.name))
            throw ParseError(line_no, "gate '" + toks[0] + "' is not in gate set " +
                                          c.gate_set.to_string());
        int arity = gate_arity(kind);
        if (int(toks.size()) - 1 != arity)
            throw ParseError(line_no, "gate '" + toks[0] + "' takes " +
                                          std::to_string(arity) + " qubit(s)");
        Gate g{kind, {-1, -1, -1}};
        for (int i = 0; i < arity; ++i) {
            int q = parse_int(toks[i + 1], line_no, "qubit index");
            if (q >= c.n_qubits)
                throw ParseError(line_no, "qubit " + std::to_string(q) + " out of range");
            for (int j = 0; j < i; ++j)
                if (g.qubits[j] == q)
                    throw ParseError(line_no, "duplicate qubit " + std::to_string(q) +
                                                  " in gate '" + toks[0] + "'");
            g.qubits[i] = q;
        }
        c.gates.push_back(g);
    }
    if (!have_gateset) throw ParseError(line_no, "missing 'gateset' header");
    if (!have_qubits) throw ParseError(line_no, "missing 'qubits' header");
    return c;
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "gateset " << c.gate_set.to_string() << "\n";
    out << "qubits " << c.n_qubits << "\n";
    for (const Gate& g : c.gates) {
        out << gate_mnemonic(g.kind);
        for (int i = 0; i < g.arity(); ++i) out << ' ' << g.qubits[i];
        out << "\n";
    }
    return out.str();
}

Circuit load_circuit_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

} // namespace fdd
