#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdd {

enum class GateSetName { T, G, Z };

// T = {H, T, CZ} mod 8, G = {sqrt(X), sqrt(Y), sqrt(W), iSWAP} mod 24,
// Z = {H, Z, CZ, CCZ} mod 2. The quadratic (and cubic) SOP coefficient of
// every gate equals r/2, which the level-by-level builder relies on.
struct GateSet {
    GateSetName name = GateSetName::T;
    int modulus = 8;

    static GateSet from_name(GateSetName n);
    static GateSet from_string(std::string_view s); // "T" | "G" | "Z"
    std::string to_string() const;
};

enum class GateKind { H, T, Z, CZ, CCZ, SX, SY, SW, ISWAP };

int gate_arity(GateKind k);
bool gate_in_set(GateKind k, GateSetName set);
std::string_view gate_mnemonic(GateKind k);

struct Gate {
    GateKind kind;
    std::array<int, 3> qubits{-1, -1, -1}; // first gate_arity(kind) entries used

    int arity() const { return gate_arity(kind); }
    bool operator==(const Gate&) const = default;
};

struct Circuit {
    int n_qubits = 0;
    GateSet gate_set;
    std::vector<Gate> gates; // application order U_1 ... U_m

    bool operator==(const Circuit& o) const {
        return n_qubits == o.n_qubits && gate_set.name == o.gate_set.name &&
               gates == o.gates;
    }
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Line-oriented grammar: `gateset <T|G|Z>`, `qubits <n>`, then one gate per
// line (`h 0`, `cz 0 1`, ...). `#` starts a comment.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);

Circuit load_circuit_file(const std::string& path);

} // namespace fdd
