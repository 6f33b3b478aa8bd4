#include "feynmandd/families.hpp"
#include "feynmandd/oracle.hpp"
#include "feynmandd/ordering.hpp"
#include "feynmandd/report.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fdd;

namespace {

std::vector<std::uint8_t> to_bits(const std::string& s) {
    std::vector<std::uint8_t> bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bitstring must be over {0,1}");
        bits[i] = std::uint8_t(s[i] - '0');
    }
    return bits;
}

py::dict report_to_dict(const RunReport& r) {
    py::dict d;
    d["amplitude"] = std::complex<double>(r.amplitude);
    py::list counts;
    for (const auto& c : r.counts) counts.append(py::int_(py::str(c)));
    d["counts"] = counts;
    d["modulus"] = r.modulus;
    d["e"] = r.e;
    d["n_internal"] = r.n_internal;
    d["vanishes"] = r.vanishes;
    d["dd_total_nodes"] = r.dd_total_nodes;
    d["dd_per_level"] = r.dd_per_level;
    d["dd_terminals"] = r.dd_terminals;
    d["order_method"] = r.order_method;
    d["perm"] = r.perm;
    d["width"] = r.width;
    d["profile"] = r.profile;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "FeynmanDD: exact quantum-circuit amplitudes via multi-terminal decision diagrams";

    py::register_exception<ParseError>(m, "CircuitParseError");
    py::register_exception<TooLarge>(m, "TooLargeError");
    py::register_exception<DegreeTooHigh>(m, "DegreeTooHighError");
    py::register_exception<CapacityExceeded>(m, "CapacityExceededError");

    py::class_<Circuit>(m, "Circuit")
        .def_property_readonly("n_qubits", [](const Circuit& c) { return c.n_qubits; })
        .def_property_readonly("modulus", [](const Circuit& c) { return c.gate_set.modulus; })
        .def_property_readonly("gate_set",
                               [](const Circuit& c) { return c.gate_set.to_string(); })
        .def("__len__", [](const Circuit& c) { return c.gates.size(); })
        .def("__str__", [](const Circuit& c) { return serialize_circuit(c); });

    m.def("parse_circuit", [](const std::string& text) { return parse_circuit(text); });
    m.def("serialize_circuit", &serialize_circuit);

    m.def(
        "simulate",
        [](const Circuit& c, const std::string& order, const std::string& in_bits,
           const std::string& out_bits, int threads) {
            PipelineOptions opt;
            opt.order_method = order;
            opt.in_bits = to_bits(in_bits);
            opt.out_bits = to_bits(out_bits);
            opt.threads = threads;
            return report_to_dict(run_pipeline(c, opt));
        },
        py::arg("circuit"), py::arg("order") = "natural", py::arg("in_bits") = "",
        py::arg("out_bits") = "", py::arg("threads") = 1,
        "Full pipeline: extract, substitute, order, build, count, amplitude.");

    m.def(
        "amplitude",
        [](const Circuit& c, const std::string& in_bits, const std::string& out_bits) {
            PipelineOptions opt;
            opt.in_bits = to_bits(in_bits);
            opt.out_bits = to_bits(out_bits);
            return std::complex<double>(run_pipeline(c, opt).amplitude);
        },
        py::arg("circuit"), py::arg("in_bits") = "", py::arg("out_bits") = "");

    m.def(
        "statevector_amplitude",
        [](const Circuit& c, const std::string& in_bits, const std::string& out_bits,
           int threads) {
            std::vector<std::uint8_t> in = to_bits(in_bits), out = to_bits(out_bits);
            if (in.empty()) in.assign(static_cast<std::size_t>(c.n_qubits), 0);
            if (out.empty()) out.assign(static_cast<std::size_t>(c.n_qubits), 0);
            return statevector_amplitude(c, in, out, threads);
        },
        py::arg("circuit"), py::arg("in_bits") = "", py::arg("out_bits") = "",
        py::arg("threads") = 1, "Dense oracle amplitude (n <= 20).");

    m.def(
        "gen_linear_network",
        [](int n, int k, std::uint64_t seed) { return gen_linear_network(n, k, seed).circuit; },
        py::arg("n"), py::arg("k"), py::arg("seed"));
    m.def(
        "gen_lrw_family",
        [](int n, int k, std::uint64_t seed) { return gen_lrw_family(n, k, seed).circuit; },
        py::arg("n"), py::arg("k"), py::arg("seed"));
    m.def(
        "gen_random_circuit",
        [](const std::string& gate_set, int n, int m, std::uint64_t seed) {
            return gen_random_circuit(GateSet::from_string(gate_set).name, n, m, seed).circuit;
        },
        py::arg("gate_set"), py::arg("n"), py::arg("m"), py::arg("seed"));
    m.def(
        "gen_file",
        [](const std::string& family, int n, int k, std::uint64_t seed) {
            if (family == "linear-network") return gen_linear_network(n, k, seed).to_file_string();
            if (family == "lrw") return gen_lrw_family(n, k, seed).to_file_string();
            throw std::invalid_argument("unknown family '" + family + "'");
        },
        py::arg("family"), py::arg("n"), py::arg("k"), py::arg("seed"),
        "Circuit file text with the instance header comment.");
}
