#include "feynmandd/families.hpp"
#include "feynmandd/oracle.hpp"
#include "feynmandd/ordering.hpp"
#include "feynmandd/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitParse = 1;
constexpr int kExitCapability = 2;
constexpr int kExitVerifyMismatch = 3;

std::vector<std::uint8_t> parse_bits(const std::string& s, int n_qubits, const char* what) {
    if (s.empty()) return {};
    if (int(s.size()) != n_qubits)
        throw std::invalid_argument(std::string(what) + " bitstring length != qubit count");
    std::vector<std::uint8_t> bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1')
            throw std::invalid_argument(std::string(what) + " bitstring must be over {0,1}");
        bits[i] = std::uint8_t(s[i] - '0');
    }
    return bits;
}

std::size_t max_nodes_from_env() {
    const char* v = std::getenv("FEYNMANDD_MAX_NODES");
    if (!v) return fdd::kDefaultMaxNodes;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || parsed == 0) return fdd::kDefaultMaxNodes;
    return std::size_t(std::min<unsigned long long>(parsed, 1ull << 30));
}

// "natural" | "greedy" | "exhaustive" | "explicit:<perm file>"
void apply_order_flag(fdd::PipelineOptions& opt, const std::string& flag) {
    if (flag.rfind("explicit:", 0) == 0) {
        opt.order_method = "explicit";
        std::string path = flag.substr(9);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open ordering file '" + path + "'");
        int v;
        while (in >> v) opt.explicit_perm.push_back(v);
        return;
    }
    if (flag != "natural" && flag != "greedy" && flag != "exhaustive")
        throw std::invalid_argument("unknown --order value '" + flag + "'");
    opt.order_method = flag;
}

int cmd_simulate(const std::string& file, const std::string& order_flag, const std::string& in,
                 const std::string& out, bool json, int threads) {
    fdd::Circuit c = fdd::load_circuit_file(file);
    fdd::PipelineOptions opt;
    apply_order_flag(opt, order_flag);
    opt.in_bits = parse_bits(in, c.n_qubits, "--in");
    opt.out_bits = parse_bits(out, c.n_qubits, "--out");
    opt.threads = threads;
    opt.max_nodes = max_nodes_from_env();
    fdd::RunReport rep = fdd::run_pipeline(c, opt);
    std::cout << (json ? fdd::report_to_json(rep) + "\n" : fdd::report_to_text(rep));
    return 0;
}

int cmd_stats(const std::string& file, const std::string& order_flag) {
    fdd::Circuit c = fdd::load_circuit_file(file);
    fdd::PipelineOptions opt;
    apply_order_flag(opt, order_flag);
    opt.max_nodes = max_nodes_from_env();
    opt.want_counts = false;
    fdd::RunReport rep = fdd::run_pipeline(c, opt);
    if (rep.vanishes) {
        std::cout << "vanishing boundary: no diagram built\n";
        return 0;
    }
    std::cout << "n_internal " << rep.n_internal << "  ordering " << rep.order_method
              << "  width " << (rep.width < 0 ? std::string("n/a") : std::to_string(rep.width))
              << "\n";
    std::cout << "internal nodes " << rep.dd_total_nodes << "  terminals " << rep.dd_terminals
              << "\n";
    if (rep.width >= 0) {
        // r*2^{r_i} per level (2^{r_i+3} for the mod-8 gate set)
        const double factor = double(std::max(rep.modulus, 8));
        bool all_ok = true;
        std::cout << "level  nodes  bound(" << std::max(rep.modulus, 8) << "*2^r_i)\n";
        for (std::size_t i = 0; i < rep.dd_per_level.size(); ++i) {
            double bound = factor * std::ldexp(1.0, rep.profile[i]);
            bool ok = double(rep.dd_per_level[i]) <= bound;
            all_ok = all_ok && ok;
            std::cout << i + 1 << "  " << rep.dd_per_level[i] << "  " << std::int64_t(bound)
                      << (ok ? "" : "  VIOLATED") << "\n";
        }
        double total_bound = double(rep.n_internal) * factor * std::ldexp(1.0, rep.width);
        std::cout << "total " << rep.dd_total_nodes << " <= n*" << std::max(rep.modulus, 8)
                  << "*2^w = " << std::int64_t(total_bound) << " : "
                  << (double(rep.dd_total_nodes) <= total_bound && all_ok ? "ok" : "VIOLATED")
                  << "\n";
    } else {
        std::cout << "degree-3 polynomial: level-width bound not applicable\n";
    }
    return 0;
}

int cmd_order(const std::string& file, const std::string& method, const std::string& out_path) {
    fdd::Circuit c = fdd::load_circuit_file(file);
    fdd::SopPolynomial sop = fdd::extract_sop(c);
    std::vector<std::uint8_t> zeros(static_cast<std::size_t>(c.n_qubits), 0);
    fdd::AmplitudeTask task = fdd::substitute_externals(sop, zeros, zeros);
    if (task.vanishes) {
        std::cout << "vanishing boundary: nothing to order\n";
        return 0;
    }
    fdd::PipelineOptions opt;
    opt.order_method = method;
    std::string used;
    fdd::LinearOrdering ord = fdd::choose_ordering(task.poly, opt, used);
    std::cout << "method " << used << "\nwidth "
              << (ord.width < 0 ? std::string("n/a") : std::to_string(ord.width)) << "\nperm";
    for (int v : ord.perm) std::cout << ' ' << v;
    std::cout << "\nprofile";
    for (int r : ord.profile) std::cout << ' ' << r;
    std::cout << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        for (std::size_t i = 0; i < ord.perm.size(); ++i)
            out << ord.perm[i] << (i + 1 == ord.perm.size() ? "\n" : " ");
    }
    return 0;
}

int cmd_gen(const std::string& family, int n, int k, std::uint64_t seed,
            const std::string& gateset, int m, const std::string& out_path) {
    fdd::FamilyInstance inst;
    if (family == "linear-network") {
        inst = fdd::gen_linear_network(n, k, seed);
    } else if (family == "lrw") {
        inst = fdd::gen_lrw_family(n, k, seed);
    } else if (family == "random") {
        inst = fdd::gen_random_circuit(fdd::GateSet::from_string(gateset).name, n, m, seed);
    } else {
        throw std::invalid_argument("unknown family '" + family +
                                    "' (expected linear-network | lrw | random)");
    }
    if (out_path.empty()) {
        std::cout << inst.to_file_string();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << inst.to_file_string();
    }
    return 0;
}

int cmd_verify(const std::string& file, const std::string& in, const std::string& out,
               const std::string& order_flag, int threads) {
    fdd::Circuit c = fdd::load_circuit_file(file);
    fdd::PipelineOptions opt;
    apply_order_flag(opt, order_flag);
    opt.in_bits = parse_bits(in, c.n_qubits, "--in");
    opt.out_bits = parse_bits(out, c.n_qubits, "--out");
    opt.threads = threads;
    opt.max_nodes = max_nodes_from_env();
    fdd::RunReport rep = fdd::run_pipeline(c, opt);

    std::vector<std::uint8_t> in_bits = opt.in_bits, out_bits = opt.out_bits;
    if (in_bits.empty()) in_bits.assign(static_cast<std::size_t>(c.n_qubits), 0);
    if (out_bits.empty()) out_bits.assign(static_cast<std::size_t>(c.n_qubits), 0);
    std::complex<double> oracle = fdd::statevector_amplitude(c, in_bits, out_bits, threads);

    double delta = std::abs(rep.amplitude - oracle);
    std::cout.precision(17);
    std::cout << "feynmandd " << rep.amplitude.real() << " + " << rep.amplitude.imag() << "i\n";
    std::cout << "oracle    " << oracle.real() << " + " << oracle.imag() << "i\n";
    std::cout << "delta     " << delta << "\n";
    if (delta > 1e-9) {
        std::cerr << "verify: MISMATCH (|delta| > 1e-9)\n";
        return kExitVerifyMismatch;
    }
    std::cout << "verify: ok\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FeynmanDD: exact quantum-circuit amplitudes via multi-terminal decision diagrams"};
    app.require_subcommand(1);

    std::string file, order_flag = "natural", in_bits, out_bits, method = "natural";
    std::string family, gateset = "T", out_path;
    bool json = false;
    int threads = 1, n = 0, k = 0, m = 0;
    std::uint64_t seed = 0;

    auto* sim = app.add_subcommand("simulate", "compute an amplitude <out|C|in>");
    sim->add_option("file", file, "circuit file")->required();
    sim->add_option("--order", order_flag, "natural|greedy|exhaustive|explicit:<file>");
    sim->add_option("--in", in_bits, "input bits (default all zeros)");
    sim->add_option("--out", out_bits, "output bits (default all zeros)");
    sim->add_flag("--json", json, "machine-readable report");
    sim->add_option("--threads", threads, "worker threads for parallelizable internals");

    auto* stats = app.add_subcommand("stats", "diagram size and per-level width bounds");
    stats->add_option("file", file, "circuit file")->required();
    stats->add_option("--order", order_flag, "natural|greedy|exhaustive|explicit:<file>");

    auto* order = app.add_subcommand("order", "variable ordering search");
    order->add_option("file", file, "circuit file")->required();
    order->add_option("--method", method, "natural|greedy|exhaustive")->required();
    order->add_option("--write", out_path, "write the permutation to a file");

    auto* gen = app.add_subcommand("gen", "generate a benchmark circuit");
    gen->add_option("family", family, "linear-network | lrw | random")->required();
    gen->add_option("--n", n, "qubits")->required();
    gen->add_option("--k", k, "locality / rank parameter");
    gen->add_option("--seed", seed, "64-bit seed")->required();
    gen->add_option("--gateset", gateset, "gate set for random (T|G|Z)");
    gen->add_option("--m", m, "gate count for random");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "compare against the statevector oracle (n <= 20)");
    verify->add_option("file", file, "circuit file")->required();
    verify->add_option("--in", in_bits, "input bits");
    verify->add_option("--out", out_bits, "output bits");
    verify->add_option("--order", order_flag, "ordering method");
    verify->add_option("--threads", threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(file, order_flag, in_bits, out_bits, json, threads);
        if (stats->parsed()) return cmd_stats(file, order_flag);
        if (order->parsed()) return cmd_order(file, method, out_path);
        if (gen->parsed()) return cmd_gen(family, n, k, seed, gateset, m, out_path);
        if (verify->parsed()) return cmd_verify(file, in_bits, out_bits, order_flag, threads);
    } catch (const fdd::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const fdd::TooLarge& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const fdd::CapacityExceeded& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const fdd::DegreeTooHigh& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const std::invalid_argument& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
