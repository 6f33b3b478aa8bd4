#include "feynmandd/report.hpp"

#include "feynmandd/ordering.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

namespace fdd {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

LinearOrdering identity_ordering(const SopPolynomial& poly) {
    std::vector<int> perm(static_cast<std::size_t>(poly.n_vars));
    for (int i = 0; i < poly.n_vars; ++i) perm[std::size_t(i)] = i;
    if (poly.cubic.empty()) return ordering_width(variable_graph(poly), std::move(perm));
    LinearOrdering ord;
    ord.perm = std::move(perm);
    ord.width = -1;
    return ord;
}

} // namespace

LinearOrdering choose_ordering(const SopPolynomial& poly, const PipelineOptions& opt,
                               std::string& method_used) {
    const bool degree3 = !poly.cubic.empty();
    method_used = opt.order_method;
    if (opt.order_method == "explicit") {
        if (degree3) {
            LinearOrdering ord;
            ord.perm = opt.explicit_perm;
            if (int(ord.perm.size()) != poly.n_vars)
                throw std::invalid_argument("explicit ordering length != internal variable count");
            ord.width = -1;
            return ord;
        }
        return ordering_width(variable_graph(poly), opt.explicit_perm);
    }
    if (degree3 || opt.order_method == "natural") {
        if (degree3) method_used = "natural"; // no variable graph for degree 3
        return identity_ordering(poly);
    }
    VariableGraph g = variable_graph(poly);
    if (opt.order_method == "greedy") return greedy_ordering(g);
    if (opt.order_method == "exhaustive") return exhaustive_lrw(g, opt.exhaustive_cap);
    throw std::invalid_argument("unknown ordering method '" + opt.order_method + "'");
}

RunReport run_pipeline(const Circuit& c, const PipelineOptions& opt) {
    RunReport rep;
    auto t0 = std::chrono::steady_clock::now();

    SopPolynomial sop = extract_sop(c);
    std::vector<std::uint8_t> in_bits = opt.in_bits, out_bits = opt.out_bits;
    if (in_bits.empty()) in_bits.assign(static_cast<std::size_t>(c.n_qubits), 0);
    if (out_bits.empty()) out_bits.assign(static_cast<std::size_t>(c.n_qubits), 0);
    AmplitudeTask task = substitute_externals(sop, in_bits, out_bits);
    rep.extract_ms = ms_since(t0);

    rep.modulus = task.poly.modulus;
    rep.e = task.poly.norm_exponent;
    rep.n_internal = task.n_internal;
    rep.vanishes = task.vanishes;
    rep.counts.assign(static_cast<std::size_t>(rep.modulus), "0");

    if (task.vanishes) {
        rep.order_method = opt.order_method;
        return rep;
    }

    t0 = std::chrono::steady_clock::now();
    LinearOrdering ord = choose_ordering(task.poly, opt, rep.order_method);
    rep.perm = ord.perm;
    rep.width = ord.width;
    rep.profile = ord.profile;
    rep.order_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    Mtbdd dd = task.poly.cubic.empty()
                   ? build_level_by_level(task.poly, ord, opt.max_nodes)
                   : build_by_apply(task.poly, ord.perm, opt.max_nodes);
    rep.build_ms = ms_since(t0);

    DiagramStats stats = diagram_stats(dd);
    rep.dd_total_nodes = stats.total_internal;
    rep.dd_per_level = stats.per_level;
    rep.dd_terminals = stats.terminals;

    if (opt.want_counts) {
        t0 = std::chrono::steady_clock::now();
        CountVector cv = count_solutions(dd);
        rep.amplitude = counts_to_amplitude(cv, rep.modulus, rep.e);
        for (int j = 0; j < rep.modulus; ++j)
            rep.counts[std::size_t(j)] = cv.counts[std::size_t(j)].to_string();
        rep.count_ms = ms_since(t0);
    }
    return rep;
}

namespace {

nlohmann::ordered_json report_json_impl(const RunReport& r, bool with_timing) {
    nlohmann::ordered_json j;
    j["amplitude"] = {{"re", r.amplitude.real()}, {"im", r.amplitude.imag()}};
    j["counts"] = r.counts;
    j["modulus"] = r.modulus;
    j["e"] = r.e;
    j["n_internal"] = r.n_internal;
    j["vanishes"] = r.vanishes;
    j["dd"] = {{"total_nodes", r.dd_total_nodes},
               {"per_level", r.dd_per_level},
               {"terminals", r.dd_terminals}};
    j["ordering"] = {{"method", r.order_method},
                     {"perm", r.perm},
                     {"width", r.width},
                     {"profile", r.profile}};
    if (with_timing)
        j["timing"] = {{"extract_ms", r.extract_ms},
                       {"order_ms", r.order_ms},
                       {"build_ms", r.build_ms},
                       {"count_ms", r.count_ms}};
    return j;
}

} // namespace

std::string report_to_json(const RunReport& r) { return report_json_impl(r, true).dump(2); }

std::string report_to_json_without_timing(const RunReport& r) {
    return report_json_impl(r, false).dump(2);
}

std::string report_to_text(const RunReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "amplitude   " << r.amplitude.real() << (r.amplitude.imag() < 0 ? " - " : " + ")
        << std::abs(r.amplitude.imag()) << "i\n";
    out << "modulus     " << r.modulus << "   e " << r.e << "   R = 2^(e/2)\n";
    out << "n_internal  " << r.n_internal << (r.vanishes ? "   (vanishing boundary)" : "") << "\n";
    out << "counts     ";
    for (const auto& c : r.counts) out << ' ' << c;
    out << "\n";
    out << "ordering    " << r.order_method << "  width "
        << (r.width < 0 ? std::string("n/a") : std::to_string(r.width)) << "\n";
    out << "dd          " << r.dd_total_nodes << " internal nodes, " << r.dd_terminals
        << " terminals\n";
    out << "time(ms)    extract " << r.extract_ms << "  order " << r.order_ms << "  build "
        << r.build_ms << "  count " << r.count_ms << "\n";
    return out.str();
}

} // namespace fdd
