#pragma once

#include "feynmandd/circuit.hpp"
#include "feynmandd/mtbdd.hpp"
#include "feynmandd/sop.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace fdd {

struct PipelineOptions {
    std::string order_method = "natural"; // natural | greedy | exhaustive | explicit
    std::vector<int> explicit_perm;       // used when order_method == "explicit"
    std::vector<std::uint8_t> in_bits;    // empty = all zeros
    std::vector<std::uint8_t> out_bits;   // empty = all zeros
    int threads = 1;
    std::size_t max_nodes = kDefaultMaxNodes;
    int exhaustive_cap = 12;
    bool want_counts = true;
};

// Everything the CLI reports for one simulation run. Counts are decimal
// strings (N_j exceeds 64 bits past n = 64); width -1 and an empty profile
// mark degree-3 tasks, which have no variable graph.
struct RunReport {
    std::complex<double> amplitude{0.0, 0.0};
    std::vector<std::string> counts;
    int modulus = 2;
    int e = 0;
    int n_internal = 0;
    bool vanishes = false;

    std::int64_t dd_total_nodes = 0;
    std::vector<std::int64_t> dd_per_level;
    int dd_terminals = 0;

    std::string order_method = "natural";
    std::vector<int> perm;
    int width = -1;
    std::vector<int> profile;

    double extract_ms = 0, order_ms = 0, build_ms = 0, count_ms = 0;
};

// parse -> extract -> substitute -> order -> build -> count -> amplitude.
RunReport run_pipeline(const Circuit& c, const PipelineOptions& opt);

// Ordering of an amplitude task under the pipeline's method names; degree-3
// tasks fall back to the natural (creation) order.
LinearOrdering choose_ordering(const SopPolynomial& poly, const PipelineOptions& opt,
                               std::string& method_used);

std::string report_to_json(const RunReport& r);                 // stable key order
std::string report_to_json_without_timing(const RunReport& r);  // determinism checks
std::string report_to_text(const RunReport& r);

} // namespace fdd
