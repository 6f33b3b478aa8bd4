#include "feynmandd/mtbdd.hpp"
#include "feynmandd/oracle.hpp"
#include "feynmandd/ordering.hpp"
#include "feynmandd/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

using namespace fdd;

namespace {

SopPolynomial caption_polynomial() {
    SopPolynomial p;
    p.modulus = 8;
    for (int i = 0; i < 7; ++i) p.new_var();
    p.toggle_quadratic(0, 1);
    p.toggle_quadratic(1, 3);
    p.toggle_quadratic(2, 5);
    p.toggle_quadratic(3, 5);
    p.toggle_quadratic(3, 4);
    p.toggle_quadratic(5, 6);
    p.add_linear(1, 1);
    p.add_linear(5, 2);
    return p;
}

LinearOrdering natural(const SopPolynomial& p) {
    std::vector<int> perm(static_cast<std::size_t>(p.n_vars));
    for (int i = 0; i < p.n_vars; ++i) perm[std::size_t(i)] = i;
    if (p.cubic.empty()) return ordering_width(variable_graph(p), perm);
    LinearOrdering ord;
    ord.perm = perm;
    ord.width = -1;
    return ord;
}

SopPolynomial random_poly(SplitMix64& rng, int n, int r, bool allow_cubic) {
    SopPolynomial p;
    p.modulus = r;
    for (int i = 0; i < n; ++i) p.new_var();
    if (n >= 2) {
        int quads = int(rng.below(std::uint64_t(2 * n) + 1));
        for (int t = 0; t < quads; ++t) {
            int i = int(rng.below(std::uint64_t(n)));
            int j = int(rng.below(std::uint64_t(n)));
            if (i != j) p.toggle_quadratic(i, j);
        }
    }
    if (allow_cubic && r == 2 && n >= 3) {
        int cubes = int(rng.below(std::uint64_t(n) + 1));
        for (int t = 0; t < cubes; ++t) {
            int i = int(rng.below(std::uint64_t(n)));
            int j = int(rng.below(std::uint64_t(n)));
            int k = int(rng.below(std::uint64_t(n)));
            if (i != j && j != k && i != k) p.toggle_cubic(i, j, k);
        }
    }
    for (int i = 0; i < n; ++i)
        if (rng.bit()) p.add_linear(i, int(rng.below(std::uint64_t(r))));
    p.add_constant(int(rng.below(std::uint64_t(r))));
    return p;
}

Mtbdd build_any(const SopPolynomial& p) {
    LinearOrdering ord = natural(p);
    return p.cubic.empty() ? build_level_by_level(p, ord) : build_by_apply(p, ord.perm);
}

// reducedness: children differ and no (level, zero, one) duplicates
void check_reduced(const Mtbdd& d) {
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t id = 0; id < d.nodes.size(); ++id) {
        if (d.is_terminal(std::int32_t(id))) continue;
        const auto& nd = d.nodes[id];
        CHECK(nd.zero != nd.one);
        CHECK(seen.insert({nd.level, nd.zero, nd.one}).second);
    }
}

void check_exhaustive_equal(const SopPolynomial& p, const Mtbdd& d) {
    REQUIRE(p.n_vars <= 16);
    std::vector<std::uint8_t> x(static_cast<std::size_t>(p.n_vars));
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << p.n_vars); ++v) {
        for (int i = 0; i < p.n_vars; ++i) x[std::size_t(i)] = (v >> i) & 1;
        REQUIRE(d.evaluate(x) == evaluate_sop(p, x));
    }
}

} // namespace

TEST_SUITE_BEGIN("mtbdd");

TEST_CASE("f(y)=y mod 8 builds one internal node over terminals 0 and 1") {
    SopPolynomial p;
    p.modulus = 8;
    p.new_var();
    p.add_linear(0, 1);
    Mtbdd d = build_level_by_level(p, natural(p));
    DiagramStats s = diagram_stats(d);
    CHECK(s.total_internal == 1);
    CHECK(s.terminals == 2);
    CHECK(s.per_level == std::vector<std::int64_t>{1});
    CHECK(d.evaluate(std::vector<std::uint8_t>{0}) == 0);
    CHECK(d.evaluate(std::vector<std::uint8_t>{1}) == 1);

    CountVector cv = count_solutions(d);
    CHECK(cv.counts[0] == BigUint(1));
    CHECK(cv.counts[1] == BigUint(1));
    for (int j = 2; j < 8; ++j) CHECK(cv.counts[std::size_t(j)].is_zero());
}

TEST_CASE("constant polynomial returns a bare terminal") {
    SopPolynomial p;
    p.modulus = 8;
    for (int i = 0; i < 3; ++i) p.new_var();
    p.add_constant(5);
    Mtbdd d = build_level_by_level(p, natural(p));
    CHECK(diagram_stats(d).total_internal == 0);
    CHECK(d.is_terminal(d.root));
    CHECK(d.terminal_label(d.root) == 5);
    // three skipped variables weight the single path by 2^3
    CountVector cv = count_solutions(d);
    CHECK(cv.counts[5] == BigUint(8));
}

TEST_CASE("terminal counting example: gamma=0 with three internal variables") {
    SopPolynomial p;
    p.modulus = 8;
    for (int i = 0; i < 3; ++i) p.new_var();
    Mtbdd d = build_level_by_level(p, natural(p));
    CountVector cv = count_solutions(d);
    CHECK(cv.counts[0] == BigUint(8));
    for (int j = 1; j < 8; ++j) CHECK(cv.counts[std::size_t(j)].is_zero());
}

TEST_CASE("long edges skip absent variables") {
    SopPolynomial p;
    p.modulus = 8;
    for (int i = 0; i < 3; ++i) p.new_var();
    p.toggle_quadratic(0, 2); // variable 1 never appears
    Mtbdd d = build_level_by_level(p, natural(p));
    CHECK(diagram_stats(d).per_level == std::vector<std::int64_t>{1, 0, 1});
    CountVector cv = count_solutions(d);
    CHECK(cv.counts[0] == BigUint(6));
    CHECK(cv.counts[4] == BigUint(2));
    Mtbdd via_apply = build_by_apply(p, natural(p).perm);
    CHECK(same_structure(d, via_apply));
    check_exhaustive_equal(p, d);
}

TEST_CASE("a one-edge cancels the linear coefficient and skips the level") {
    // f = 4 x0 x1 + 4 x1 (mod 8): after x0 = 1 the coefficient of x1 is
    // 4*1 + 4 = 0, so the one-child jumps straight to a terminal.
    SopPolynomial p;
    p.modulus = 8;
    p.new_var();
    p.new_var();
    p.toggle_quadratic(0, 1);
    p.add_linear(1, 4);
    Mtbdd d = build_level_by_level(p, natural(p));
    DiagramStats s = diagram_stats(d);
    CHECK(s.per_level == std::vector<std::int64_t>{1, 1});
    CountVector cv = count_solutions(d);
    CHECK(cv.counts[0] == BigUint(3)); // (0,0), (1,0), (1,1): 4+4 = 0 mod 8
    CHECK(cv.counts[4] == BigUint(1)); // (0,1)
    check_exhaustive_equal(p, d);
    CHECK(same_structure(d, build_by_apply(p, natural(p).perm)));
}

TEST_CASE("caption polynomial: bounds, cross-builder equality, counts") {
    SopPolynomial p = caption_polynomial();
    LinearOrdering ord = natural(p);
    Mtbdd level = build_level_by_level(p, ord);
    Mtbdd apply = build_by_apply(p, ord.perm);
    CHECK(same_structure(level, apply));
    check_reduced(level);
    check_exhaustive_equal(p, level);

    DiagramStats s = diagram_stats(level);
    for (int i = 0; i < p.n_vars; ++i)
        CHECK(double(s.per_level[std::size_t(i)]) <=
              std::ldexp(1.0, ord.profile[std::size_t(i)] + 3));
    CHECK(double(s.total_internal) <= 7.0 * std::ldexp(1.0, ord.width + 3));

    CountVector cv = count_solutions(level);
    CountVector brute = brute_force_counts(p);
    for (int j = 0; j < 8; ++j) CHECK(cv.counts[std::size_t(j)] == brute.counts[std::size_t(j)]);
}

TEST_CASE("single cubic monomial mod 2") {
    SopPolynomial p;
    p.modulus = 2;
    for (int i = 0; i < 3; ++i) p.new_var();
    p.toggle_cubic(0, 1, 2);
    Mtbdd d = build_by_apply(p, {0, 1, 2});
    DiagramStats s = diagram_stats(d);
    CHECK(s.total_internal == 3);
    CHECK(s.terminals == 2);
    std::vector<std::uint8_t> x{1, 1, 1};
    CHECK(d.evaluate(x) == 1);
    x = {1, 1, 0};
    CHECK(d.evaluate(x) == 0);
    check_reduced(d);
}

TEST_CASE("zero polynomial via apply is a single terminal") {
    SopPolynomial p;
    p.modulus = 2;
    p.new_var();
    Mtbdd d = build_by_apply(p, {0});
    CHECK(d.is_terminal(d.root));
    CHECK(d.terminal_label(d.root) == 0);
}

TEST_CASE("level builder rejects cubic terms") {
    SopPolynomial p;
    p.modulus = 2;
    for (int i = 0; i < 3; ++i) p.new_var();
    p.toggle_cubic(0, 1, 2);
    LinearOrdering ord;
    ord.perm = {0, 1, 2};
    CHECK_THROWS_AS(build_level_by_level(p, ord), DegreeTooHigh);
}

TEST_CASE("builders agree on random degree-2 polynomials in random orders") {
    SplitMix64 rng(0x5eed3001);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + int(rng.below(8));
        int r = std::array{2, 8, 24}[rng.below(3)];
        SopPolynomial p = random_poly(rng, n, r, false);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[std::size_t(i)] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[std::size_t(i)], perm[std::size_t(rng.below(std::uint64_t(i) + 1))]);
        LinearOrdering ord = ordering_width(variable_graph(p), perm);
        Mtbdd level = build_level_by_level(p, ord);
        Mtbdd apply = build_by_apply(p, ord.perm);
        CHECK(same_structure(level, apply));
        check_reduced(level);
    }
}

TEST_CASE("evaluate matches evaluate_sop exhaustively at n = 16") {
    SplitMix64 rng(0x5eed3005);
    for (int r : {2, 8}) {
        SopPolynomial p = random_poly(rng, 16, r, r == 2);
        Mtbdd d = build_any(p);
        check_exhaustive_equal(p, d);
    }
}

TEST_CASE("evaluate matches evaluate_sop, exhaustively up to n = 12") {
    SplitMix64 rng(0x5eed3002);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + int(rng.below(16));
        int r = std::array{2, 8, 24}[rng.below(3)];
        bool cubic = r == 2 && rng.bit();
        SopPolynomial p = random_poly(rng, n, r, cubic);
        Mtbdd d = build_any(p);
        if (n <= 12) {
            std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
            for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
                for (int i = 0; i < n; ++i) x[std::size_t(i)] = (v >> i) & 1;
                REQUIRE(d.evaluate(x) == evaluate_sop(p, x));
            }
        } else {
            std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
            for (int t = 0; t < 50; ++t) {
                for (int i = 0; i < n; ++i) x[std::size_t(i)] = std::uint8_t(rng.bit());
                CHECK(d.evaluate(x) == evaluate_sop(p, x));
            }
        }
    }
}

TEST_CASE("counting matches brute force and normalizes to 2^n") {
    SplitMix64 rng(0x5eed3003);
    for (int iter = 0; iter < 25; ++iter) {
        int n = 1 + int(rng.below(14));
        int r = std::array{2, 8, 24}[rng.below(3)];
        bool cubic = r == 2 && rng.bit();
        SopPolynomial p = random_poly(rng, n, r, cubic);
        Mtbdd d = build_any(p);
        CountVector cv = count_solutions(d);
        CountVector brute = brute_force_counts(p);
        BigUint total;
        for (int j = 0; j < r; ++j) {
            CHECK(cv.counts[std::size_t(j)] == brute.counts[std::size_t(j)]);
            total += cv.counts[std::size_t(j)];
        }
        CHECK(total == BigUint::power_of_two(n));
    }
}

TEST_CASE("amplitude examples from single-qubit pipelines") {
    auto task_for = [](const char* text) {
        Circuit c = parse_circuit(text);
        SopPolynomial sop = extract_sop(c);
        std::vector<std::uint8_t> zeros(static_cast<std::size_t>(c.n_qubits), 0);
        return substitute_externals(sop, zeros, zeros);
    };
    SUBCASE("<0|H|0> = 1/sqrt2") {
        AmplitudeTask t = task_for("gateset T\nqubits 1\nh 0");
        AmplitudeResult res = amplitude(t, natural(t.poly));
        CHECK(res.amplitude.real() == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
        CHECK(res.amplitude.imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(res.e == 1);
    }
    SUBCASE("<0|HH|0> = 1") {
        AmplitudeTask t = task_for("gateset T\nqubits 1\nh 0\nh 0");
        AmplitudeResult res = amplitude(t, natural(t.poly));
        CHECK(res.amplitude.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.counts.counts[0] == BigUint(2));
        CHECK(res.e == 2);
    }
    SUBCASE("<0|HTH|0> = (1+w8)/2") {
        AmplitudeTask t = task_for("gateset T\nqubits 1\nh 0\nt 0\nh 0");
        AmplitudeResult res = amplitude(t, natural(t.poly));
        CHECK(res.amplitude.real() == doctest::Approx(0.8535533905932737).epsilon(1e-12));
        CHECK(res.amplitude.imag() == doctest::Approx(0.35355339059327373).epsilon(1e-12));
    }
    SUBCASE("vanishing task gives exact zero") {
        Circuit c = parse_circuit("gateset T\nqubits 1\nt 0");
        SopPolynomial sop = extract_sop(c);
        std::vector<std::uint8_t> zero{0}, one{1};
        AmplitudeTask t = substitute_externals(sop, zero, one);
        REQUIRE(t.vanishes);
        AmplitudeResult res = amplitude(t, LinearOrdering{});
        CHECK(res.amplitude == std::complex<double>(0.0, 0.0));
    }
}

TEST_CASE("dump is deterministic and well-formed") {
    SopPolynomial p = caption_polynomial();
    Mtbdd d = build_level_by_level(p, natural(p));
    std::string dump1 = d.dump();
    std::string dump2 = build_by_apply(p, natural(p).perm).dump();
    CHECK(dump1 == dump2);
    CHECK(dump1.find("t0") != std::string::npos);
    // root is node 0 at level 1
    CHECK(dump1.rfind("0 1 ", 0) == 0);
}

TEST_CASE("node arena cap raises a capability error") {
    SplitMix64 rng(0x5eed3004);
    SopPolynomial p = random_poly(rng, 12, 8, false);
    CHECK_THROWS_AS(build_level_by_level(p, natural(p), 4), CapacityExceeded);
}

TEST_SUITE_END();
