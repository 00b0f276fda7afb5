#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "qtc/channel.hpp"

using namespace qtc;

TEST_CASE("sample_error endpoints") {
    Rng rng(1);
    DepolarizingChannel p0(0.0);
    REQUIRE(weight(sample_error(p0, 64, rng)) == 0);
    DepolarizingChannel p1(1.0);
    REQUIRE(weight(sample_error(p1, 64, rng)) == 64);
}

TEST_CASE("sample_error frequencies follow the symbol priors") {
    Rng rng(2);
    DepolarizingChannel ch(0.3);
    const size_t n = 100000;
    auto v = sample_error(ch, n, rng);
    size_t cnt[4] = {0, 0, 0, 0};
    for (size_t q = 0; q < n; ++q) cnt[static_cast<int>(v.symbol(q))]++;
    // each non-identity symbol 0.1 within 3 binomial sigma
    double sigma = std::sqrt(n * 0.1 * 0.9);
    for (int s = 1; s < 4; ++s) REQUIRE(std::abs(cnt[s] - 0.1 * n) <= 3 * sigma);
}

TEST_CASE("symbol priors and the Table-style marginals") {
    DepolarizingChannel ch(0.3);
    auto d = symbol_priors(ch);
    REQUIRE(d[PauliSymbol::I] == Catch::Approx(0.7));
    REQUIRE(d[PauliSymbol::X] == Catch::Approx(0.1));
    // marginal X-flip probability = P(X)+P(Y) = 2p/3; joint z&x = P(Y) = p/3
    double p_xflip = d[PauliSymbol::X] + d[PauliSymbol::Y];
    REQUIRE(p_xflip == Catch::Approx(2 * 0.3 / 3));
    REQUIRE(d[PauliSymbol::Y] == Catch::Approx(0.3 / 3));

    auto du = symbol_priors(DepolarizingChannel(0.75));
    for (int s = 0; s < 4; ++s) REQUIRE(du[s] == Catch::Approx(0.25));
    auto dz = symbol_priors(DepolarizingChannel(0.0));
    REQUIRE(dz[PauliSymbol::I] == 1.0);
}

TEST_CASE("binary entropy") {
    REQUIRE(binary_entropy(0.5) == Catch::Approx(1.0));
    REQUIRE(binary_entropy(0.0) == 0.0);
    REQUIRE(binary_entropy(1.0) == 0.0);
    REQUIRE_THROWS_AS(binary_entropy(1.5), std::invalid_argument);
}

TEST_CASE("capacity formulas") {
    REQUIRE(bsc_capacity(0.0) == Catch::Approx(1.0));
    REQUIRE(bsc_capacity(0.75) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(bsc_capacity(0.1) == Catch::Approx(1.0 - binary_entropy(1.0 / 15)));

    REQUIRE(fourary_classical_capacity(0.0) == Catch::Approx(1.0));
    REQUIRE(fourary_classical_capacity(0.75) == Catch::Approx(0.0).margin(1e-15));

    REQUIRE(hashing_bound(0.0) == Catch::Approx(1.0));
    // hashing = 2*C_4ary - 1 across the grid (the rate relation composed)
    for (int i = 0; i <= 100; ++i) {
        double p = i / 100.0;
        REQUIRE(std::abs(hashing_bound(p) - (2 * fourary_classical_capacity(p) - 1)) < 1e-12);
    }
}

TEST_CASE("hashing bound root and monotonicity on [0, 0.25]") {
    // bisection oracle for hashing_bound(p) = 1/9
    double lo = 0.0, hi = 0.25;
    REQUIRE(hashing_bound(lo) > 1.0 / 9);
    REQUIRE(hashing_bound(hi) < 1.0 / 9);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (hashing_bound(mid) > 1.0 / 9)
            lo = mid;
        else
            hi = mid;
    }
    double root = 0.5 * (lo + hi);
    REQUIRE(root > 0.0);
    REQUIRE(root < 0.25);
    REQUIRE(hashing_bound(root) == Catch::Approx(1.0 / 9).margin(1e-9));
    // strictly decreasing at grid step 0.01
    for (double p = 0.0; p < 0.25; p += 0.01)
        REQUIRE(hashing_bound(p + 0.01) < hashing_bound(p));
}

TEST_CASE("classical rate relation") {
    REQUIRE(classical_rate(1.0 / 9) == Catch::Approx(5.0 / 9));
    REQUIRE(classical_rate(0.0) == Catch::Approx(0.5));
    REQUIRE(classical_rate(1.0) == Catch::Approx(1.0));
}

TEST_CASE("dB gaps quoted for the optimized design") {
    double g1 = db_gap(0.35, kEaHashingPmax);
    REQUIRE(std::round(std::abs(g1) * 10) / 10 == Catch::Approx(0.3));
    double g2 = db_gap(0.2925, 0.3275);
    REQUIRE(std::round(std::abs(g2) * 10) / 10 == Catch::Approx(0.5));
    REQUIRE(db_gap(0.2, 0.2) == 0.0);
    REQUIRE_THROWS_AS(db_gap(0.0, 0.1), std::invalid_argument);
}
