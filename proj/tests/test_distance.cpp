#include <catch2/catch_amalgamated.hpp>

#include "qtc/qcc.hpp"
#include "qtc/registry.hpp"

#include "test_helpers.hpp"

using namespace qtc;
using qtc_test::passthrough_seed;

TEST_CASE("pass-through code has d_min = 1") {
    auto seed = passthrough_seed(3, 1, 2, {AncillaKind::Ancilla, AncillaKind::Ancilla});
    CodeSpec spec(seed, CodeRole::Outer, 1);
    auto ds = distance_spectrum(spec, 3, 20);
    REQUIRE(!ds.counts.empty());
    REQUIRE(ds.counts.begin()->first == 1);
}

TEST_CASE("optimized outer code: d_min 3, leading count 2") {
    auto seed = decode_seed_decimals(opt_outer_decimals(), 3, 1, 3,
                                     {AncillaKind::Ancilla, AncillaKind::Ancilla});
    CodeSpec spec(seed, CodeRole::Outer, 1);
    auto ds = distance_spectrum(spec, 5, 60);
    REQUIRE(ds.counts.begin()->first == 3);
    REQUIRE(ds.counts.at(3) == 2);
    // Counts beyond the minimum depend on the enumeration convention; these pin
    // the implementation's own convention (simple degenerate error events).
    REQUIRE(ds.counts.at(4) == 7);
    REQUIRE(ds.counts.at(5) == 26);
    REQUIRE_FALSE(ds.truncated);
}

TEST_CASE("empty table when max_weight is below d_min") {
    auto seed = decode_seed_decimals(opt_outer_decimals(), 3, 1, 3,
                                     {AncillaKind::Ancilla, AncillaKind::Ancilla});
    CodeSpec spec(seed, CodeRole::Outer, 1);
    auto ds = distance_spectrum(spec, 2, 60);
    REQUIRE(ds.counts.empty());
}

TEST_CASE("truncation is flagged when completable events outlive the step cap") {
    auto seed = decode_seed_decimals(opt_outer_decimals(), 3, 1, 3,
                                     {AncillaKind::Ancilla, AncillaKind::Ancilla});
    CodeSpec spec(seed, CodeRole::Outer, 1);
    // cutting the enumeration after two steps leaves live prefixes that could
    // still close within the weight budget
    auto ds = distance_spectrum(spec, 6, 2);
    REQUIRE(ds.truncated);
    // weight 6 admits zero-weight stabilizer cycling, so its count never
    // converges and the notice must persist at any step cap
    auto w6 = distance_spectrum(spec, 6, 240);
    REQUIRE(w6.truncated);
    // the weight-5 budget converges under a generous cap
    auto w5 = distance_spectrum(spec, 5, 120);
    REQUIRE_FALSE(w5.truncated);
}
