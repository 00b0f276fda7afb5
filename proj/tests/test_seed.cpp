#include <catch2/catch_amalgamated.hpp>

#include "qtc/registry.hpp"
#include "qtc/seed.hpp"

#include "test_helpers.hpp"

using namespace qtc;

// Canonical row masks of the decoded optimized pair, frozen to pin the
// published-pair wire map (bit j of a value = canonical column j).
static const std::vector<uint64_t> kInnerCanonical = {2246, 637, 1328, 11,   1521, 610,
                                                      4031, 899, 2090, 2436, 670,  3265};
static const std::vector<uint64_t> kOuterCanonical = {2598, 1206, 2613, 3769, 267, 59,
                                                      642,  1092, 3321, 2775, 271, 742};

TEST_CASE("published pair decodes, validates, and is pinned to the frozen matrices") {
    auto inner = decode_seed_decimals(opt_inner_decimals(), 3, 1, 3,
                                      {AncillaKind::Ebit, AncillaKind::Ebit});
    REQUIRE(inner.convention() == SeedConvention::PublishedPair);
    REQUIRE(is_symplectic(inner.matrix()));
    for (size_t i = 0; i < 12; ++i) REQUIRE(inner.matrix().row(i) == kInnerCanonical[i]);

    auto outer = decode_seed_decimals(opt_outer_decimals(), 3, 1, 3,
                                      {AncillaKind::Ancilla, AncillaKind::Ancilla});
    REQUIRE(outer.convention() == SeedConvention::PublishedPair);
    REQUIRE(is_symplectic(outer.matrix()));
    for (size_t i = 0; i < 12; ++i) REQUIRE(outer.matrix().row(i) == kOuterCanonical[i]);
}

TEST_CASE("published pair re-encodes to the original decimals") {
    auto inner = decode_seed_decimals(opt_inner_decimals(), 3, 1, 3,
                                      {AncillaKind::Ebit, AncillaKind::Ebit});
    REQUIRE(encode_seed_decimals(inner) == opt_inner_decimals());
    auto outer = decode_seed_decimals(opt_outer_decimals(), 3, 1, 3,
                                      {AncillaKind::Ancilla, AncillaKind::Ancilla});
    REQUIRE(encode_seed_decimals(outer) == opt_outer_decimals());
}

TEST_CASE("msb-first direct decode round-trips on generated codes") {
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        auto seed = qtc_test::random_toy_seed(2, 1, 2, {AncillaKind::Ancilla}, rng);
        auto dec = encode_seed_decimals(seed);
        auto back = decode_seed_decimals(dec, 2, 1, 2, {AncillaKind::Ancilla});
        REQUIRE(back.matrix() == seed.matrix());
        REQUIRE(back.convention() == SeedConvention::MsbFirst);
    }
}

TEST_CASE("decode rejects malformed inputs") {
    std::vector<uint64_t> eleven(opt_inner_decimals().begin(), opt_inner_decimals().end() - 1);
    REQUIRE_THROWS_AS(decode_seed_decimals(eleven, 3, 1, 3, {AncillaKind::Ebit, AncillaKind::Ebit}),
                      std::invalid_argument);
    auto big = opt_inner_decimals();
    big[0] = 4096;  // out of range for 12 columns
    REQUIRE_THROWS_AS(decode_seed_decimals(big, 3, 1, 3, {AncillaKind::Ebit, AncillaKind::Ebit}),
                      std::invalid_argument);
    // garbage rows: no convention validates, failing row pair reported
    std::vector<uint64_t> junk(12, 7);
    try {
        decode_seed_decimals(junk, 3, 1, 3, {AncillaKind::Ebit, AncillaKind::Ebit});
        FAIL("expected a validation failure");
    } catch (const std::invalid_argument& e) {
        REQUIRE(std::string(e.what()).find("row pair") != std::string::npos);
    }
}

TEST_CASE("u_p and u_m blocks reassemble the seed matrix") {
    auto seed = decode_seed_decimals(opt_inner_decimals(), 3, 1, 3,
                                     {AncillaKind::Ebit, AncillaKind::Ebit});
    auto blocks = split_seed(seed);
    auto pcols = seed.physical_columns();
    auto mcols = seed.memory_columns();
    for (size_t i = 0; i < 12; ++i) {
        uint64_t rebuilt = 0;
        for (size_t jj = 0; jj < pcols.size(); ++jj)
            rebuilt |= (((blocks.u_p[i] >> jj) & 1) << pcols[jj]);
        for (size_t jj = 0; jj < mcols.size(); ++jj)
            rebuilt |= (((blocks.u_m[i] >> jj) & 1) << mcols[jj]);
        REQUIRE(rebuilt == seed.matrix().row(i));
    }
}

TEST_CASE("seed transform invariants are enforced") {
    // identity is symplectic but its (L,S) tracking block is singular for m >= 1
    BinarySymplecticMatrix id(3);
    REQUIRE_THROWS_AS(SeedTransform(2, 1, 1, id, {AncillaKind::Ancilla}, SeedConvention::MsbFirst),
                      std::invalid_argument);
    // k < n and m >= 1
    BinarySymplecticMatrix id4(4);
    REQUIRE_THROWS_AS(
        SeedTransform(2, 2, 2, id4, {}, SeedConvention::MsbFirst),
        std::invalid_argument);
}
