#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>

#include "qtc/registry.hpp"

using namespace qtc;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("qtc_test_registry_") + std::to_string(::getpid()) + ".txt";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("built-in registry entries") {
    auto reg = builtin_registry();
    const auto& inner = reg.get("opt-inner");
    REQUIRE(inner.n() == 3);
    REQUIRE(inner.k() == 1);
    REQUIRE(inner.m() == 3);
    REQUIRE(inner.all_ebit());
    const auto& outer = reg.get("opt-outer");
    REQUIRE_FALSE(outer.all_ebit());
    REQUIRE(is_symplectic(outer.matrix()));
    REQUIRE_THROWS_AS(reg.get("nonexistent"), std::invalid_argument);
}

TEST_CASE("registry file parsing, override precedence and errors") {
    TempFile good(
        "# a toy registry\n"
        "\n"
        "opt-outer 3 1 3 a,a conv=published 1048 3872 3485 2054 983 3164 3145 1824 987 3282 2505 "
        "1984  # same code, overrides the builtin\n");
    auto reg = load_registry(good.path);
    REQUIRE(reg.codes.count("opt-outer") == 1);
    REQUIRE(reg.warnings.size() == 1);  // override warning
    REQUIRE(reg.warnings[0].find("opt-outer") != std::string::npos);

    TempFile short_row("bad 3 1 3 a,a conv=published 1 2 3 4 5 6 7 8 9 10 11\n");
    try {
        load_registry(short_row.path);
        FAIL("expected parse error");
    } catch (const std::invalid_argument& e) {
        REQUIRE(std::string(e.what()).find(":1:") != std::string::npos);  // line number
    }

    TempFile bad_kind("bad 3 1 3 a,q conv=published 1 2 3\n");
    REQUIRE_THROWS_AS(load_registry(bad_kind.path), std::invalid_argument);
}

TEST_CASE("format and reparse round-trips a registry entry") {
    auto reg = builtin_registry();
    const auto& e = reg.codes.at("opt-inner");
    std::string line = format_registry_entry(e);
    Registry reg2;
    parse_registry_line(reg2, line, 1, "mem");
    const auto& back = reg2.codes.at("opt-inner");
    REQUIRE(back.decimals == e.decimals);
    REQUIRE(back.seed->matrix() == e.seed->matrix());
}
