#include <catch2/catch_amalgamated.hpp>

#include "qtc/csv.hpp"
#include "qtc/exit.hpp"
#include "qtc/registry.hpp"

using namespace qtc;

TEST_CASE("derived rng streams are stable and decorrelated") {
    Rng a = Rng::derive(7, 3), b = Rng::derive(7, 3), c = Rng::derive(7, 4);
    REQUIRE(a.next_u64() == b.next_u64());
    REQUIRE(a.next_u64() == b.next_u64());
    Rng a2 = Rng::derive(7, 3);
    REQUIRE(a2.next_u64() != c.next_u64());
}

TEST_CASE("exit curves are identical for any worker count") {
    auto reg = builtin_registry();
    ExitSettings s1;
    s1.grid = 5;
    s1.frames = 2;
    s1.frame_len = 90;
    s1.seed = 31;
    s1.workers = 1;
    ExitSettings s2 = s1;
    s2.workers = 4;
    auto a = inner_exit_curve(reg.get("opt-inner"), 0.3, s1);
    auto b = inner_exit_curve(reg.get("opt-inner"), 0.3, s2);
    for (size_t i = 0; i < a.points.size(); ++i) {
        REQUIRE(a.points[i].first == b.points[i].first);
        REQUIRE(a.points[i].second == b.points[i].second);
    }
}

TEST_CASE("formatted doubles round-trip exactly") {
    for (double v : {0.1, 1.0 / 3, 2.5e-17, 123456.789, 0.0, 1e300}) {
        std::string s = format_double(v);
        REQUIRE(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv writer/reader round trip") {
    std::ostringstream os;
    CsvWriter w(os);
    w.meta("seed", "7");
    w.header({"a", "b"});
    w.row({format_double(0.25), "42"});
    std::istringstream is(os.str());
    auto t = read_csv(is);
    REQUIRE(t.meta.size() == 1);
    REQUIRE(t.meta[0].first == "seed");
    REQUIRE(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 1);
    REQUIRE(std::strtod(t.rows[0][0].c_str(), nullptr) == 0.25);
}
