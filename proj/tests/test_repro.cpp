#include <doctest.h>

#include <set>

#include "fusionq/repro.hpp"

using namespace fusionq;

TEST_CASE("built-in manifest covers every criterion once with unique names") {
    std::set<std::string> names;
    std::set<int> criteria;
    for (const auto& e : repro::manifest()) {
        CHECK(names.insert(e.name).second);
        if (e.criterion > 0) CHECK(criteria.insert(e.criterion).second);
    }
    CHECK(criteria == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(repro::find(repro::manifest(), "sl2-mat2").kind == "matrix-algebra");
    CHECK_THROWS_AS(repro::find(repro::manifest(), "missing"), std::out_of_range);
}

TEST_CASE("malformed manifests are rejected") {
    CHECK_THROWS_AS(repro::parse_manifest("{"), std::invalid_argument);
    CHECK_THROWS_AS(repro::parse_manifest(R"({"experiments": [{"name": "x"}]})"), std::invalid_argument);
    CHECK_THROWS_AS(repro::parse_manifest(R"({"experiments": [{"name": "x", "title": "t", "kind": "nope"}]})"),
                    std::invalid_argument);
}

TEST_CASE("a failing computation is reported, not thrown") {
    const auto es = repro::parse_manifest(
        R"({"experiments": [{"name": "x", "title": "t", "kind": "kostant",
            "params": {"cases": [{"algebra": "A1", "lambda0": "1/2"}]}}]})");
    const auto out = repro::run(es.front());
    CHECK(!out.pass());
    CHECK(!out.error.empty());
}

TEST_CASE("weights parse exactly and check their rank") {
    CHECK(parse_weight("0,1/3", 2).coords[1] == Rational(1, 3));
    CHECK_THROWS_AS(parse_weight("1", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight("1,x", 2), std::invalid_argument);
}
