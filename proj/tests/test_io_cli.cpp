#include "argshift/cli.hpp"
#include "argshift/json_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <initializer_list>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace argshift;
using namespace argshift::testing;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
    json parsed; ///< engaged when out is JSON
};

CliResult run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv = {"argshift"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    CliResult res;
    res.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    res.out = out.str();
    res.err = err.str();
    if (!res.out.empty() && (res.out[0] == '{' || res.out[0] == '['))
        res.parsed = json::parse(res.out);
    return res;
}

} // namespace

TEST_CASE("algebras parse from json") {
    const std::string text = R"({
        "dim": 2,
        "brackets": [{"i": 1, "j": 2, "terms": {"2": "1"}}],
        "name": "affine-line"
    })";
    const auto alg = algebra_from_json(text);
    CHECK(alg.dim() == 2);
    CHECK(alg.name() == "affine-line");
    CHECK(alg.structure_constant(0, 1, 1) == 1);
    CHECK(alg.structure_constant(0, 1, 0) == 0);

    // reversed index order folds into the canonical slot with a sign flip
    const std::string reversed = R"({
        "dim": 2,
        "brackets": [{"i": 2, "j": 1, "terms": {"2": "-1"}}]
    })";
    const auto alg2 = algebra_from_json(reversed);
    CHECK(alg2.structure_constant(0, 1, 1) == 1);

    // invariants are parsed and validated
    const std::string with_inv = R"({
        "dim": 3,
        "brackets": [{"i": 1, "j": 2, "terms": {"3": "1"}}],
        "invariants": ["1 * x3"]
    })";
    CHECK(algebra_from_json(with_inv).invariants().size() == 1);
}

TEST_CASE("json round trip preserves catalog algebras") {
    for (const auto& name : {"b2", "sl2", "gl2", "heisenberg(2)", "b2+heisenberg(1)"}) {
        const auto alg = catalog(name);
        const auto back = algebra_from_json(algebra_to_json(alg));
        CHECK(back.dim() == alg.dim());
        CHECK(back.structure() == alg.structure());
        REQUIRE(back.invariants().size() == alg.invariants().size());
        for (std::size_t i = 0; i < alg.invariants().size(); ++i)
            CHECK(back.invariants()[i] == alg.invariants()[i]);
    }
}

TEST_CASE("malformed algebra input is rejected") {
    const auto bad = [](const std::string& text) {
        CHECK_THROWS_AS(algebra_from_json(text), parse_error);
    };
    bad("not json at all");
    bad(R"({"brackets": []})");                                            // missing dim
    bad(R"({"dim": 2, "brackets": [{"i": 0, "j": 2, "terms": {}}]})");     // 1-based
    bad(R"({"dim": 2, "brackets": [{"i": 1, "j": 3, "terms": {}}]})");     // out of range
    bad(R"({"dim": 2, "brackets": [{"i": 1, "j": 1, "terms": {}}]})");     // i == j
    bad(R"({"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": {"2": "x"}}]})");
    bad(R"({"dim": 2, "brackets": [], "invariants": ["1 * x9"]})");

    // structurally valid json that violates the jacobi identity
    const std::string broken = R"({
        "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "terms": {"1": "-2"}},
            {"i": 1, "j": 3, "terms": {"2": "1"}},
            {"i": 2, "j": 3, "terms": {"3": "-3"}}
        ]
    })";
    try {
        algebra_from_json(broken);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.kind() == validation_error::Kind::Jacobi);
        CHECK_FALSE(e.witness().empty());
    }
}

TEST_CASE("csv vectors") {
    const RatVec v = parse_csv_rationals("0, 1, -1/2");
    CHECK(v == RatVec{Rational(0), Rational(1), make_rational(-1, 2)});
    CHECK_THROWS_AS(parse_csv_rationals(""), parse_error);
    CHECK_THROWS_AS(parse_csv_rationals("1,,2"), parse_error);
    CHECK_THROWS_AS(parse_csv_rationals("1,abc"), parse_error);
}

TEST_CASE("cli: validate and index") {
    const auto ok = run({"validate", "--catalog", "b2"});
    CHECK(ok.code == 0);
    CHECK(ok.parsed["ok"] == true);
    CHECK(ok.parsed["dim"] == 2);
    CHECK(ok.parsed["schema"] == 1);

    const auto idx = run({"index", "--catalog", "abelian(7)"});
    CHECK(idx.code == 0);
    CHECK(idx.parsed["index"] == 7);
    CHECK(idx.parsed["t"] == 0);

    const auto missing = run({"validate", "--catalog", "nope(3)"});
    CHECK(missing.code == 2);
    CHECK(missing.parsed["error"]["kind"] == "parse");
    CHECK_FALSE(missing.err.empty());
}

TEST_CASE("cli: stdin input and file input") {
    const std::string text = algebra_to_json(catalog("sl2"));
    std::istringstream feed(text);
    auto* old = std::cin.rdbuf(feed.rdbuf());
    const auto res = run({"validate", "--input", "-"});
    std::cin.rdbuf(old);
    CHECK(res.code == 0);
    CHECK(res.parsed["dim"] == 3);

    // --catalog and --input are mutually exclusive
    const auto both = run({"validate", "--catalog", "b2", "--input", "-"});
    CHECK(both.code == 2);
}

TEST_CASE("cli: semiinvariant and shift output") {
    const auto semi = run({"semiinvariant", "--catalog", "b2+heisenberg(1)"});
    CHECK(semi.code == 0);
    CHECK(semi.parsed["p_g"] == "1 * x2 * x5");
    CHECK(semi.parsed["degree"] == 2);
    CHECK(semi.parsed["codim_one"] == true);

    const auto text = run({"semiinvariant", "--catalog", "b2+heisenberg(1)", "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("p_g = 1 * x2 * x5") != std::string::npos);

    const auto shift = run({"shift", "--catalog", "heisenberg(2)", "--a", "1,1,1,1,1"});
    CHECK(shift.code == 0);
    CHECK(shift.parsed["extended"].size() == 2);
    CHECK(shift.parsed["trdeg"] == 1);
    CHECK(shift.parsed["b_g"] == 3);
    CHECK(shift.parsed["complete"] == false);

    // an irregular shift point is an input error
    const auto badpt = run({"shift", "--catalog", "b2", "--a", "1,0"});
    CHECK(badpt.code == 2);
    CHECK(badpt.parsed["error"]["kind"] == "point");
}

TEST_CASE("cli: commute check") {
    // the extended family always commutes
    const auto ok = run({"commute-check", "--catalog", "b2+heisenberg(1)", "--a", "0,1,1,1,1"});
    CHECK(ok.code == 0);
    CHECK(ok.parsed["ok"] == true);
    CHECK(ok.parsed["set"] == "extended");

    // user-supplied polynomials that fail produce a witness and exit 1
    const auto bad = run({"commute-check", "--catalog", "b2", "--a", "0,1",
                          "--set", "1 * x1", "--set", "1 * x2"});
    CHECK(bad.code == 1);
    CHECK(bad.parsed["ok"] == false);
    CHECK(bad.parsed["witness"]["first"] == 0);
    CHECK(bad.parsed["witness"]["second"] == 1);
    CHECK(bad.parsed["witness"]["frozen"] == false);
    CHECK(bad.parsed["witness"]["bracket"] == "1 * x2");
}

TEST_CASE("cli: completeness and report") {
    const auto comp = run({"completeness", "--catalog", "b2", "--a", "0,1", "--samples", "6"});
    CHECK(comp.code == 0);
    CHECK(comp.parsed["criterion_complete"] == true);
    CHECK(comp.parsed["direct_complete"] == true);
    CHECK(comp.parsed["agreement"] == true);

    const auto rep = run({"report", "--catalog", "b2", "--a", "0,1"});
    CHECK(rep.code == 0);
    CHECK(rep.parsed["complete"] == true);
    CHECK(rep.parsed["verdict"]["trdeg"] == 1);
    CHECK(rep.parsed["verdict"]["b_g"] == 1);
    CHECK(rep.parsed["p_g"] == "1 * x2");

    // byte-identical reruns: every stage is seeded
    const auto rerun = run({"report", "--catalog", "b2", "--a", "0,1"});
    CHECK(rerun.out == rep.out);

    const auto rerun2 = run({"completeness", "--catalog", "b2+heisenberg(1)",
                             "--a", "0,1,1,1,1", "--samples", "5", "--seed", "9"});
    const auto rerun3 = run({"completeness", "--catalog", "b2+heisenberg(1)",
                             "--a", "0,1,1,1,1", "--samples", "5", "--seed", "9"});
    CHECK(rerun2.out == rerun3.out);
    CHECK(rerun2.code == 0);
    CHECK(rerun2.parsed["criterion_complete"] == false);
}

TEST_CASE("cli: pencil") {
    const auto res = run({"pencil", "--catalog", "b2+heisenberg(1)",
                          "--x", "1,2,3,1,5", "--a", "0,1,1,1,1"});
    CHECK(res.code == 0);
    CHECK(res.parsed["r"] == 1);
    CHECK(res.parsed["dim_core"] == 1);
    CHECK(res.parsed["dim_core_perp"] == 5);
    CHECK(res.parsed["diagonalizable"] == true);
    REQUIRE(res.parsed["exceptional"].size() == 2);
    CHECK(res.parsed["exceptional"][0]["lambda"]["value"] == "2");
    CHECK(res.parsed["exceptional"][1]["lambda"]["value"] == "5");
}

TEST_CASE("cli: usage errors") {
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("validate") != std::string::npos);

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"validate", "--catalog", "b2", "--bogus"}).code == 2);
    CHECK(run({"shift", "--catalog", "b2", "--a", "1"}).code == 2); // wrong length
    CHECK(run({"shift", "--catalog", "b2"}).code == 2);             // missing --a
}
