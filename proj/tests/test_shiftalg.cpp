#include "argshift/shiftalg.hpp"

#include <doctest.h>

#include <set>

#include "argshift/poisson.hpp"
#include "argshift/rng.hpp"
#include "test_support.hpp"

using namespace argshift;
using namespace argshift::testing;

TEST_CASE("shift points must be regular") {
    const auto b2 = catalog("b2");
    const auto cert = index_certificate(b2);
    CHECK_NOTHROW(make_shift_point(b2, rvec({0, 1}), cert));
    CHECK_NOTHROW(make_shift_point(b2, rvec({3, -2}), cert));
    // a = (1, 0) lies on x2 = 0 where the rank of A_a drops
    try {
        make_shift_point(b2, rvec({1, 0}), cert);
        FAIL("expected rejection");
    } catch (const validation_error& e) {
        CHECK(e.kind() == validation_error::Kind::Point);
    }
    // wrong dimension
    CHECK_THROWS_AS(make_shift_point(b2, rvec({1, 0, 0}), cert), validation_error);
}

TEST_CASE("shift expansion coefficients") {
    const auto alg = catalog("b2+heisenberg(1)");
    const auto cert = index_certificate(alg);
    const ShiftPoint a = make_shift_point(alg, rvec({0, 1, 1, 1, 1}), cert);

    const MultiPoly f = mp("1 * x2 * x5", 5);
    const auto coeffs = shift_expand(f, a);
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[0] == mp("1", 5));
    CHECK(coeffs[1] == mp("1 * x2 + 1 * x5", 5));
    CHECK(coeffs[2] == mp("1 * x2 * x5", 5));

    // reconstruction: f(a + t x) = sum_j coeffs[j](x) t^j at sample points
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const RatVec x = rng.rat_vector(5, 6);
        const Rational t = rng.rat(6);
        RatVec shifted(5);
        for (std::size_t i = 0; i < 5; ++i) shifted[i] = a.a[i] + t * x[i];
        Rational expect = f.evaluate(shifted);
        Rational got(0);
        Rational tp(1);
        for (const auto& c : coeffs) {
            got += c.evaluate(x) * tp;
            tp *= t;
        }
        CHECK(got == expect);
    }
}

TEST_CASE("generator families and provenance") {
    const auto alg = catalog("heisenberg(2)");
    const auto cert = index_certificate(alg);
    Rng rng(72);
    const ShiftPoint a = random_shift_point(alg, cert, rng);

    // classical: the only invariant x5 is linear, so its shifts contribute
    // just x5 itself after dropping constants
    const auto classical = mf_generators(alg, a);
    REQUIRE(classical.generators.size() == 1);
    CHECK(classical.generators[0] == mp("1 * x5", 5));
    CHECK(classical.provenance[0].source == Provenance::Source::Invariant);
    CHECK(classical.provenance[0].source_index == 0);
    CHECK(classical.provenance[0].lambda_power == 1);

    // extended: p_g = x5^2 adds its shifts; after deduplication the family
    // is {x5, x5^2} (the cross term of the square is a scalar multiple of x5)
    const auto extended = extended_generators(alg, a);
    REQUIRE(extended.generators.size() == 2);
    CHECK(extended.generators[0] == mp("1 * x5", 5));
    CHECK(extended.generators[1] == mp("1 * x5^2", 5));
    CHECK(extended.kind == GeneratorKind::Extended);
    CHECK(extended.provenance[1].source == Provenance::Source::Semiinvariant);

    // an algebra with constant p_g gains nothing: extended == classical size
    const auto sl2 = catalog("sl2");
    const auto scert = index_certificate(sl2);
    const ShiftPoint sa = random_shift_point(sl2, scert, rng);
    CHECK(extended_generators(sl2, sa).generators.size() ==
          mf_generators(sl2, sa).generators.size());
}

TEST_CASE("extended families commute under both brackets") {
    Rng rng(73);
    for (const auto& name : {"b2", "heisenberg(1)", "heisenberg(2)", "sl2", "so3",
                             "gl2", "b2+abelian(1)", "b2+heisenberg(1)", "b2+b2"}) {
        const auto alg = catalog(name);
        const auto cert = index_certificate(alg);
        const ShiftPoint a = random_shift_point(alg, cert, rng);
        const auto gens = extended_generators(alg, a);
        CHECK_FALSE(check_pairwise_commute(alg, a.a, gens.generators).has_value());
    }
}

TEST_CASE("transcendence degree and the direct completeness test") {
    Rng rng(74);
    struct Expected {
        const char* name;
        std::size_t trdeg;
        std::size_t b_g;
    };
    const Expected table[] = {
        {"b2", 1, 1},
        {"heisenberg(1)", 1, 2},
        {"b2+heisenberg(1)", 2, 3},
        {"gl2", 3, 3},
        {"sl2", 2, 2},
        {"so3", 2, 2},
        {"b2+b2", 2, 2},
        {"heisenberg(2)", 1, 3},
        {"b2+abelian(1)", 2, 2},
    };
    for (const auto& row : table) {
        const auto alg = catalog(row.name);
        const auto cert = index_certificate(alg);
        const ShiftPoint a = random_shift_point(alg, cert, rng);
        const auto gens = extended_generators(alg, a);
        const auto direct = completeness_direct(alg, gens, cert, 12, 7);
        CHECK(direct.trdeg == row.trdeg);
        CHECK(direct.b_g == row.b_g);
        CHECK(direct.complete == (row.trdeg == row.b_g));
        CHECK(direct.b_g == (alg.dim() + cert.index) / 2);
    }
}

TEST_CASE("trdeg estimates are stable across seeds") {
    const auto alg = catalog("b2+heisenberg(1)");
    const auto cert = index_certificate(alg);
    const ShiftPoint a = make_shift_point(alg, rvec({0, 1, 1, 1, 1}), cert);
    const auto gens = extended_generators(alg, a);
    std::set<std::size_t> seen;
    for (std::uint64_t seed : {1ull, 17ull, 400123ull})
        seen.insert(trdeg_estimate(gens, 10, seed).trdeg);
    CHECK(seen.size() == 1);
    CHECK(*seen.begin() == 2);
}

TEST_CASE("classical generators of sl2 are the casimir coefficients") {
    const auto sl2 = catalog("sl2");
    const auto cert = index_certificate(sl2);
    // basis (e, h, f): casimir = x1 x3 + x2^2 / 4 up to scale
    const ShiftPoint a = make_shift_point(sl2, rvec({1, 1, 1}), cert);
    const auto gens = mf_generators(sl2, a);
    REQUIRE(gens.generators.size() == 2);
    // lambda_power 1 is linear, lambda_power 2 recovers the casimir itself
    CHECK(gens.provenance[0].lambda_power == 1);
    CHECK(gens.provenance[1].lambda_power == 2);
    CHECK(gens.generators[1] == sl2.invariants()[0]);
    const auto direct = completeness_direct(sl2, gens, cert, 10, 3);
    CHECK(direct.trdeg == 2);
    CHECK(direct.complete);
}
