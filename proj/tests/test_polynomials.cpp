#include "argshift/multipoly.hpp"
#include "argshift/rng.hpp"
#include "argshift/unipoly.hpp"

#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <complex>

using namespace argshift;
using namespace argshift::testing;

TEST_CASE("rational construction canonicalizes") {
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(make_rational(-1, -2) == make_rational(1, 2));
    CHECK(make_rational(3, -6) == make_rational(-1, 2));
    CHECK(to_string(make_rational(-4, 8)) == "-1/2");
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
    CHECK(parse_rational("7/21") == make_rational(1, 3));
    CHECK_THROWS_AS(parse_rational("x"), parse_error);
    CHECK_THROWS_AS(parse_rational(""), parse_error);
}

TEST_CASE("rng streams are deterministic and fork independently") {
    Rng a(42), b(42);
    for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
    Rng c(42);
    auto f1 = c.fork(1);
    auto f2 = c.fork(2);
    CHECK(f1.next() != f2.next());
    for (int i = 0; i < 32; ++i) {
        Rng r(7);
        const Rational x = r.rat(5);
        CHECK(x >= Rational(-5));
        CHECK(x <= Rational(5));
        CHECK(r.nonzero_rat(3) != 0);
    }
}

TEST_CASE("univariate ring identities on random polynomials") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const UniPoly p = random_upoly(rng, 1 + static_cast<int>(rng.below(4)), 8);
        const UniPoly q = random_upoly(rng, 1 + static_cast<int>(rng.below(4)), 8);
        const UniPoly r = random_upoly(rng, 1 + static_cast<int>(rng.below(3)), 8);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p * q) * r == p * (q * r));
        CHECK((p - p).is_zero());
        const Rational at = rng.rat(6);
        CHECK((p * q).evaluate(at) == p.evaluate(at) * q.evaluate(at));
    }
}

TEST_CASE("univariate division and gcd") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const UniPoly p = random_upoly(rng, 2 + static_cast<int>(rng.below(4)), 6);
        const UniPoly q = random_upoly(rng, 1 + static_cast<int>(rng.below(2)), 6);
        const auto [quo, rem] = p.divmod(q);
        CHECK(p == q * quo + rem);
        CHECK((rem.is_zero() || rem.degree() < q.degree()));
        CHECK(p.divide_exact(q).has_value() == (p.divmod(q).second.is_zero()));
    }

    // gcd((t-1)(t-2), (t-1)(t-3)) = t - 1
    const UniPoly t1 = upoly({-1, 1});
    const UniPoly t2 = upoly({-2, 1});
    const UniPoly t3 = upoly({-3, 1});
    CHECK(gcd(t1 * t2, t1 * t3) == t1);
    CHECK(gcd(t1, UniPoly()) == t1);
    CHECK(gcd(UniPoly(), UniPoly()).is_zero());

    // gcd(p h, q h) = gcd(p, q) h up to normalization, for coprime p, q
    Rng rng2(13);
    for (int trial = 0; trial < 10; ++trial) {
        const UniPoly h = random_upoly(rng2, 2, 5);
        CHECK(gcd(t1 * h, t2 * h) == h.monic());
    }
}

TEST_CASE("squarefree decomposition and parts") {
    const UniPoly t1 = upoly({-1, 1});
    const UniPoly t2 = upoly({2, 1});
    const UniPoly p = t1 * t1 * t2;
    CHECK(squarefree_part(p) == (t1 * t2).monic());
    CHECK(squarefree_part(t1 * t2 * Rational(7)) == (t1 * t2).monic());
    const UniPoly q = t1 * t1 * t1; // cube
    CHECK(squarefree_part(q) == t1);
}

TEST_CASE("distinct roots: exact rational, numeric complex, multiplicity") {
    // (2t - 1)(t - 3)
    const UniPoly p = upoly({-1, 2}) * upoly({-3, 1});
    auto roots = distinct_roots(p);
    REQUIRE(roots.size() == 2);
    bool found_half = false, found_three = false;
    for (const auto& r : roots) {
        REQUIRE(r.is_rational);
        if (r.value == make_rational(1, 2)) found_half = true;
        if (r.value == Rational(3)) found_three = true;
        CHECK(r.multiplicity == 1);
    }
    CHECK(found_half);
    CHECK(found_three);

    // t^2 + 1: conjugate pair, residual bounded
    auto ipair = distinct_roots(upoly({1, 0, 1}));
    REQUIRE(ipair.size() == 2);
    for (const auto& r : ipair) {
        CHECK_FALSE(r.is_rational);
        CHECK(std::abs(std::abs(r.numeric.imag()) - 1.0) < 1e-9);
        CHECK(r.residual < 1e-9);
    }

    // (t - 1)^2: one root, multiplicity two
    auto dbl = distinct_roots(upoly({-1, 1}) * upoly({-1, 1}));
    REQUIRE(dbl.size() == 1);
    CHECK(dbl[0].multiplicity == 2);
    CHECK(dbl[0].value == Rational(1));

    CHECK_THROWS(distinct_roots(UniPoly()));
}

TEST_CASE("multivariate parse and to_text round-trip") {
    Rng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const MultiPoly f = random_mpoly(rng, 3, 3, 5, 9);
        CHECK(MultiPoly::parse(f.to_text(), 3) == f);
    }
    const MultiPoly g = mp("1 * x1^2 * x2 + -3/2 * x3", 3);
    CHECK(g.degree() == 3);
    CHECK(g.degree_in(0) == 2);
    CHECK_THROWS_AS(MultiPoly::parse("1 * x9", 3), parse_error);
}

TEST_CASE("multivariate ring and evaluation identities") {
    Rng rng(22);
    for (int trial = 0; trial < 15; ++trial) {
        const MultiPoly f = random_mpoly(rng, 3, 3, 4, 7);
        const MultiPoly g = random_mpoly(rng, 3, 3, 4, 7);
        const MultiPoly h = random_mpoly(rng, 3, 2, 3, 7);
        CHECK(f * g == g * f);
        CHECK(f * (g + h) == f * g + f * h);
        const RatVec x = rng.rat_vector(3, 6);
        CHECK((f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x));
        CHECK((f + g).evaluate(x) == f.evaluate(x) + g.evaluate(x));

        // product rule for each variable
        for (std::size_t v = 0; v < 3; ++v) {
            const MultiPoly lhs = (f * g).partial_derivative(v);
            const MultiPoly rhs = f.partial_derivative(v) * g + f * g.partial_derivative(v);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("line restriction agrees with pointwise evaluation") {
    Rng rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const MultiPoly f = random_mpoly(rng, 4, 3, 5, 6);
        const RatVec base = rng.rat_vector(4, 6);
        const RatVec dir = rng.rat_vector(4, 6);
        const UniPoly u = f.restrict_to_line(base, dir);
        for (int k = 0; k < 5; ++k) {
            const Rational t = rng.rat(9);
            RatVec pt(4);
            for (std::size_t i = 0; i < 4; ++i) pt[i] = base[i] + t * dir[i];
            CHECK(u.evaluate(t) == f.evaluate(pt));
        }
    }
}

TEST_CASE("shift coefficients reconstruct f(a + t x)") {
    Rng rng(24);
    for (int trial = 0; trial < 12; ++trial) {
        const MultiPoly f = random_mpoly(rng, 3, 3, 5, 5);
        const RatVec a = rng.rat_vector(3, 5);
        const auto coeffs = shift_coefficients(f, a);
        REQUIRE(!coeffs.empty());
        CHECK(coeffs[0].is_constant());
        CHECK(coeffs[0].constant_term() == f.evaluate(a));

        const Rational t = rng.rat(7);
        const RatVec x = rng.rat_vector(3, 5);
        RatVec shifted(3);
        for (std::size_t i = 0; i < 3; ++i) shifted[i] = a[i] + t * x[i];
        Rational sum(0);
        Rational tp(1);
        for (const auto& c : coeffs) {
            sum += c.evaluate(x) * tp;
            tp *= t;
        }
        CHECK(sum == f.evaluate(shifted));
    }
}

TEST_CASE("multivariate gcd, exact division, squarefree decomposition") {
    const MultiPoly x1 = MultiPoly::variable(3, 0);
    const MultiPoly x2 = MultiPoly::variable(3, 1);
    const MultiPoly x3 = MultiPoly::variable(3, 2);

    CHECK(gcd_multivariate(x1 * x2, x1 * x3) == x1);
    CHECK(gcd_multivariate(x1 * x1 * x2, x1 * x2 * x2) == x1 * x2);

    const auto q = divide_exact(x1 * x2 + x1 * x3, x1);
    REQUIRE(q.has_value());
    CHECK(*q == x2 + x3);
    CHECK_FALSE(divide_exact(x1 * x2 + x3, x1).has_value());

    const MultiPoly p = x1.pow(2) * x2;
    const auto dec = squarefree_decomposition(p);
    MultiPoly rebuilt = MultiPoly::constant(3, Rational(1));
    for (const auto& [mult, factor] : dec) {
        CHECK(mult >= 1);
        rebuilt = rebuilt * factor.pow(static_cast<unsigned>(mult));
    }
    CHECK(normalize_primitive(rebuilt) == normalize_primitive(p));
    CHECK(squarefree_part(p) == normalize_primitive(x1 * x2));

    // gradient consistency with partial derivatives
    Rng rng(25);
    const MultiPoly f = random_mpoly(rng, 3, 3, 5, 6);
    const RatVec pt = rng.rat_vector(3, 6);
    const auto grad = f.gradient(pt);
    for (std::size_t v = 0; v < 3; ++v)
        CHECK(grad[v] == f.partial_derivative(v).evaluate(pt));
}

TEST_CASE("complex evaluation tracks rational evaluation") {
    Rng rng(26);
    const MultiPoly f = random_mpoly(rng, 3, 3, 5, 6);
    const RatVec pt = rng.rat_vector(3, 6);
    std::vector<std::complex<double>> zpt;
    for (const auto& c : pt) zpt.emplace_back(to_double(c), 0.0);
    CHECK(std::abs(f.evaluate(zpt) - to_double(f.evaluate(pt))) < 1e-9);
}
