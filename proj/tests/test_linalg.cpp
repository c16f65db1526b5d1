#include "argshift/linalg.hpp"
#include "argshift/rng.hpp"

#include <doctest.h>

#include "test_support.hpp"

using namespace argshift;
using namespace argshift::testing;

namespace {

RatMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long height) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.rat(height);
    return m;
}

Rational det_by_cofactor(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    if (n == 1) return m.at(0, 0);
    Rational sum(0);
    for (std::size_t j = 0; j < n; ++j) {
        RatMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        const Rational term = m.at(0, j) * det_by_cofactor(minor);
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

} // namespace

TEST_CASE("determinant matches cofactor expansion") {
    Rng rng(31);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 8; ++trial) {
            const RatMatrix m = random_matrix(rng, n, n, 6);
            CHECK(det(m) == det_by_cofactor(m));
        }
    CHECK(det(RatMatrix(0, 0)) == Rational(1));
    CHECK(det(RatMatrix::identity(5)) == Rational(1));
}

TEST_CASE("rank, kernel and rank-nullity") {
    Rng rng(32);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t rows = 2 + rng.below(4);
        const std::size_t cols = 2 + rng.below(4);
        const RatMatrix m = random_matrix(rng, rows, cols, 5);
        const auto kernel = kernel_basis(m);
        CHECK(rank(m) + kernel.size() == cols);
        for (const auto& v : kernel) {
            const RatVec image = m.apply(v);
            for (const auto& c : image) CHECK(c == 0);
        }
    }
    // forced rank deficiency: duplicate rows
    RatMatrix d(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        d.at(0, j) = Rational(static_cast<long>(j) + 1);
        d.at(1, j) = Rational(static_cast<long>(j) + 1);
        d.at(2, j) = Rational(2 * (static_cast<long>(j) + 1));
    }
    CHECK(rank(d) == 1);
    CHECK(kernel_basis(d).size() == 2);
}

TEST_CASE("rref is idempotent and exposes pivots") {
    Rng rng(33);
    const RatMatrix m = random_matrix(rng, 4, 6, 5);
    std::vector<std::size_t> pivots;
    const RatMatrix r = rref(m, &pivots);
    CHECK(rref(r) == r);
    CHECK(pivots.size() == rank(m));
    for (std::size_t i = 0; i < pivots.size(); ++i) CHECK(r.at(i, pivots[i]) == 1);
}

TEST_CASE("solve and inverse") {
    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const RatMatrix m = random_matrix(rng, 4, 4, 5);
        const RatVec x = rng.rat_vector(4, 5);
        const RatVec b = m.apply(x);
        const auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        const RatVec back = m.apply(*sol);
        for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == b[i]);

        const auto inv = inverse(m);
        if (inv.has_value()) CHECK(m * *inv == RatMatrix::identity(4));
        CHECK(inv.has_value() == (det(m) != 0));
    }
    // inconsistent system has no solution
    RatMatrix z(2, 2);
    z.at(0, 0) = Rational(1);
    z.at(1, 0) = Rational(1);
    CHECK_FALSE(solve(z, rvec({0, 1})).has_value());
    CHECK_FALSE(inverse(z).has_value());

    // the empty matrix is its own inverse
    const auto empty_inv = inverse(RatMatrix(0, 0));
    REQUIRE(empty_inv.has_value());
    CHECK(empty_inv->rows() == 0);
    CHECK(det(RatMatrix(0, 0)) == Rational(1));
    CHECK(characteristic_polynomial(RatMatrix(0, 0)) == UniPoly::constant(Rational(1)));
}

TEST_CASE("row space calculus") {
    Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const RatMatrix a = random_matrix(rng, 2, 5, 4);
        const RatMatrix b = random_matrix(rng, 2, 5, 4);
        CHECK(same_row_space(a, row_space_canonical(a)));
        CHECK(same_row_space(a, a * Rational(3)));

        const RatMatrix meet = intersect_row_spaces(a, b);
        CHECK(row_space_contains(a, meet));
        CHECK(row_space_contains(b, meet));
        const std::size_t join_rank = rank(stack_rows(a, b));
        CHECK(rank(meet) + join_rank == rank(a) + rank(b));

        const auto extension = complete_to_basis(row_space_canonical(a), 5);
        RatMatrix full = row_space_canonical(a);
        for (const auto& row : extension) full = stack_rows(full, RatMatrix::from_rows({row}));
        CHECK(rank(full) == 5);
    }
    CHECK(same_row_space(RatMatrix(0, 4), RatMatrix(0, 4)));
    CHECK(row_space_contains(random_matrix(rng, 2, 4, 3), RatMatrix(0, 4)));
}

TEST_CASE("characteristic polynomial") {
    // companion matrix of t^3 - 2t^2 + 3t - 5
    RatMatrix c(3, 3);
    c.at(0, 2) = Rational(5);
    c.at(1, 0) = Rational(1);
    c.at(1, 2) = Rational(-3);
    c.at(2, 1) = Rational(1);
    c.at(2, 2) = Rational(2);
    CHECK(characteristic_polynomial(c) == upoly({-5, 3, -2, 1}));

    Rng rng(36);
    for (int trial = 0; trial < 8; ++trial) {
        const RatMatrix m = random_matrix(rng, 3, 3, 4);
        const UniPoly p = characteristic_polynomial(m);
        REQUIRE(p.degree() == 3);
        // det(tI - m) at t = 0 is (-1)^n det m; trace is minus the t^{n-1} coefficient
        CHECK(p.coeff(0) == -det(m));
        CHECK(p.coeff(2) == -(m.at(0, 0) + m.at(1, 1) + m.at(2, 2)));
        CHECK(p.leading_coeff() == 1);
    }
}

TEST_CASE("numeric rank and kernel") {
    Eigen::MatrixXcd m(3, 4);
    m.setZero();
    m(0, 0) = 1.0;
    m(1, 1) = std::complex<double>(0.0, 2.0);
    m(2, 0) = 1.0; // duplicate direction of row 0? no: same column, dependent rows
    CHECK(numeric_rank(m, 1e-12) == 2);
    const auto kernel = numeric_kernel(m, 1e-12);
    CHECK(kernel.cols() == 2);
    CHECK((m * kernel).norm() < 1e-12);
}
