#pragma once

#include "argshift/rational.hpp"
#include "argshift/unipoly.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace argshift {

using RatVec = std::vector<Rational>;

/// Dense matrix over the rationals, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(const std::vector<RatVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatVec row(std::size_t i) const;
    RatMatrix transpose() const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator*(const Rational& s) const;
    RatVec apply(const RatVec& v) const;
    bool operator==(const RatMatrix& o) const = default;
    bool is_zero() const;
    bool is_skew_symmetric() const;

    Eigen::MatrixXd to_double() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

std::size_t rank(const RatMatrix& m);
Rational det(const RatMatrix& m);

/// Reduced row echelon form; pivot column indices optionally reported.
RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivot_cols = nullptr);

/// Canonical basis of the right kernel (deterministic: from RREF, free
/// variables in increasing column order, entries normalized by the pivots).
std::vector<RatVec> kernel_basis(const RatMatrix& m);

/// One solution of m x = b, or nothing when inconsistent.
std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b);

/// Inverse of a square matrix, nothing when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Subspaces of Q^n are represented by matrices whose rows span them.
/// The canonical form (RREF nonzero rows) makes equality a matrix compare.
RatMatrix row_space_canonical(const RatMatrix& spanning_rows);
bool same_row_space(const RatMatrix& a, const RatMatrix& b);
RatMatrix stack_rows(const RatMatrix& a, const RatMatrix& b);
RatMatrix intersect_row_spaces(const RatMatrix& a, const RatMatrix& b);

/// Rows of `inside` all lie in the row space of `space`.
bool row_space_contains(const RatMatrix& space, const RatMatrix& inside);

/// Standard basis vectors extending the rows of `subspace` to a basis of Q^n.
std::vector<RatVec> complete_to_basis(const RatMatrix& subspace, std::size_t n);

/// Numeric (complex) helpers, SVD-based with a relative tolerance.
std::size_t numeric_rank(const Eigen::MatrixXcd& m, double tol);
Eigen::MatrixXcd numeric_kernel(const Eigen::MatrixXcd& m, double tol);

/// Monic characteristic polynomial det(t I - m), exact (Faddeev-LeVerrier).
UniPoly characteristic_polynomial(const RatMatrix& m);

} // namespace argshift
