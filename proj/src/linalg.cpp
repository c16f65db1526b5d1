#include "argshift/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace argshift {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return {};
    RatMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged row list");
        for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatVec RatMatrix::row(std::size_t i) const {
    RatVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    RatMatrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    RatMatrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    RatMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    }
    return r;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
    RatMatrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
}

RatVec RatMatrix::apply(const RatVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("shape mismatch");
    RatVec r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

bool RatMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
}

bool RatMatrix::is_skew_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (at(i, j) != -at(j, i)) return false;
    return true;
}

Eigen::MatrixXd RatMatrix::to_double() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                argshift::to_double(at(i, j));
    return m;
}

namespace {

// Fraction-free elimination on the numerator matrix after clearing row
// denominators; reports rank and, for square input, the determinant scaled
// back by the cleared factors.
struct BareissResult {
    std::size_t rank = 0;
    Rational determinant = 0;
};

BareissResult bareiss(const RatMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    BareissResult out;
    if (rows == 0 || cols == 0) {
        out.determinant = rows == cols ? Rational(1) : Rational(0);
        return out;
    }
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    Rational clearing(1);
    for (std::size_t i = 0; i < rows; ++i) {
        Integer lcm = 1;
        for (std::size_t j = 0; j < cols; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational scaled = m.at(i, j) * Rational(lcm);
            a[i][j] = scaled.get_num();
        }
        clearing *= Rational(lcm);
    }

    Integer prev = 1;
    std::size_t r = 0;
    int sign = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            std::swap(a[pivot], a[r]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                a[i][j] = t / prev; // exact by the Bareiss identity
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    out.rank = r;
    if (rows == cols) {
        // After full elimination the last pivot is the integer determinant.
        out.determinant =
            r == rows ? Rational(sign) * Rational(prev) / clearing : Rational(0);
    }
    return out;
}

} // namespace

std::size_t rank(const RatMatrix& m) { return bareiss(m).rank; }

Rational det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    return bareiss(m).determinant;
}

RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivot_cols) {
    RatMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    if (pivot_cols) pivot_cols->clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a.at(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(pivot, j), a.at(r, j));
        const Rational inv = Rational(1) / a.at(r, c);
        for (std::size_t j = 0; j < cols; ++j) a.at(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            const Rational f = a.at(i, c);
            for (std::size_t j = 0; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return a;
}

std::vector<RatVec> kernel_basis(const RatMatrix& m) {
    std::vector<std::size_t> pivots;
    const RatMatrix r = rref(m, &pivots);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r.at(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("shape mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots;
    const RatMatrix r = rref(aug, &pivots);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    RatVec x(m.cols(), Rational(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = r.at(k, m.cols());
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<std::size_t> pivots;
    const RatMatrix r = rref(aug, &pivots);
    if (pivots.size() != n) return std::nullopt;
    if (n > 0 && pivots.back() != n - 1) return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

UniPoly characteristic_polynomial(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("shape mismatch");
    const std::size_t n = m.rows();
    // Faddeev-LeVerrier: M_1 = m, c_k = -tr(m M_k)/k, M_{k+1} = m M_k + c_k I.
    std::vector<Rational> coeffs(n + 1, Rational(0));
    coeffs[n] = 1;
    RatMatrix mk = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        Rational trace(0);
        for (std::size_t i = 0; i < n; ++i) trace += mk.at(i, i);
        const Rational c = -trace / Rational(static_cast<long>(k));
        coeffs[n - k] = c;
        for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += c;
    }
    return UniPoly(std::move(coeffs));
}

RatMatrix row_space_canonical(const RatMatrix& spanning_rows) {
    std::vector<std::size_t> pivots;
    const RatMatrix r = rref(spanning_rows, &pivots);
    RatMatrix out(pivots.size(), spanning_rows.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < spanning_rows.cols(); ++j) out.at(i, j) = r.at(i, j);
    return out;
}

bool same_row_space(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) return false;
    return row_space_canonical(a) == row_space_canonical(b);
}

RatMatrix stack_rows(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    RatMatrix s(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) s.at(a.rows() + i, j) = b.at(i, j);
    return s;
}

RatMatrix intersect_row_spaces(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    const std::size_t n = a.cols();
    const RatMatrix ca = row_space_canonical(a);
    const RatMatrix cb = row_space_canonical(b);
    if (ca.rows() == 0 || cb.rows() == 0) return RatMatrix(0, n);
    // Zassenhaus: row-reduce [A | A; B | 0]; blocks [0 | C] give the
    // intersection basis.
    RatMatrix block(ca.rows() + cb.rows(), 2 * n);
    for (std::size_t i = 0; i < ca.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            block.at(i, j) = ca.at(i, j);
            block.at(i, n + j) = ca.at(i, j);
        }
    for (std::size_t i = 0; i < cb.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) block.at(ca.rows() + i, j) = cb.at(i, j);
    const RatMatrix r = rref(block);
    std::vector<RatVec> rows;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j) left_zero = r.at(i, j) == 0;
        if (!left_zero) continue;
        RatVec v(n);
        bool right_zero = true;
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = r.at(i, n + j);
            if (v[j] != 0) right_zero = false;
        }
        if (!right_zero) rows.push_back(std::move(v));
    }
    return row_space_canonical(RatMatrix::from_rows(rows));
}

bool row_space_contains(const RatMatrix& space, const RatMatrix& inside) {
    if (inside.rows() == 0) return true;
    if (space.cols() != inside.cols()) return false;
    return rank(space) == rank(stack_rows(space, inside));
}

std::vector<RatVec> complete_to_basis(const RatMatrix& subspace, std::size_t n) {
    RatMatrix current = row_space_canonical(subspace);
    std::size_t current_rank = current.rows();
    std::vector<RatVec> extension;
    for (std::size_t j = 0; j < n && current_rank < n; ++j) {
        RatVec e(n, Rational(0));
        e[j] = 1;
        const RatMatrix trial = stack_rows(current, RatMatrix::from_rows({e}));
        if (rank(trial) > current_rank) {
            extension.push_back(std::move(e));
            current = trial;
            ++current_rank;
        }
    }
    return extension;
}

std::size_t numeric_rank(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

Eigen::MatrixXcd numeric_kernel(const Eigen::MatrixXcd& m, double tol) {
    if (m.cols() == 0) return Eigen::MatrixXcd(0, 0);
    if (m.rows() == 0) return Eigen::MatrixXcd::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (top > 0.0 && sv(i) > tol * top) ++r;
    return svd.matrixV().rightCols(m.cols() - r);
}

} // namespace argshift
