#ifndef ARGSHIFT_UNIPOLY_HPP
#define ARGSHIFT_UNIPOLY_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "argshift/rational.hpp"

namespace argshift {

/// Dense univariate polynomial over the rationals, coefficients stored
/// lowest degree first. The zero polynomial has an empty coefficient list.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Rational& c);
    static UniPoly variable(); // the monomial lambda

    bool is_zero() const { return c_.empty(); }
    /// Degree; empty for the zero polynomial.
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& coeff(std::size_t k) const;
    const Rational& leading_coeff() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator-() const;
    UniPoly operator*(const Rational& s) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    UniPoly derivative() const;
    Rational evaluate(const Rational& x) const;
    std::complex<double> evaluate(const std::complex<double>& x) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
    /// Quotient when the division is exact, nullopt otherwise.
    std::optional<UniPoly> divide_exact(const UniPoly& divisor) const;

    /// Leading coefficient 1 (zero polynomial stays zero).
    UniPoly monic() const;

    std::string to_text(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic GCD by the Euclidean algorithm; gcd(p, 0) = monic p, gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& p, const UniPoly& q);

/// Yun decomposition q = lc * prod s_k^k with the s_k squarefree, monic and
/// pairwise coprime. Returns (multiplicity, factor) pairs with nontrivial
/// factors only; requires q nonzero.
std::vector<std::pair<int, UniPoly>> squarefree_decomposition(const UniPoly& q);

/// Product of the distinct monic squarefree factors.
UniPoly squarefree_part(const UniPoly& q);

/// One root of a univariate polynomial: exact when rational, otherwise a
/// numeric value with the attained residual |s(root)| on its squarefree factor.
struct Root {
    bool is_rational = false;
    Rational value;                    // set when is_rational
    std::complex<double> numeric;      // always set (rational roots included)
    int multiplicity = 1;
    double residual = 0.0;
};

struct RootOptions {
    double residual_tol = 1e-9; // relative, checked per squarefree factor
};

/// All distinct complex roots with multiplicities. Rational roots are exact
/// (found by denominator/numerator divisor search on each squarefree factor);
/// the rest come from companion-matrix eigenvalues. Throws on the zero
/// polynomial, and internal_error when a numeric root fails the residual bound.
std::vector<Root> distinct_roots(const UniPoly& q, const RootOptions& opts = {});

} // namespace argshift

#endif
