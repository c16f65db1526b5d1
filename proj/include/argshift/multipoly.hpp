#ifndef ARGSHIFT_MULTIPOLY_HPP
#define ARGSHIFT_MULTIPOLY_HPP

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "argshift/rational.hpp"
#include "argshift/unipoly.hpp"

namespace argshift {

/// Exponent vector of one monomial; length is the variable count of the
/// owning polynomial.
using Monomial = std::vector<unsigned>;

/// Graded lexicographic order: total degree first, then lexicographic with
/// x1 > x2 > ... . Fixes term iteration and serialization once and for all.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals. Zero coefficients are
/// never stored, so equality is equality of term maps.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    explicit MultiPoly(std::size_t num_vars = 0) : nvars_(num_vars) {}

    static MultiPoly constant(std::size_t num_vars, const Rational& c);
    static MultiPoly variable(std::size_t num_vars, std::size_t index);
    static MultiPoly monomial(std::size_t num_vars, Monomial expo, const Rational& c);

    std::size_t num_vars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Rational constant_term() const;
    /// Total degree; empty for the zero polynomial.
    std::optional<int> degree() const;
    int degree_in(std::size_t var) const;

    /// Leading term in graded-lex order; polynomial must be nonzero.
    const std::pair<const Monomial, Rational>& leading_term() const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const Rational& s) const;
    MultiPoly pow(unsigned e) const;
    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    MultiPoly partial_derivative(std::size_t var) const;
    Rational evaluate(std::span<const Rational> point) const;
    std::complex<double> evaluate(std::span<const std::complex<double>> point) const;
    /// All first partials evaluated at a point.
    std::vector<Rational> gradient(std::span<const Rational> point) const;

    /// q(t) = p(base + t * direction).
    UniPoly restrict_to_line(std::span<const Rational> base,
                             std::span<const Rational> direction) const;

    void add_term(Monomial expo, const Rational& c); // accumulates, drops zeros

    std::string to_text() const;
    static MultiPoly parse(const std::string& text, std::size_t num_vars);

private:
    void require_same_vars(const MultiPoly& o) const;
    std::size_t nvars_;
    TermMap terms_;
};

/// Coefficients f_0..f_deg of f(a + t x) as polynomials in x; f_0 is the
/// constant f(a) and f_deg recovers the top homogeneous part of f.
std::vector<MultiPoly> shift_coefficients(const MultiPoly& f, std::span<const Rational> a);

/// Quotient p / q when q divides p exactly, nullopt otherwise. q nonzero.
std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q);

/// Canonical representative of the scalar class of p: integer coefficients,
/// collectively coprime, positive leading coefficient in graded-lex order.
MultiPoly normalize_primitive(const MultiPoly& p);

/// GCD by recursive primitive pseudo-remainder sequences, returned in
/// normalize_primitive form; gcd(p, 0) = normalized p. Every result is
/// certified by exact trial division of both inputs (internal_error on
/// failure, which indicates a bug rather than bad input).
MultiPoly gcd_multivariate(const MultiPoly& p, const MultiPoly& q);

/// p = c * prod factor_k^multiplicity_k with the factors squarefree,
/// pairwise coprime and normalized; the rational scale c is dropped.
std::vector<std::pair<int, MultiPoly>> squarefree_decomposition(const MultiPoly& p);

/// Product of the distinct normalized squarefree factors.
MultiPoly squarefree_part(const MultiPoly& p);

} // namespace argshift

#endif
