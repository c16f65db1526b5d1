#pragma once

#include "argshift/linalg.hpp"
#include "argshift/rng.hpp"
#include "argshift/unipoly.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace argshift {

/// Raised by recursion_operator when the form at infinity is itself
/// exceptional (its corank exceeds the pencil minimum).
class infinity_in_spectrum : public std::runtime_error {
public:
    infinity_in_spectrum()
        : std::runtime_error("the form at infinity is exceptional; no recursion operator") {}
};

/// A pair of skew-symmetric bilinear forms; the pencil is P_lambda = P0 - lambda * Pinf.
class FormPair {
public:
    static FormPair create(RatMatrix p0, RatMatrix pinf);

    std::size_t dim() const { return p0_.rows(); }
    const RatMatrix& p0() const { return p0_; }
    const RatMatrix& pinf() const { return pinf_; }

    RatMatrix at(const Rational& lambda) const;
    Eigen::MatrixXcd at(const std::complex<double>& lambda) const;

private:
    FormPair(RatMatrix p0, RatMatrix pinf)
        : p0_(std::move(p0)), pinf_(std::move(pinf)) {}

    RatMatrix p0_;
    RatMatrix pinf_;
};

/// Minimal corank of P_lambda over lambda (infinity included), by exact rank
/// at random rational lambda of growing height; stops once the minimum has
/// held for `stability_window` consecutive probes and `probes` total.
std::size_t min_corank(const FormPair& pair, std::size_t probes = 5,
                       std::uint64_t seed = 0, std::size_t stability_window = 5);

struct SpectrumEntry {
    Root lambda;
    std::size_t corank = 0;
};

/// Finite exceptional values: lambda with corank P_lambda > r. Candidates
/// come from the supplied restriction polynomial when given, otherwise from
/// the GCD of the Pfaffians of all principal (n-r) x (n-r) minors of the
/// lambda-matrix; every candidate is confirmed by a corank computation
/// (exact at rational lambda, SVD-based otherwise).
std::vector<SpectrumEntry> spectrum(const FormPair& pair, std::size_t r,
                                    const std::optional<UniPoly>& hint = std::nullopt,
                                    double tol = 1e-9);

/// Basis (canonical row form) of L, the sum of kernels of P_lambda over
/// generic lambda; kernels are accumulated (infinity included when generic)
/// until the dimension is unchanged for `stability_window` additions.
RatMatrix core_subspace(const FormPair& pair, std::size_t r, std::uint64_t seed = 0,
                        std::size_t stability_window = 3);

struct EigenData {
    Root value;
    std::size_t algebraic = 0;
    std::size_t geometric = 0;
};

struct RecursionOperator {
    RatMatrix core;       ///< canonical basis of L
    RatMatrix core_perp;  ///< canonical basis of L-perp
    RatMatrix complement; ///< rows: basis of a complement of L inside L-perp
    RatMatrix matrix;     ///< R = B_inf^{-1} B_0 in the complement basis
    UniPoly charpoly;
    std::vector<EigenData> eigen;
    bool diagonalizable = false;             ///< geometric == algebraic throughout
    bool kernel_test_diagonalizable = false; ///< dim Ker(Pinf | Ker P_lambda) == r throughout
};

/// Builds R on L-perp/L. Requires corank Pinf == r (throws
/// infinity_in_spectrum otherwise). The complement of L may be supplied;
/// eigendata is independent of that choice.
RecursionOperator recursion_operator(const FormPair& pair, const RatMatrix& core,
                                     std::size_t r, std::uint64_t seed = 0,
                                     double tol = 1e-9,
                                     const RatMatrix* complement_hint = nullptr);

struct CoreLemmasReport {
    bool core_isotropic = false;              ///< L isotropic for every sampled form
    bool perp_independent = false;            ///< L-perp the same for every sampled lambda
    bool quotient_nondegenerate = false;      ///< P_lambda invertible on L-perp/L off the spectrum
    bool exceptional_kernel_meets_core = false; ///< dim(Ker P_lambda cap L) == r on the spectrum
    bool kernel_restriction_contains_core = false; ///< Ker(P_alpha | Ker P_lambda) contains Ker P_lambda cap L
    std::string detail; ///< first failure, empty when everything passed

    bool all() const {
        return core_isotropic && perp_independent && quotient_nondegenerate &&
               exceptional_kernel_meets_core && kernel_restriction_contains_core;
    }
};

CoreLemmasReport verify_core_lemmas(const FormPair& pair, std::uint64_t seed = 0, double tol = 1e-9);

struct IsotropyReport {
    bool isotropic = false;          ///< P_lambda vanishes on U x U for all sampled lambda
    bool maximal_at_generic = false; ///< U equals its own skew-orthogonal complement at generic lambda
};

IsotropyReport isotropy_check(const FormPair& pair, const RatMatrix& u,
                              std::size_t lambda_samples = 5, std::uint64_t seed = 0);

struct PencilReport {
    struct Entry {
        Root lambda;
        std::size_t corank = 0;
        std::size_t eigenspace_dim = 0; ///< geometric multiplicity in R; 0 when R is unavailable
    };

    std::size_t r = 0;
    std::vector<Entry> exceptional;
    std::size_t dim_core = 0;
    std::size_t dim_core_perp = 0;
    bool infinity_exceptional = false;
    bool diagonalizable = false; ///< meaningful only when R exists
    std::vector<std::pair<Root, std::size_t>> multiplicities; ///< eigenvalue, algebraic
};

PencilReport build_pencil_report(const FormPair& pair,
                                 const std::optional<UniPoly>& hint = std::nullopt,
                                 std::uint64_t seed = 0, double tol = 1e-9);

} // namespace argshift
