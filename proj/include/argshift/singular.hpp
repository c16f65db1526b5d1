#pragma once

#include "argshift/liealg.hpp"
#include "argshift/linalg.hpp"
#include "argshift/multipoly.hpp"
#include "argshift/rng.hpp"
#include "argshift/unipoly.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace argshift {

/// The skew matrix of linear forms (A_x)_ij = sum_k c_ij^k x_k.
class StructureMatrix {
public:
    static StructureMatrix of(const LieAlgebra& alg);

    std::size_t dim() const { return n_; }
    const MultiPoly& at(std::size_t i, std::size_t j) const;

    /// Numeric entries at a rational point.
    RatMatrix evaluate(const RatVec& x) const;

    /// Entries restricted to the line t -> base + t * direction.
    std::vector<std::vector<UniPoly>> restrict_to_line(const RatVec& base,
                                                       const RatVec& direction) const;

private:
    StructureMatrix(std::size_t n, std::vector<MultiPoly> entries)
        : n_(n), entries_(std::move(entries)) {}

    std::size_t n_ = 0;
    std::vector<MultiPoly> entries_; // row-major n*n
};

struct IndexCertificate {
    std::size_t index = 0; ///< dim minus the maximal observed rank of A_x
    std::size_t t = 0;     ///< the maximal observed rank (always even)
    std::vector<RatVec> witness_points; ///< points attaining rank t
    std::size_t trials = 0;             ///< total sample count
};

/// Estimates the index by sampling A_x at random rational points of growing
/// coefficient height. Exact ranks only ever raise the estimate; sampling
/// stops once the estimate has survived `stability_window` consecutive
/// points unchanged.
IndexCertificate index_certificate(const LieAlgebra& alg, Rng rng = Rng(0),
                                   std::size_t stability_window = 8);

/// Pfaffian of an even-size skew-symmetric matrix, by recursive expansion
/// along the first row. Validates skew-symmetry.
MultiPoly pfaffian(const std::vector<std::vector<MultiPoly>>& m);
UniPoly pfaffian(const std::vector<std::vector<UniPoly>>& m);

/// Visits all size-k subsets of {0..n-1} in lexicographic order, passing each
/// as a sorted index vector; stops early when fn returns false. Returns true
/// when the enumeration ran to completion.
bool for_each_principal_subset(std::size_t n, std::size_t k,
                               const std::function<bool(const std::vector<std::size_t>&)>& fn);

/// Monic GCD of the Pfaffians of all principal k x k submatrices of a skew
/// matrix with univariate entries; sub-Pfaffians are shared across minors
/// and the scan stops early once the GCD drops to a constant. Returns the
/// zero polynomial when every such Pfaffian vanishes identically.
UniPoly principal_pfaffian_gcd(const std::vector<std::vector<UniPoly>>& m, std::size_t k);

/// GCD of the Pfaffians of all principal t x t submatrices of A_x,
/// primitive-normalized. Constant 1 means the rank-drop locus has
/// codimension at least two. The result is checked to be a semi-invariant.
MultiPoly fundamental_semiinvariant(const LieAlgebra& alg, std::size_t t);

/// Convenience form computing the index certificate with a fixed seed first.
MultiPoly fundamental_semiinvariant(const LieAlgebra& alg);

struct SingularCodim {
    bool codim_one = false; ///< true iff deg p_g >= 1
    MultiPoly p_g;
};

SingularCodim singular_codim_flag(const LieAlgebra& alg);

} // namespace argshift
