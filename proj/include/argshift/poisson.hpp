#pragma once

#include "argshift/liealg.hpp"
#include "argshift/multipoly.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace argshift {

/// Character of a semi-invariant: the linear map with {f, x_i} = values[i] * f.
/// Always vanishes on the derived algebra.
struct Character {
    RatVec values;
};

/// Lie-Poisson bracket {f, g}(x) = sum_{i<j,k} c_ij^k x_k (df_i dg_j - df_j dg_i).
MultiPoly lie_poisson_bracket(const LieAlgebra& alg, const MultiPoly& f,
                              const MultiPoly& g);

/// Frozen-argument bracket: the same pairing evaluated at the fixed point a,
/// {f, g}_a(x) = sum_{i<j,k} c_ij^k a_k (df_i dg_j - df_j dg_i).
MultiPoly frozen_bracket(const LieAlgebra& alg, const RatVec& a, const MultiPoly& f,
                         const MultiPoly& g);

struct SemiInvariantResult {
    /// Engaged exactly when f is a semi-invariant.
    std::optional<Character> character;
    /// 1-based coordinate index where {f, x_i} failed to be a constant
    /// multiple of f; 0 when the check succeeded.
    std::size_t failing_coordinate = 0;

    explicit operator bool() const { return character.has_value(); }
};

/// Tests whether {f, x_i} is a constant multiple c_i of f for every
/// coordinate; on success returns the character (c_1..c_n).
SemiInvariantResult is_semiinvariant(const LieAlgebra& alg, const MultiPoly& f);

struct CommuteWitness {
    std::size_t first = 0;  ///< 0-based indices into the input list
    std::size_t second = 0;
    bool frozen = false;  ///< true when the frozen bracket is the one that failed
    MultiPoly bracket;    ///< the offending nonzero bracket polynomial

    CommuteWitness(std::size_t f, std::size_t s, bool fr, MultiPoly b)
        : first(f), second(s), frozen(fr), bracket(std::move(b)) {}
};

/// Verifies that all pairs commute under both brackets. Returns the first
/// failure in pair order (i < j, plain bracket before frozen), or nullopt.
std::optional<CommuteWitness> check_pairwise_commute(const LieAlgebra& alg,
                                                     const RatVec& a,
                                                     const std::vector<MultiPoly>& polys);

} // namespace argshift
