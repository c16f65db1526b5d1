#pragma once

#include "argshift/liealg.hpp"
#include "argshift/multipoly.hpp"
#include "argshift/singular.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace argshift {

/// A shift direction certified regular: rank A_a equals the generic rank t.
struct ShiftPoint {
    RatVec a;
    std::size_t t = 0;
};

/// Validates regularity exactly; throws validation_error (Point) when the
/// rank of A_a falls below cert.t.
ShiftPoint make_shift_point(const LieAlgebra& alg, RatVec a,
                            const IndexCertificate& cert);

enum class GeneratorKind { Classical, Extended };

struct Provenance {
    enum class Source { Invariant, Semiinvariant };
    Source source = Source::Invariant;
    std::size_t source_index = 0; ///< which invariant; 0 for the Pfaffian GCD
    std::size_t lambda_power = 0;
};

struct GeneratorSet {
    GeneratorKind kind = GeneratorKind::Classical;
    std::vector<MultiPoly> generators;
    std::vector<Provenance> provenance; ///< parallel to generators
    std::string note;                   ///< set when the list is empty by construction
};

/// Coefficients f_0..f_deg of f(a + lambda x) as polynomials in x, lowest
/// power first; f_0 is the constant f(a).
std::vector<MultiPoly> shift_expand(const MultiPoly& f, const ShiftPoint& a);

/// Shifts of every attached invariant, constants dropped, deduplicated,
/// and certified pairwise commuting under both brackets.
GeneratorSet mf_generators(const LieAlgebra& alg, const ShiftPoint& a);

/// The classical set plus shifts of the Pfaffian GCD p_g.
GeneratorSet extended_generators(const LieAlgebra& alg, const ShiftPoint& a);

struct TrdegEstimate {
    std::size_t trdeg = 0;
    RatVec witness_point; ///< a point attaining the maximal Jacobian rank
    std::size_t trials = 0;
};

/// Maximal Jacobian rank of the generators over random rational points of
/// growing height; a certified lower bound on the transcendence degree,
/// accepted once stable for `stability_window` consecutive points and at
/// least `samples` points total.
TrdegEstimate trdeg_estimate(const GeneratorSet& gens, std::size_t samples,
                             std::uint64_t seed, std::size_t stability_window = 8);

struct DirectCompleteness {
    bool complete = false;
    std::size_t trdeg = 0;
    std::size_t b_g = 0; ///< (dim + index) / 2
};

/// Compares the transcendence-degree estimate against b(g).
DirectCompleteness completeness_direct(const LieAlgebra& alg, const GeneratorSet& gens,
                                       const IndexCertificate& cert,
                                       std::size_t samples = 20, std::uint64_t seed = 0);

} // namespace argshift
