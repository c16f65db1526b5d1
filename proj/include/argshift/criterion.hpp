#pragma once

#include "argshift/liealg.hpp"
#include "argshift/multipoly.hpp"
#include "argshift/shiftalg.hpp"
#include "argshift/singular.hpp"
#include "argshift/unipoly.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace argshift {

/// One squarefree factor of the Pfaffian GCD; each factor cuts out a
/// codimension-one piece of the singular set.
struct ComponentTag {
    std::size_t index = 0;
    MultiPoly factor;
    int multiplicity = 1;
};

std::vector<ComponentTag> factor_components(const MultiPoly& p_g);

/// A component produced no usable point within the retry budget.
struct no_roots_found : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSample {
    std::size_t component = 0; ///< index of the vanishing factor
    bool exact = false;        ///< rational point with exact downstream data
    RatVec point;              ///< set when exact
    Eigen::VectorXcd numeric_point; ///< always set
    double gradient_norm = 0.0;     ///< factor gradient magnitude at the point
    std::size_t corank = 0;         ///< dim Ker A_x
    bool subregular = false;        ///< corank == index + 2
    StabilizerClass stab_class = StabilizerClass::Other;
};

/// Draws points on each component of {p_g = 0} by intersecting random
/// rational lines with the factor and keeping smooth points that avoid the
/// other components. Up to `count` samples per component are produced within
/// a 10x retry budget; non-subregular smooth points are kept and flagged,
/// since they are evidence about the generic stabilizer.
std::vector<SingularSample> sample_singular_points(const LieAlgebra& alg, const MultiPoly& p_g,
                                         std::size_t count, std::uint64_t seed,
                                         const IndexCertificate& cert,
                                         double tol = 1e-9);

struct ComponentVerdict {
    std::size_t component = 0;
    std::string factor_text;
    std::size_t sample_count = 0;     ///< smooth on-stratum samples
    std::size_t subregular_count = 0; ///< of those, corank == index + 2
    double b2_fraction = 0.0;         ///< fraction that are subregular with a b2-type stabilizer
    StabilizerClass dominant_class = StabilizerClass::Other;
    bool all_subregular_b2 = false;
    bool mixed_classes = false;  ///< more than one class observed; reported, never voted away
    bool low_confidence = false; ///< fewer than 5 smooth subregular samples
};

struct CompletenessVerdict {
    std::vector<ComponentVerdict> per_component;
    bool codim_at_least_two = false; ///< deg p_g == 0; the sampling branch is vacuous
    bool criterion_complete = false;
    bool b2_witness_per_component = false; ///< at least one b2-type point per component; a
                                       ///< sufficient condition only, never the verdict
    bool direct_complete = false;
    bool agreement = false; ///< the two branches concur; disagreement is a finding
    bool low_confidence = false;
    std::size_t trdeg = 0;
    std::size_t b_g = 0;
};

/// Decides completeness of the extended family two independent ways: by
/// classifying stabilizers sampled per component of the singular set, and by
/// comparing the transcendence degree of the generators against b(g).
CompletenessVerdict decide_completeness(const LieAlgebra& alg, const ShiftPoint& a,
                                std::size_t samples_per_component = 20,
                                std::uint64_t seed = 0, double tol = 1e-9);

struct DifferentialReport {
    bool nice = false;             ///< x passed the line-position requirements
    std::string not_nice_reason;   ///< set when nice is false
    std::size_t expected_roots = 0; ///< degree of the squarefree part of p_g
    std::vector<Root> lambdas;     ///< roots of p_g(x - lambda a) along the line
    bool kernel_membership = false; ///< each d lambda_i lies in Ker A_{x - lambda_i a}
    bool fundamental_identity = false; ///< [xi, eta] = <a,[xi, eta]> d lambda_i on each stabilizer
    bool span_matches_shifts = false;  ///< span{d lambda_i} == span of shift differentials
    bool exact = false;                ///< all roots rational, checks fully exact
    double max_residual = 0.0;         ///< largest numeric residual encountered
    std::vector<RatVec> differentials; ///< d lambda_i rows, parallel to lambdas (exact roots)
    Eigen::MatrixXcd numeric_differentials; ///< same rows numerically, all roots

    bool all() const { return nice && kernel_membership && fundamental_identity && span_matches_shifts; }
};

/// At a nice point x, differentiates the root functions lambda_i of
/// p_g(x - lambda a) implicitly and verifies their kernel membership, the
/// stabilizer bracket identity, and the equality of spans with the shift
/// differentials.
DifferentialReport verify_lambda_differentials(const LieAlgebra& alg, const ShiftPoint& a,
                                               const RatVec& x, double tol = 1e-8);

} // namespace argshift
