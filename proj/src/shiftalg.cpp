#include "argshift/shiftalg.hpp"

#include "argshift/poisson.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace argshift {

ShiftPoint make_shift_point(const LieAlgebra& alg, RatVec a,
                            const IndexCertificate& cert) {
    if (a.size() != alg.dim())
        throw validation_error(validation_error::Kind::Point, "point has wrong length");
    const std::size_t r = rank(structure_matrix_at(alg, a));
    if (r != cert.t) {
        std::ostringstream os;
        os << "shift point is not regular: rank A_a = " << r << " < " << cert.t;
        throw validation_error(validation_error::Kind::Point, os.str());
    }
    return ShiftPoint{std::move(a), cert.t};
}

std::vector<MultiPoly> shift_expand(const MultiPoly& f, const ShiftPoint& a) {
    return shift_coefficients(f, std::span<const Rational>(a.a));
}

namespace {

void append_shifts(GeneratorSet& set, const MultiPoly& f, Provenance::Source source,
                   std::size_t source_index, const ShiftPoint& a,
                   std::set<std::string>& seen) {
    const auto coeffs = shift_coefficients(f, std::span<const Rational>(a.a));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].is_constant()) continue;
        const std::string key = normalize_primitive(coeffs[j]).to_text();
        if (!seen.insert(key).second) continue;
        set.generators.push_back(coeffs[j]);
        set.provenance.push_back(Provenance{source, source_index, j});
    }
}

void certify_commuting(const LieAlgebra& alg, const ShiftPoint& a,
                       const GeneratorSet& set) {
    const auto witness = check_pairwise_commute(alg, a.a, set.generators);
    if (witness) {
        std::ostringstream os;
        os << "generators #" << witness->first + 1 << " and #" << witness->second + 1
           << " fail to commute under the " << (witness->frozen ? "frozen" : "Lie-Poisson")
           << " bracket: " << witness->bracket.to_text();
        throw internal_error(os.str());
    }
}

} // namespace

GeneratorSet mf_generators(const LieAlgebra& alg, const ShiftPoint& a) {
    GeneratorSet set;
    set.kind = GeneratorKind::Classical;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < alg.invariants().size(); ++i)
        append_shifts(set, alg.invariants()[i], Provenance::Source::Invariant, i, a, seen);
    if (alg.invariants().empty()) set.note = "no invariants attached";
    certify_commuting(alg, a, set);
    return set;
}

GeneratorSet extended_generators(const LieAlgebra& alg, const ShiftPoint& a) {
    GeneratorSet set;
    set.kind = GeneratorKind::Extended;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < alg.invariants().size(); ++i)
        append_shifts(set, alg.invariants()[i], Provenance::Source::Invariant, i, a, seen);
    const MultiPoly p_g = fundamental_semiinvariant(alg, a.t);
    if (!p_g.is_constant())
        append_shifts(set, p_g, Provenance::Source::Semiinvariant, 0, a, seen);
    if (set.generators.empty()) set.note = "no generators available";
    certify_commuting(alg, a, set);
    return set;
}

TrdegEstimate trdeg_estimate(const GeneratorSet& gens, std::size_t samples,
                             std::uint64_t seed, std::size_t stability_window) {
    TrdegEstimate est;
    if (gens.generators.empty()) return est;
    const std::size_t n = gens.generators[0].num_vars();
    const std::size_t rows = gens.generators.size();

    std::vector<std::vector<MultiPoly>> jac(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        jac[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j)
            jac[i].push_back(gens.generators[i].partial_derivative(j));
    }

    Rng rng(seed);
    std::size_t unchanged = 0;
    while (est.trials < samples || unchanged < stability_window) {
        const unsigned long height = est.trials < 8 ? 10 : est.trials < 16 ? 100 : 1000;
        const RatVec x = rng.rat_vector(n, height);
        RatMatrix m(rows, n);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = jac[i][j].evaluate(std::span<const Rational>(x));
        const std::size_t r = rank(m);
        ++est.trials;
        if (r > est.trdeg) {
            est.trdeg = r;
            est.witness_point = x;
            unchanged = 0;
        } else {
            ++unchanged;
        }
        if (est.trdeg == std::min(rows, n) && est.trials >= samples) break;
    }
    return est;
}

DirectCompleteness completeness_direct(const LieAlgebra& alg, const GeneratorSet& gens,
                                       const IndexCertificate& cert,
                                       std::size_t samples, std::uint64_t seed) {
    DirectCompleteness out;
    out.b_g = (alg.dim() + cert.index) / 2;
    out.trdeg = trdeg_estimate(gens, samples, seed).trdeg;
    out.complete = out.trdeg == out.b_g;
    return out;
}

} // namespace argshift
