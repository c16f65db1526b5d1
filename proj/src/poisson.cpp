#include "argshift/poisson.hpp"

#include <stdexcept>

namespace argshift {

namespace {

MultiPoly bracket_with_pairing(const LieAlgebra& alg, const MultiPoly& f,
                               const MultiPoly& g, const RatVec* frozen_at) {
    const std::size_t n = alg.dim();
    if (f.num_vars() != n || g.num_vars() != n)
        throw std::invalid_argument("polynomial variable count differs from algebra dimension");
    if (frozen_at && frozen_at->size() != n)
        throw std::invalid_argument("frozen point length differs from algebra dimension");

    std::vector<MultiPoly> df, dg;
    df.reserve(n);
    dg.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        df.push_back(f.partial_derivative(i));
        dg.push_back(g.partial_derivative(i));
    }
    MultiPoly out(n);
    for (const auto& [key, c] : alg.structure()) {
        const auto& [i, j, k] = key;
        const MultiPoly cross = df[i] * dg[j] - df[j] * dg[i];
        if (cross.is_zero()) continue;
        if (frozen_at) {
            const Rational w = c * (*frozen_at)[k];
            if (w != 0) out = out + cross * w;
        } else {
            out = out + MultiPoly::variable(n, k) * cross * c;
        }
    }
    return out;
}

} // namespace

MultiPoly lie_poisson_bracket(const LieAlgebra& alg, const MultiPoly& f,
                              const MultiPoly& g) {
    return bracket_with_pairing(alg, f, g, nullptr);
}

MultiPoly frozen_bracket(const LieAlgebra& alg, const RatVec& a, const MultiPoly& f,
                         const MultiPoly& g) {
    return bracket_with_pairing(alg, f, g, &a);
}

SemiInvariantResult is_semiinvariant(const LieAlgebra& alg, const MultiPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    const std::size_t n = alg.dim();
    SemiInvariantResult result;
    RatVec values(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        const MultiPoly b = lie_poisson_bracket(alg, f, MultiPoly::variable(n, i));
        if (b.is_zero()) continue;
        const auto q = divide_exact(b, f);
        if (!q || !q->is_constant()) {
            result.failing_coordinate = i + 1;
            return result;
        }
        values[i] = q->constant_term();
    }
    // The character must vanish on the derived algebra; this follows from the
    // Jacobi identity, so a violation indicates a bug upstream.
    std::map<std::pair<std::size_t, std::size_t>, Rational> pairings;
    for (const auto& [key, c] : alg.structure()) {
        const auto& [i, j, k] = key;
        pairings[{i, j}] += c * values[k];
    }
    for (const auto& [pair, value] : pairings) {
        (void)pair;
        if (value != 0)
            throw internal_error("semi-invariant character does not vanish on the derived algebra");
    }
    result.character = Character{std::move(values)};
    return result;
}

std::optional<CommuteWitness> check_pairwise_commute(const LieAlgebra& alg,
                                                     const RatVec& a,
                                                     const std::vector<MultiPoly>& polys) {
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (std::size_t j = i + 1; j < polys.size(); ++j) {
            MultiPoly b = lie_poisson_bracket(alg, polys[i], polys[j]);
            if (!b.is_zero()) return CommuteWitness(i, j, false, std::move(b));
            b = frozen_bracket(alg, a, polys[i], polys[j]);
            if (!b.is_zero()) return CommuteWitness(i, j, true, std::move(b));
        }
    }
    return std::nullopt;
}

} // namespace argshift
