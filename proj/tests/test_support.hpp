#pragma once

#include "argshift/liealg.hpp"
#include "argshift/multipoly.hpp"
#include "argshift/rng.hpp"
#include "argshift/shiftalg.hpp"
#include "argshift/singular.hpp"
#include "argshift/unipoly.hpp"

#include <string>
#include <vector>

namespace argshift::testing {

inline UniPoly upoly(std::vector<long> coeffs) {
    RatVec c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return UniPoly(std::move(c));
}

inline RatVec rvec(std::vector<long> v) {
    RatVec out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

inline MultiPoly mp(const std::string& text, std::size_t nvars) {
    return MultiPoly::parse(text, nvars);
}

inline UniPoly random_upoly(Rng& rng, int deg, long height) {
    RatVec c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = rng.rat(height);
    if (c.back() == 0) c.back() = Rational(1);
    return UniPoly(std::move(c));
}

inline MultiPoly random_mpoly(Rng& rng, std::size_t nvars, int deg, std::size_t terms,
                              long height) {
    MultiPoly f(nvars);
    for (std::size_t t = 0; t < terms; ++t) {
        Monomial expo(nvars, 0);
        int budget = static_cast<int>(rng.below(static_cast<std::uint64_t>(deg) + 1));
        for (int i = 0; i < budget; ++i) ++expo[rng.below(nvars)];
        f.add_term(std::move(expo), rng.rat(height));
    }
    return f;
}

inline RatMatrix random_skew(Rng& rng, std::size_t n, long height) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational c = rng.rat(height);
            m.at(i, j) = c;
            m.at(j, i) = -c;
        }
    return m;
}

/// Random regular shift point; throws after too many rejections.
inline ShiftPoint random_shift_point(const LieAlgebra& alg, const IndexCertificate& cert,
                                     Rng& rng, long height = 10) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        RatVec a = rng.rat_vector(alg.dim(), height);
        try {
            return make_shift_point(alg, std::move(a), cert);
        } catch (const validation_error&) {
        }
    }
    throw internal_error("no regular shift point found");
}

} // namespace argshift::testing
