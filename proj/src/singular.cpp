#include "argshift/singular.hpp"

#include "argshift/poisson.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

namespace argshift {

StructureMatrix StructureMatrix::of(const LieAlgebra& alg) {
    const std::size_t n = alg.dim();
    std::vector<MultiPoly> entries(n * n, MultiPoly(n));
    for (const auto& [key, c] : alg.structure()) {
        const auto& [i, j, k] = key;
        const MultiPoly term = MultiPoly::variable(n, k) * c;
        entries[i * n + j] = entries[i * n + j] + term;
        entries[j * n + i] = entries[j * n + i] - term;
    }
    return StructureMatrix(n, std::move(entries));
}

const MultiPoly& StructureMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("structure matrix index");
    return entries_[i * n_ + j];
}

RatMatrix StructureMatrix::evaluate(const RatVec& x) const {
    RatMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            m.at(i, j) = entries_[i * n_ + j].evaluate(std::span<const Rational>(x));
    return m;
}

std::vector<std::vector<UniPoly>> StructureMatrix::restrict_to_line(
    const RatVec& base, const RatVec& direction) const {
    std::vector<std::vector<UniPoly>> out(n_, std::vector<UniPoly>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            out[i][j] = entries_[i * n_ + j].restrict_to_line(base, direction);
    return out;
}

IndexCertificate index_certificate(const LieAlgebra& alg, Rng rng,
                                   std::size_t stability_window) {
    const std::size_t n = alg.dim();
    IndexCertificate cert;
    cert.t = 0;
    std::size_t unchanged = 0;
    while (unchanged < stability_window) {
        const unsigned long height = cert.trials < 8 ? 10 : cert.trials < 16 ? 100 : 1000;
        const RatVec x = rng.rat_vector(n, height);
        const std::size_t r = rank(structure_matrix_at(alg, x));
        ++cert.trials;
        if (r > cert.t) {
            cert.t = r;
            cert.witness_points.clear();
            cert.witness_points.push_back(x);
            unchanged = 0;
        } else {
            ++unchanged;
            if (r == cert.t && cert.witness_points.size() < 3)
                cert.witness_points.push_back(x);
        }
    }
    if (cert.t % 2 != 0)
        throw internal_error("odd rank observed for a skew-symmetric matrix");
    cert.index = n - cert.t;
    return cert;
}

namespace {

MultiPoly unit_like(const MultiPoly& sample) {
    return MultiPoly::constant(sample.num_vars(), 1);
}

UniPoly unit_like(const UniPoly&) { return UniPoly::constant(1); }

MultiPoly zero_like(const MultiPoly& sample) { return MultiPoly(sample.num_vars()); }

UniPoly zero_like(const UniPoly&) { return UniPoly(); }

// Pfaffians of principal submatrices, memoized on the index subset so that
// overlapping minors share sub-Pfaffians.
template <typename Poly>
class PfaffianTable {
public:
    explicit PfaffianTable(const std::vector<std::vector<Poly>>& m) : m_(m) {
        if (m.size() > 64) throw internal_error("matrix too large for subset masks");
    }

    const Poly& get(const std::vector<std::size_t>& subset) {
        std::uint64_t mask = 0;
        for (const std::size_t i : subset) mask |= std::uint64_t{1} << i;
        return compute(mask);
    }

private:
    const Poly& compute(std::uint64_t mask) {
        const auto found = memo_.find(mask);
        if (found != memo_.end()) return found->second;

        Poly value = unit_like(m_[0][0]);
        if (mask != 0) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < m_.size(); ++i)
                if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
            bool first = true;
            for (std::size_t p = 1; p < idx.size(); ++p) {
                const Poly& entry = m_[idx[0]][idx[p]];
                if (entry.is_zero()) continue;
                const std::uint64_t rest =
                    mask & ~(std::uint64_t{1} << idx[0]) & ~(std::uint64_t{1} << idx[p]);
                Poly term = entry * compute(rest);
                if (p % 2 == 0) term = -term;
                value = first ? std::move(term) : value + term;
                first = false;
            }
            if (first) value = zero_like(m_[0][0]);
        }
        return memo_.emplace(mask, std::move(value)).first->second;
    }

    const std::vector<std::vector<Poly>>& m_;
    std::map<std::uint64_t, Poly> memo_;
};

template <typename Poly>
Poly pfaffian_checked(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("empty matrix");
    if (n % 2 != 0) throw std::invalid_argument("Pfaffian needs even size");
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!(m[i][j] + m[j][i]).is_zero())
                throw std::invalid_argument("matrix is not skew-symmetric");
    PfaffianTable<Poly> table(m);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return table.get(all);
}

} // namespace

MultiPoly pfaffian(const std::vector<std::vector<MultiPoly>>& m) {
    return pfaffian_checked(m);
}

UniPoly pfaffian(const std::vector<std::vector<UniPoly>>& m) {
    return pfaffian_checked(m);
}

bool for_each_principal_subset(std::size_t n, std::size_t k,
                               const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (!fn(idx)) return false;
        if (k == 0) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == i - 1 + n - k) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

UniPoly principal_pfaffian_gcd(const std::vector<std::vector<UniPoly>>& m, std::size_t k) {
    const std::size_t n = m.size();
    if (k % 2 != 0) throw std::invalid_argument("rank of a skew form must be even");
    if (k > n) throw std::invalid_argument("minor size exceeds matrix size");
    if (k == 0) return UniPoly::constant(1);
    PfaffianTable<UniPoly> table(m);
    UniPoly g;
    for_each_principal_subset(n, k, [&](const std::vector<std::size_t>& subset) {
        const UniPoly& pf = table.get(subset);
        if (pf.is_zero()) return true;
        g = g.is_zero() ? pf.monic() : gcd(g, pf);
        return g.degree().value_or(0) > 0;
    });
    return g;
}

MultiPoly fundamental_semiinvariant(const LieAlgebra& alg, std::size_t t) {
    const std::size_t n = alg.dim();
    if (t % 2 != 0) throw std::invalid_argument("rank of a skew form must be even");
    if (t == 0) return MultiPoly::constant(n, 1);
    if (t > n) throw std::invalid_argument("rank exceeds dimension");

    const StructureMatrix sm = StructureMatrix::of(alg);
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = sm.at(i, j);

    PfaffianTable<MultiPoly> table(m);
    MultiPoly g(n);
    for_each_principal_subset(n, t, [&](const std::vector<std::size_t>& subset) {
        const MultiPoly& pf = table.get(subset);
        if (pf.is_zero()) return true;
        g = g.is_zero() ? normalize_primitive(pf) : gcd_multivariate(g, pf);
        return !g.is_constant();
    });
    if (g.is_zero())
        throw internal_error("every principal Pfaffian vanishes at the certified rank");
    g = normalize_primitive(g);
    if (g.degree().value_or(0) >= 1 && !is_semiinvariant(alg, g))
        throw internal_error("Pfaffian GCD failed the semi-invariant check");
    return g;
}

MultiPoly fundamental_semiinvariant(const LieAlgebra& alg) {
    return fundamental_semiinvariant(alg, index_certificate(alg).t);
}

SingularCodim singular_codim_flag(const LieAlgebra& alg) {
    SingularCodim out;
    out.p_g = fundamental_semiinvariant(alg);
    out.codim_one = out.p_g.degree().value_or(0) >= 1;
    return out;
}

} // namespace argshift
