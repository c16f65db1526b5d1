#include "argshift/liealg.hpp"

#include "argshift/poisson.hpp"

#include <algorithm>
#include <sstream>

namespace argshift {

namespace {

RatVec basis_vector(std::size_t n, std::size_t i) {
    RatVec v(n, Rational(0));
    v[i] = 1;
    return v;
}

bool is_zero_vec(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

} // namespace

LieAlgebra LieAlgebra::create(std::size_t dim, StructureMap structure, std::string name) {
    for (auto it = structure.begin(); it != structure.end();) {
        const auto& [i, j, k] = it->first;
        if (i >= j || j >= dim || k >= dim)
            throw validation_error(validation_error::Kind::Structure,
                                   "structure constant index out of range",
                                   {i + 1, j + 1, k + 1});
        it = it->second == 0 ? structure.erase(it) : std::next(it);
    }
    LieAlgebra alg;
    alg.dim_ = dim;
    alg.structure_ = std::move(structure);
    alg.name_ = std::move(name);

    // Jacobi: [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] = 0.
    for (std::size_t i = 0; i < dim; ++i) {
        const RatVec ei = basis_vector(dim, i);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const RatVec ej = basis_vector(dim, j);
            for (std::size_t l = j + 1; l < dim; ++l) {
                const RatVec el = basis_vector(dim, l);
                const RatVec s1 = alg.bracket(alg.bracket(ei, ej), el);
                const RatVec s2 = alg.bracket(alg.bracket(ej, el), ei);
                const RatVec s3 = alg.bracket(alg.bracket(el, ei), ej);
                for (std::size_t k = 0; k < dim; ++k) {
                    if (s1[k] + s2[k] + s3[k] != 0) {
                        std::ostringstream os;
                        os << "Jacobi identity fails at (i, j, l, k) = (" << i + 1 << ", "
                           << j + 1 << ", " << l + 1 << ", " << k + 1 << ")";
                        throw validation_error(validation_error::Kind::Jacobi, os.str(),
                                               {i + 1, j + 1, l + 1, k + 1});
                    }
                }
            }
        }
    }
    return alg;
}

LieAlgebra LieAlgebra::with_invariants(std::vector<MultiPoly> invariants) const {
    LieAlgebra alg = *this;
    for (std::size_t idx = 0; idx < invariants.size(); ++idx) {
        const MultiPoly& f = invariants[idx];
        if (f.num_vars() != dim_)
            throw validation_error(validation_error::Kind::Invariant,
                                   "invariant has wrong variable count", {idx + 1});
        for (std::size_t i = 0; i < dim_; ++i) {
            const MultiPoly b =
                lie_poisson_bracket(alg, f, MultiPoly::variable(dim_, i));
            if (!b.is_zero()) {
                std::ostringstream os;
                os << "polynomial #" << idx + 1 << " is not invariant: bracket with x"
                   << i + 1 << " is " << b.to_text();
                throw validation_error(validation_error::Kind::Invariant, os.str(),
                                       {idx + 1, i + 1});
            }
        }
    }
    alg.invariants_ = std::move(invariants);
    return alg;
}

Rational LieAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j) return 0;
    const bool flip = i > j;
    if (flip) std::swap(i, j);
    const auto it = structure_.find({i, j, k});
    if (it == structure_.end()) return 0;
    return flip ? -it->second : it->second;
}

RatVec LieAlgebra::bracket(const RatVec& xi, const RatVec& eta) const {
    if (xi.size() != dim_ || eta.size() != dim_)
        throw std::invalid_argument("vector length mismatch");
    RatVec out(dim_, Rational(0));
    for (const auto& [key, c] : structure_) {
        const auto& [i, j, k] = key;
        const Rational coeff = xi[i] * eta[j] - xi[j] * eta[i];
        if (coeff != 0) out[k] += c * coeff;
    }
    return out;
}

Subalgebra Subalgebra::create(const LieAlgebra& parent, std::vector<RatVec> basis) {
    const std::size_t n = parent.dim();
    for (const auto& v : basis)
        if (v.size() != n)
            throw validation_error(validation_error::Kind::Basis,
                                   "basis vector has wrong length");
    const RatMatrix b = RatMatrix::from_rows(basis);
    const std::size_t k = basis.size();
    if (rank(b) != k)
        throw validation_error(validation_error::Kind::Basis,
                               "basis vectors are linearly dependent");

    // Closure: expand every [b_p, b_q] in the basis; failure to expand means
    // the span is not a subalgebra. The expansion coefficients are the
    // induced structure constants.
    const RatMatrix bt = b.transpose();
    LieAlgebra::StructureMap induced;
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = p + 1; q < k; ++q) {
            const RatVec w = parent.bracket(basis[p], basis[q]);
            const auto coords = solve(bt, w);
            if (!coords)
                throw validation_error(validation_error::Kind::Basis,
                                       "span is not closed under the bracket",
                                       {p + 1, q + 1});
            for (std::size_t r = 0; r < k; ++r)
                if ((*coords)[r] != 0) induced[{p, q, r}] = (*coords)[r];
        }
    }
    return Subalgebra(std::move(basis), LieAlgebra::create(k, std::move(induced)));
}

std::string to_string(StabilizerClass c) {
    switch (c) {
        case StabilizerClass::Abelian: return "abelian";
        case StabilizerClass::HeisenbergPlusAbelian: return "heisenberg_plus_abelian";
        case StabilizerClass::B2PlusAbelian: return "b2_plus_abelian";
        case StabilizerClass::Other: return "other";
    }
    return "other";
}

namespace {

LieAlgebra make_abelian(std::size_t n) {
    LieAlgebra alg = LieAlgebra::create(n, {}, "abelian(" + std::to_string(n) + ")");
    std::vector<MultiPoly> inv;
    inv.reserve(n);
    for (std::size_t i = 0; i < n; ++i) inv.push_back(MultiPoly::variable(n, i));
    return alg.with_invariants(std::move(inv));
}

LieAlgebra make_b2() {
    // [e1, e2] = e2.
    return LieAlgebra::create(2, {{{0, 1, 1}, Rational(1)}}, "b2");
}

LieAlgebra make_heisenberg(std::size_t n) {
    // Basis p_1, q_1, ..., p_n, q_n, z with [p_i, q_i] = z.
    const std::size_t dim = 2 * n + 1;
    LieAlgebra::StructureMap s;
    for (std::size_t i = 0; i < n; ++i) s[{2 * i, 2 * i + 1, dim - 1}] = 1;
    LieAlgebra alg = LieAlgebra::create(dim, std::move(s),
                                        "heisenberg(" + std::to_string(n) + ")");
    return alg.with_invariants({MultiPoly::variable(dim, dim - 1)});
}

LieAlgebra make_sl2() {
    // Basis (e, h, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h.
    LieAlgebra::StructureMap s;
    s[{0, 1, 0}] = -2; // [e, h] = -2e
    s[{0, 2, 1}] = 1;  // [e, f] = h
    s[{1, 2, 2}] = -2; // [h, f] = -2f
    LieAlgebra alg = LieAlgebra::create(3, std::move(s), "sl2");
    // Casimir x_h^2 + 4 x_e x_f.
    const MultiPoly xe = MultiPoly::variable(3, 0);
    const MultiPoly xh = MultiPoly::variable(3, 1);
    const MultiPoly xf = MultiPoly::variable(3, 2);
    return alg.with_invariants({xh * xh + xe * xf * Rational(4)});
}

LieAlgebra make_so3() {
    // [e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2.
    LieAlgebra::StructureMap s;
    s[{0, 1, 2}] = 1;
    s[{1, 2, 0}] = 1;
    s[{0, 2, 1}] = -1;
    LieAlgebra alg = LieAlgebra::create(3, std::move(s), "so3");
    MultiPoly sq(3);
    for (std::size_t i = 0; i < 3; ++i) {
        const MultiPoly xi = MultiPoly::variable(3, i);
        sq = sq + xi * xi;
    }
    return alg.with_invariants({sq});
}

LieAlgebra make_gl2() {
    // Basis E11, E12, E21, E22.
    LieAlgebra::StructureMap s;
    s[{0, 1, 1}] = 1;  // [E11, E12] = E12
    s[{0, 2, 2}] = -1; // [E11, E21] = -E21
    s[{1, 2, 0}] = 1;  // [E12, E21] = E11 - E22
    s[{1, 2, 3}] = -1;
    s[{1, 3, 1}] = 1;  // [E12, E22] = E12
    s[{2, 3, 2}] = -1; // [E21, E22] = -E21
    LieAlgebra alg = LieAlgebra::create(4, std::move(s), "gl2");
    const MultiPoly x1 = MultiPoly::variable(4, 0);
    const MultiPoly x2 = MultiPoly::variable(4, 1);
    const MultiPoly x3 = MultiPoly::variable(4, 2);
    const MultiPoly x4 = MultiPoly::variable(4, 3);
    return alg.with_invariants({x1 + x4, x1 * x4 - x2 * x3});
}

LieAlgebra catalog_single(const std::string& name) {
    if (name == "b2") return make_b2();
    if (name == "sl2") return make_sl2();
    if (name == "so3") return make_so3();
    if (name == "gl2") return make_gl2();
    const auto open = name.find('(');
    if (open != std::string::npos && name.back() == ')') {
        const std::string head = name.substr(0, open);
        const std::string arg = name.substr(open + 1, name.size() - open - 2);
        std::size_t pos = 0;
        unsigned long n = 0;
        try {
            n = std::stoul(arg, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == arg.size() && pos > 0) {
            if (head == "abelian") return make_abelian(n);
            if (head == "heisenberg") {
                if (n == 0) throw parse_error("heisenberg(n) needs n >= 1");
                return make_heisenberg(n);
            }
        }
    }
    throw parse_error("unknown catalog algebra '" + name + "'");
}

} // namespace

LieAlgebra catalog(const std::string& name) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto plus = name.find('+', start);
        parts.push_back(name.substr(start, plus - start));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    LieAlgebra alg = catalog_single(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i)
        alg = direct_sum(alg, catalog_single(parts[i]));
    return alg;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    LieAlgebra::StructureMap s = a.structure();
    for (const auto& [key, c] : b.structure()) {
        const auto& [i, j, k] = key;
        s[{i + na, j + na, k + na}] = c;
    }
    std::string name;
    if (!a.name().empty() && !b.name().empty()) name = a.name() + "+" + b.name();
    LieAlgebra sum = LieAlgebra::create(na + nb, std::move(s), std::move(name));

    // Lift the invariants of both summands to the sum's coordinates.
    std::vector<MultiPoly> inv;
    for (const MultiPoly& f : a.invariants()) {
        MultiPoly lifted(na + nb);
        for (const auto& [m, c] : f.terms()) {
            Monomial expo(na + nb, 0);
            std::copy(m.begin(), m.end(), expo.begin());
            lifted.add_term(std::move(expo), c);
        }
        inv.push_back(std::move(lifted));
    }
    for (const MultiPoly& f : b.invariants()) {
        MultiPoly lifted(na + nb);
        for (const auto& [m, c] : f.terms()) {
            Monomial expo(na + nb, 0);
            std::copy(m.begin(), m.end(), expo.begin() + static_cast<long>(na));
            lifted.add_term(std::move(expo), c);
        }
        inv.push_back(std::move(lifted));
    }
    return sum.with_invariants(std::move(inv));
}

RatMatrix structure_matrix_at(const LieAlgebra& alg, const RatVec& x) {
    const std::size_t n = alg.dim();
    if (x.size() != n) throw std::invalid_argument("point length mismatch");
    RatMatrix m(n, n);
    for (const auto& [key, c] : alg.structure()) {
        const auto& [i, j, k] = key;
        const Rational v = c * x[k];
        m.at(i, j) += v;
        m.at(j, i) -= v;
    }
    return m;
}

Eigen::MatrixXcd structure_matrix_at(const LieAlgebra& alg, const Eigen::VectorXcd& x) {
    const std::size_t n = alg.dim();
    if (static_cast<std::size_t>(x.size()) != n)
        throw std::invalid_argument("point length mismatch");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [key, c] : alg.structure()) {
        const auto& [i, j, k] = key;
        const std::complex<double> v = to_double(c) * x(static_cast<Eigen::Index>(k));
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += v;
        m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) -= v;
    }
    return m;
}

Subalgebra stabilizer(const LieAlgebra& alg, const RatVec& x) {
    return Subalgebra::create(alg, kernel_basis(structure_matrix_at(alg, x)));
}

namespace {

// Rows spanning the derived algebra [h, h] of a structure table.
std::vector<RatVec> derived_spanning_rows(const LieAlgebra& h) {
    std::vector<RatVec> rows;
    for (const auto& [key, c] : h.structure()) {
        const auto& [i, j, k] = key;
        (void)c;
        RatVec v(h.dim(), Rational(0));
        bool nonzero = false;
        for (std::size_t l = 0; l < h.dim(); ++l) {
            v[l] = h.structure_constant(i, j, l);
            if (v[l] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(v));
    }
    return rows;
}

// v is central iff [v, e_j] = 0 for every basis vector.
bool is_central(const LieAlgebra& h, const RatVec& v) {
    for (std::size_t j = 0; j < h.dim(); ++j) {
        RatVec ej(h.dim(), Rational(0));
        ej[j] = 1;
        if (!is_zero_vec(h.bracket(v, ej))) return false;
    }
    return true;
}

} // namespace

StabilizerClass classify_stabilizer(const LieAlgebra& h) {
    const auto rows = derived_spanning_rows(h);
    if (rows.empty()) return StabilizerClass::Abelian;
    const RatMatrix derived = row_space_canonical(RatMatrix::from_rows(rows));
    if (derived.rows() >= 2) return StabilizerClass::Other;
    return is_central(h, derived.row(0)) ? StabilizerClass::HeisenbergPlusAbelian
                                         : StabilizerClass::B2PlusAbelian;
}

NumericStabilizer classify_stabilizer_numeric(const LieAlgebra& alg,
                                              const Eigen::VectorXcd& x,
                                              double rank_tol, double bracket_tol) {
    const std::size_t n = alg.dim();
    const Eigen::MatrixXcd ax = structure_matrix_at(alg, x);
    const Eigen::MatrixXcd kernel = numeric_kernel(ax, rank_tol);
    const std::size_t k = static_cast<std::size_t>(kernel.cols());
    NumericStabilizer out;
    out.dim = k;
    if (k == 0) {
        out.cls = StabilizerClass::Abelian;
        return out;
    }

    const auto bracket_of = [&](const Eigen::VectorXcd& u,
                                const Eigen::VectorXcd& v) {
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
        for (const auto& [key, c] : alg.structure()) {
            const auto& [i, j, l] = key;
            w(static_cast<Eigen::Index>(l)) +=
                to_double(c) * (u(static_cast<Eigen::Index>(i)) * v(static_cast<Eigen::Index>(j)) -
                                u(static_cast<Eigen::Index>(j)) * v(static_cast<Eigen::Index>(i)));
        }
        return w;
    };

    // Derived algebra of the stabilizer: span of pairwise kernel brackets.
    std::vector<Eigen::VectorXcd> derived;
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = p + 1; q < k; ++q)
            derived.push_back(bracket_of(kernel.col(static_cast<Eigen::Index>(p)),
                                         kernel.col(static_cast<Eigen::Index>(q))));
    Eigen::MatrixXcd dmat(derived.size(), n);
    for (std::size_t r = 0; r < derived.size(); ++r) dmat.row(static_cast<Eigen::Index>(r)) = derived[r];
    const std::size_t ddim = derived.empty() ? 0 : numeric_rank(dmat, bracket_tol);
    if (ddim == 0) {
        out.cls = StabilizerClass::Abelian;
        return out;
    }
    if (ddim >= 2) {
        out.cls = StabilizerClass::Other;
        return out;
    }

    // One derived direction: pick the largest bracket vector and test
    // whether it is central in the stabilizer.
    Eigen::VectorXcd dvec;
    double best = -1.0;
    for (const auto& w : derived) {
        if (w.norm() > best) {
            best = w.norm();
            dvec = w;
        }
    }
    dvec /= dvec.norm();
    double central_residual = 0.0;
    for (std::size_t p = 0; p < k; ++p)
        central_residual = std::max(
            central_residual,
            bracket_of(dvec, kernel.col(static_cast<Eigen::Index>(p))).norm());
    out.cls = central_residual < bracket_tol ? StabilizerClass::HeisenbergPlusAbelian
                                             : StabilizerClass::B2PlusAbelian;
    return out;
}

} // namespace argshift
