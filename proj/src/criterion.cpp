#include "argshift/criterion.hpp"

#include "argshift/linalg.hpp"
#include "argshift/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace argshift {
namespace {

std::vector<std::complex<double>> to_complex_point(const Eigen::VectorXcd& z) {
    return {z.data(), z.data() + z.size()};
}

Eigen::VectorXcd numeric_of(const RatVec& v) {
    Eigen::VectorXcd z(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) z[static_cast<Eigen::Index>(i)] = to_double(v[i]);
    return z;
}

double point_scale(const MultiPoly& f, const Eigen::VectorXcd& z) {
    double m = 1.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) m = std::max(m, std::abs(z[i]));
    return std::pow(m, std::max(0, f.degree().value_or(0)));
}

/// Bracket of complex vectors through the rational structure constants.
Eigen::VectorXcd bracket_complex(const LieAlgebra& alg, const Eigen::VectorXcd& u,
                                 const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(alg.dim()));
    for (const auto& [key, c] : alg.structure()) {
        auto [i, j, k] = key;
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        const std::complex<double> coeff = to_double(c);
        w[static_cast<Eigen::Index>(k)] += coeff * (u[ii] * v[jj] - u[jj] * v[ii]);
    }
    return w;
}

} // namespace

std::vector<ComponentTag> factor_components(const MultiPoly& p_g) {
    std::vector<ComponentTag> out;
    if (p_g.is_constant()) return out;
    for (const auto& [mult, factor] : squarefree_decomposition(p_g)) {
        if (factor.is_constant()) continue;
        ComponentTag tag;
        tag.index = out.size();
        tag.factor = factor;
        tag.multiplicity = mult;
        out.push_back(std::move(tag));
    }
    return out;
}

std::vector<SingularSample> sample_singular_points(const LieAlgebra& alg, const MultiPoly& p_g,
                                         std::size_t count, std::uint64_t seed,
                                         const IndexCertificate& cert, double tol) {
    std::vector<SingularSample> out;
    const auto comps = factor_components(p_g);
    if (comps.empty() || count == 0) return out;

    const std::size_t n = alg.dim();
    for (const auto& comp : comps) {
        Rng comp_rng = Rng(seed).fork(comp.index + 1);
        const std::size_t budget = 10 * count;
        std::size_t valid = 0;
        for (std::size_t attempt = 0; attempt < budget && valid < count; ++attempt) {
            Rng r = comp_rng.fork(attempt);
            const RatVec base = r.rat_vector(n, 20);
            RatVec dir = r.rat_vector(n, 20);
            if (std::all_of(dir.begin(), dir.end(),
                            [](const Rational& c) { return c == 0; }))
                dir[r.below(n)] = Rational(1);

            const UniPoly u = comp.factor.restrict_to_line(base, dir);
            if (u.degree().value_or(0) < 1) continue;
            std::vector<Root> roots;
            try {
                roots = distinct_roots(u);
            } catch (const internal_error&) {
                continue;
            }
            if (roots.empty()) continue;
            const Root& root = roots[r.below(roots.size())];

            SingularSample s;
            s.component = comp.index;
            if (root.is_rational) {
                RatVec pt(n);
                for (std::size_t i = 0; i < n; ++i) pt[i] = base[i] + root.value * dir[i];

                bool on_other = false;
                for (const auto& other : comps)
                    if (other.index != comp.index && other.factor.evaluate(pt) == 0) {
                        on_other = true;
                        break;
                    }
                if (on_other) continue;

                const RatVec grad = comp.factor.gradient(pt);
                double norm2 = 0.0;
                bool smooth = false;
                for (const auto& gi : grad) {
                    if (gi != 0) smooth = true;
                    norm2 += to_double(gi) * to_double(gi);
                }
                if (!smooth) continue;

                const Subalgebra st = stabilizer(alg, pt);
                s.exact = true;
                s.point = pt;
                s.numeric_point = numeric_of(pt);
                s.gradient_norm = std::sqrt(norm2);
                s.corank = st.basis().size();
                s.stab_class = classify_stabilizer(st.induced());
            } else {
                Eigen::VectorXcd pt(static_cast<Eigen::Index>(n));
                for (std::size_t i = 0; i < n; ++i)
                    pt[static_cast<Eigen::Index>(i)] =
                        to_double(base[i]) + root.numeric * to_double(dir[i]);
                const auto ptv = to_complex_point(pt);

                bool on_other = false;
                for (const auto& other : comps)
                    if (other.index != comp.index &&
                        std::abs(other.factor.evaluate(ptv)) <=
                            tol * point_scale(other.factor, pt)) {
                        on_other = true;
                        break;
                    }
                if (on_other) continue;

                double norm2 = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const std::complex<double> gj =
                        comp.factor.partial_derivative(j).evaluate(ptv);
                    norm2 += std::norm(gj);
                }
                const double gnorm = std::sqrt(norm2);
                if (gnorm <= 1e-8 * point_scale(comp.factor, pt)) continue;

                const NumericStabilizer ns = classify_stabilizer_numeric(alg, pt, tol);
                s.exact = false;
                s.numeric_point = pt;
                s.gradient_norm = gnorm;
                s.corank = ns.dim;
                s.stab_class = ns.cls;
            }
            s.subregular = (s.corank == cert.index + 2);
            out.push_back(std::move(s));
            ++valid;
        }
        if (valid == 0)
            throw no_roots_found("no usable point found on component " +
                                 comp.factor.to_text() + " within the retry budget");
    }
    return out;
}

CompletenessVerdict decide_completeness(const LieAlgebra& alg, const ShiftPoint& a,
                                std::size_t samples_per_component,
                                std::uint64_t seed, double tol) {
    CompletenessVerdict v;
    IndexCertificate cert;
    cert.t = a.t;
    cert.index = alg.dim() - a.t;

    const MultiPoly p_g = fundamental_semiinvariant(alg, a.t);
    const GeneratorSet ext = extended_generators(alg, a);
    const DirectCompleteness dc =
        completeness_direct(alg, ext, cert, 20, seed ^ 0x9e3779b97f4a7c15ULL);
    v.direct_complete = dc.complete;
    v.trdeg = dc.trdeg;
    v.b_g = dc.b_g;

    if (p_g.is_constant()) {
        v.codim_at_least_two = true;
        v.criterion_complete = true;
        v.b2_witness_per_component = true;
    } else {
        const auto samples = sample_singular_points(alg, p_g, samples_per_component, seed, cert, tol);
        const auto comps = factor_components(p_g);
        bool all_ok = true;
        bool witnessed = true;
        for (const auto& comp : comps) {
            ComponentVerdict cv;
            cv.component = comp.index;
            cv.factor_text = comp.factor.to_text();
            std::map<StabilizerClass, std::size_t> hist;
            std::size_t good = 0;
            for (const auto& s : samples) {
                if (s.component != comp.index) continue;
                ++cv.sample_count;
                ++hist[s.stab_class];
                if (s.subregular) ++cv.subregular_count;
                if (s.subregular && s.stab_class == StabilizerClass::B2PlusAbelian) ++good;
            }
            if (!hist.empty())
                cv.dominant_class =
                    std::max_element(hist.begin(), hist.end(), [](const auto& l, const auto& r) {
                        return l.second < r.second;
                    })->first;
            cv.b2_fraction =
                cv.sample_count ? static_cast<double>(good) / static_cast<double>(cv.sample_count)
                                : 0.0;
            cv.mixed_classes = hist.size() > 1;
            cv.all_subregular_b2 = cv.sample_count > 0 && good == cv.sample_count;
            cv.low_confidence = cv.subregular_count < 5;
            all_ok = all_ok && cv.all_subregular_b2;
            witnessed = witnessed && good > 0;
            v.low_confidence = v.low_confidence || cv.low_confidence;
            v.per_component.push_back(std::move(cv));
        }
        v.criterion_complete = all_ok;
        v.b2_witness_per_component = witnessed;
    }
    v.agreement = (v.criterion_complete == v.direct_complete);
    return v;
}

DifferentialReport verify_lambda_differentials(const LieAlgebra& alg, const ShiftPoint& a,
                                               const RatVec& x, double tol) {
    DifferentialReport rep;
    const std::size_t n = alg.dim();
    if (x.size() != n) throw std::invalid_argument("point dimension mismatch");

    const MultiPoly p_g = fundamental_semiinvariant(alg, a.t);
    if (p_g.is_constant()) {
        rep.not_nice_reason = "the singular set has no codimension-one part";
        return rep;
    }
    const MultiPoly p_sf = squarefree_part(p_g);
    const std::size_t d = static_cast<std::size_t>(p_sf.degree().value_or(0));
    rep.expected_roots = d;

    RatVec neg_a(n);
    for (std::size_t i = 0; i < n; ++i) neg_a[i] = -a.a[i];

    const UniPoly q = p_sf.restrict_to_line(x, neg_a);
    if (q.degree().value_or(-1) != static_cast<int>(d)) {
        rep.not_nice_reason = "the line drops degree against the squarefree part";
        return rep;
    }
    if (squarefree_part(q).degree() != q.degree()) {
        rep.not_nice_reason = "repeated roots along the line";
        return rep;
    }

    const auto sm = StructureMatrix::of(alg);
    const UniPoly g = principal_pfaffian_gcd(sm.restrict_to_line(x, neg_a), a.t);
    if (g.is_zero())
        throw internal_error("rank drops along the whole line through a regular direction");
    if (!(squarefree_part(g) == q.monic())) {
        rep.not_nice_reason = "the line meets singular points outside the hypersurface part";
        return rep;
    }
    rep.nice = true;

    const auto roots = distinct_roots(q);
    rep.lambdas = roots;
    rep.exact = std::all_of(roots.begin(), roots.end(),
                            [](const Root& r) { return r.is_rational; });

    const UniPoly qprime = q.derivative();
    std::vector<MultiPoly> grads;
    grads.reserve(n);
    for (std::size_t j = 0; j < n; ++j) grads.push_back(p_sf.partial_derivative(j));

    bool member = true;
    bool fund = true;
    std::vector<RatVec> exact_rows;
    Eigen::MatrixXcd numeric_rows(static_cast<Eigen::Index>(roots.size()),
                                  static_cast<Eigen::Index>(n));

    auto track = [&rep](double res) { rep.max_residual = std::max(rep.max_residual, res); };

    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Root& root = roots[i];
        if (root.is_rational) {
            RatVec y(n);
            for (std::size_t j = 0; j < n; ++j) y[j] = x[j] - root.value * a.a[j];
            const Rational qp = qprime.evaluate(root.value);

            RatVec dl(n);
            for (std::size_t j = 0; j < n; ++j) dl[j] = -grads[j].evaluate(y) / qp;

            const RatMatrix ay = structure_matrix_at(alg, y);
            const RatVec img = ay.apply(dl);
            member = member && std::all_of(img.begin(), img.end(),
                                           [](const Rational& c) { return c == 0; });

            const Subalgebra st = stabilizer(alg, y);
            const auto& basis = st.basis();
            for (std::size_t p = 0; p < basis.size() && fund; ++p)
                for (std::size_t s = p + 1; s < basis.size() && fund; ++s) {
                    const RatVec w = alg.bracket(basis[p], basis[s]);
                    Rational c(0);
                    for (std::size_t k = 0; k < n; ++k) c += a.a[k] * w[k];
                    for (std::size_t k = 0; k < n; ++k)
                        if (w[k] != c * dl[k]) {
                            fund = false;
                            break;
                        }
                }
            for (std::size_t j = 0; j < n; ++j)
                numeric_rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    to_double(dl[j]);
            exact_rows.push_back(std::move(dl));
        } else {
            Eigen::VectorXcd y(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j)
                y[static_cast<Eigen::Index>(j)] =
                    to_double(x[j]) - root.numeric * to_double(a.a[j]);
            const auto yv = to_complex_point(y);
            const std::complex<double> qp = qprime.evaluate(root.numeric);

            Eigen::VectorXcd dl(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j)
                dl[static_cast<Eigen::Index>(j)] = -grads[j].evaluate(yv) / qp;

            const Eigen::MatrixXcd ay = structure_matrix_at(alg, y);
            const double scale = std::max(1.0, ay.norm() * dl.norm());
            const double res = (ay * dl).norm() / scale;
            track(res);
            member = member && res < tol;

            const Eigen::MatrixXcd kernel = numeric_kernel(ay, 1e-9);
            for (Eigen::Index p = 0; p < kernel.cols(); ++p)
                for (Eigen::Index s = p + 1; s < kernel.cols(); ++s) {
                    const Eigen::VectorXcd w =
                        bracket_complex(alg, kernel.col(p), kernel.col(s));
                    std::complex<double> c(0.0);
                    for (std::size_t k = 0; k < n; ++k)
                        c += to_double(a.a[k]) * w[static_cast<Eigen::Index>(k)];
                    const double fres =
                        (w - c * dl).norm() / std::max(1.0, w.norm());
                    track(fres);
                    fund = fund && fres < tol;
                }
            numeric_rows.row(static_cast<Eigen::Index>(i)) = dl.transpose();
        }
    }
    rep.kernel_membership = member;
    rep.fundamental_identity = fund;
    if (rep.exact) rep.differentials = exact_rows;
    rep.numeric_differentials = numeric_rows;

    const auto shifts = shift_coefficients(p_g, a.a);
    std::vector<RatVec> shift_rows;
    for (std::size_t j = 1; j < shifts.size(); ++j)
        shift_rows.push_back(shifts[j].gradient(x));

    if (rep.exact) {
        rep.span_matches_shifts = same_row_space(RatMatrix::from_rows(exact_rows),
                                                 RatMatrix::from_rows(shift_rows));
    } else {
        Eigen::MatrixXcd sr(static_cast<Eigen::Index>(shift_rows.size()),
                            static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < shift_rows.size(); ++j)
            for (std::size_t k = 0; k < n; ++k)
                sr(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                    to_double(shift_rows[j][k]);
        Eigen::MatrixXcd stacked(numeric_rows.rows() + sr.rows(), sr.cols());
        stacked << numeric_rows, sr;
        const std::size_t ra = numeric_rank(numeric_rows, 1e-9);
        const std::size_t rb = numeric_rank(sr, 1e-9);
        const std::size_t rs = numeric_rank(stacked, 1e-9);
        rep.span_matches_shifts = (ra == rb) && (rb == rs);
    }
    return rep;
}

} // namespace argshift
