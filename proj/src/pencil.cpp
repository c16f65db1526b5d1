#include "argshift/pencil.hpp"

#include "argshift/singular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace argshift {

namespace {

RatMatrix kernel_matrix(const RatMatrix& m) {
    const auto rows = kernel_basis(m);
    if (rows.empty()) return RatMatrix(0, m.cols());
    return RatMatrix::from_rows(rows);
}

Eigen::MatrixXcd to_complex(const RatMatrix& m) {
    return m.to_double().cast<std::complex<double>>();
}

// Rows of a and columns of b describe two spans of the same ambient space;
// true when they agree up to tolerance.
bool numeric_same_span(const RatMatrix& a, const Eigen::MatrixXcd& b_cols, double tol) {
    if (a.rows() != static_cast<std::size_t>(b_cols.cols())) return false;
    if (a.rows() == 0) return true;
    Eigen::MatrixXcd stacked(a.rows() + static_cast<std::size_t>(b_cols.cols()), a.cols());
    stacked.topRows(static_cast<Eigen::Index>(a.rows())) = to_complex(a);
    stacked.bottomRows(b_cols.cols()) = b_cols.transpose();
    return numeric_rank(stacked, tol) == a.rows();
}

} // namespace

FormPair FormPair::create(RatMatrix p0, RatMatrix pinf) {
    if (p0.rows() != p0.cols() || pinf.rows() != pinf.cols() || p0.rows() != pinf.rows())
        throw std::invalid_argument("forms must be square matrices of equal size");
    if (!p0.is_skew_symmetric() || !pinf.is_skew_symmetric())
        throw std::invalid_argument("forms must be skew-symmetric");
    return FormPair(std::move(p0), std::move(pinf));
}

RatMatrix FormPair::at(const Rational& lambda) const {
    return p0_ - pinf_ * lambda;
}

Eigen::MatrixXcd FormPair::at(const std::complex<double>& lambda) const {
    return to_complex(p0_) - lambda * to_complex(pinf_);
}

std::size_t min_corank(const FormPair& pair, std::size_t probes, std::uint64_t seed,
                       std::size_t stability_window) {
    const std::size_t n = pair.dim();
    std::size_t best = n - rank(pair.pinf());
    Rng rng(seed);
    std::size_t trials = 0, unchanged = 0;
    while (trials < probes || unchanged < stability_window) {
        const long height = trials < 8 ? 10 : trials < 16 ? 100 : 1000;
        const std::size_t c = n - rank(pair.at(rng.rat(height)));
        ++trials;
        if (c < best) {
            best = c;
            unchanged = 0;
        } else {
            ++unchanged;
        }
        if (best == 0 && trials >= probes) break;
    }
    return best;
}

std::vector<SpectrumEntry> spectrum(const FormPair& pair, std::size_t r,
                                    const std::optional<UniPoly>& hint, double tol) {
    const std::size_t n = pair.dim();
    std::vector<SpectrumEntry> out;
    if (n == r) return out; // the zero pencil has no exceptional values

    UniPoly g;
    if (hint && !hint->is_zero()) {
        g = *hint;
    } else {
        // An identically-zero restriction carries no candidate information,
        // so fall back to the Pfaffian locus of the lambda-matrix.
        std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] = UniPoly({pair.p0().at(i, j), -pair.pinf().at(i, j)});
        g = principal_pfaffian_gcd(m, n - r);
        if (g.is_zero())
            throw internal_error("generic pencil rank is below the certified value");
    }
    if (g.degree().value_or(0) == 0) return out;

    for (const Root& root : distinct_roots(g)) {
        std::size_t corank;
        if (root.is_rational)
            corank = n - rank(pair.at(root.value));
        else
            corank = n - numeric_rank(pair.at(root.numeric), tol);
        if (corank > r) out.push_back(SpectrumEntry{root, corank});
    }
    return out;
}

RatMatrix core_subspace(const FormPair& pair, std::size_t r, std::uint64_t seed,
                        std::size_t stability_window) {
    const std::size_t n = pair.dim();
    RatMatrix basis(0, n);
    std::size_t dim = 0;
    if (n - rank(pair.pinf()) == r) {
        basis = row_space_canonical(kernel_matrix(pair.pinf()));
        dim = basis.rows();
    }
    Rng rng(seed);
    std::size_t accepted = 0, unchanged = 0, guard = 0;
    while (unchanged < stability_window) {
        if (++guard > 10000)
            throw internal_error("no generic pencil parameters found while building the core");
        const long height = accepted < 8 ? 10 : accepted < 16 ? 100 : 1000;
        const RatMatrix p = pair.at(rng.rat(height));
        if (n - rank(p) != r) continue;
        ++accepted;
        const RatMatrix stacked = stack_rows(basis, kernel_matrix(p));
        const std::size_t grown = rank(stacked);
        if (grown > dim) {
            basis = row_space_canonical(stacked);
            dim = grown;
            unchanged = 0;
        } else {
            ++unchanged;
        }
    }
    return basis;
}

RecursionOperator recursion_operator(const FormPair& pair, const RatMatrix& core,
                                     std::size_t r, std::uint64_t seed, double tol,
                                     const RatMatrix* complement_hint) {
    const std::size_t n = pair.dim();
    if (n - rank(pair.pinf()) != r) throw infinity_in_spectrum();

    RecursionOperator out;
    out.core = row_space_canonical(core);
    out.core_perp = row_space_canonical(kernel_matrix(out.core * pair.pinf()));

    // The complement is well-defined because L-perp does not depend on the
    // form used to cut it out; spot-check that against generic parameters.
    Rng rng(seed);
    std::size_t guard = 0;
    for (int done = 0; done < 3;) {
        if (++guard > 10000) throw internal_error("no generic pencil parameters found");
        const RatMatrix p = pair.at(rng.rat(100));
        if (n - rank(p) != r) continue;
        ++done;
        if (!same_row_space(out.core_perp, kernel_matrix(out.core * p)))
            throw internal_error("skew-orthogonal complement of the core varies with lambda");
    }

    const std::size_t quotient_dim = out.core_perp.rows() - out.core.rows();
    if (complement_hint) {
        if (complement_hint->rows() != quotient_dim ||
            !row_space_contains(out.core_perp, *complement_hint) ||
            rank(stack_rows(out.core, *complement_hint)) != out.core_perp.rows())
            throw std::invalid_argument("supplied complement does not span L-perp over the core");
        out.complement = *complement_hint;
    } else {
        RatMatrix chosen(0, n);
        RatMatrix span = out.core;
        std::size_t span_rank = rank(span);
        for (std::size_t i = 0; i < out.core_perp.rows() && chosen.rows() < quotient_dim; ++i) {
            const RatMatrix candidate = RatMatrix::from_rows({out.core_perp.row(i)});
            const RatMatrix trial = stack_rows(span, candidate);
            if (rank(trial) == span_rank + 1) {
                span = trial;
                ++span_rank;
                chosen = stack_rows(chosen, candidate);
            }
        }
        out.complement = chosen;
    }

    const std::size_t k = out.complement.rows();
    const RatMatrix b0 = out.complement * pair.p0() * out.complement.transpose();
    const RatMatrix binf = out.complement * pair.pinf() * out.complement.transpose();
    const auto binv = inverse(binf);
    if (!binv)
        throw internal_error("form at infinity is degenerate on the quotient");
    out.matrix = *binv * b0;
    out.charpoly = characteristic_polynomial(out.matrix);

    if (k > 0) {
        for (const Root& root : distinct_roots(out.charpoly)) {
            EigenData e;
            e.value = root;
            e.algebraic = static_cast<std::size_t>(root.multiplicity);
            if (root.is_rational) {
                const RatMatrix shifted = out.matrix - RatMatrix::identity(k) * root.value;
                e.geometric = k - rank(shifted);
            } else {
                Eigen::MatrixXcd mc = to_complex(out.matrix);
                mc -= root.numeric * Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(k),
                                                                static_cast<Eigen::Index>(k));
                e.geometric = k - numeric_rank(mc, tol);
            }
            out.eigen.push_back(std::move(e));
        }
    }
    out.diagonalizable =
        std::all_of(out.eigen.begin(), out.eigen.end(),
                    [](const EigenData& e) { return e.geometric == e.algebraic; });

    // Independent diagonalizability criterion: the restriction of the form
    // at infinity to each exceptional kernel must have corank exactly r.
    bool kernel_test = true;
    for (const EigenData& e : out.eigen) {
        std::size_t kernel_dim, gram_rank;
        if (e.value.is_rational) {
            const RatMatrix kmat = kernel_matrix(pair.at(e.value.value));
            kernel_dim = kmat.rows();
            gram_rank = rank(kmat * pair.pinf() * kmat.transpose());
        } else {
            const Eigen::MatrixXcd kc = numeric_kernel(pair.at(e.value.numeric), tol);
            kernel_dim = static_cast<std::size_t>(kc.cols());
            const Eigen::MatrixXcd gram = kc.transpose() * to_complex(pair.pinf()) * kc;
            gram_rank = numeric_rank(gram, tol);
        }
        if (kernel_dim - gram_rank != r) {
            kernel_test = false;
            break;
        }
    }
    out.kernel_test_diagonalizable = kernel_test;
    return out;
}

CoreLemmasReport verify_core_lemmas(const FormPair& pair, std::uint64_t seed, double tol) {
    CoreLemmasReport rep;
    const std::size_t n = pair.dim();
    const std::size_t r = min_corank(pair, 5, seed);
    const RatMatrix core = core_subspace(pair, r, seed ^ 0x9E3779B97F4A7C15ull);
    const auto exceptional = spectrum(pair, r, std::nullopt, tol);
    Rng rng(seed ^ 0xC2B2AE3D27D4EB4Full);

    const auto fail = [&rep](const std::string& what) { rep.detail = what; };

    // The core must be isotropic for the whole pencil. By linearity the
    // endpoint forms suffice; a few interior parameters are checked anyway.
    rep.core_isotropic = (core * pair.p0() * core.transpose()).is_zero() &&
                         (core * pair.pinf() * core.transpose()).is_zero();
    for (int s = 0; rep.core_isotropic && s < 5; ++s)
        rep.core_isotropic = (core * pair.at(rng.rat(50)) * core.transpose()).is_zero();
    if (!rep.core_isotropic) fail("core is not isotropic");

    // Reference skew-orthogonal complement from a generic parameter.
    RatMatrix perp(0, n);
    std::size_t guard = 0;
    for (;;) {
        if (++guard > 10000) throw internal_error("no generic pencil parameters found");
        const Rational lam = rng.rat(100);
        const RatMatrix p = pair.at(lam);
        if (n - rank(p) != r) continue;
        perp = row_space_canonical(kernel_matrix(core * p));
        break;
    }

    // The complement must be the same for every parameter, exceptional,
    // generic, and infinite alike.
    rep.perp_independent = same_row_space(perp, kernel_matrix(core * pair.pinf()));
    for (int s = 0; rep.perp_independent && s < 5; ++s)
        rep.perp_independent = same_row_space(perp, kernel_matrix(core * pair.at(rng.rat(100))));
    for (const auto& entry : exceptional) {
        if (!rep.perp_independent) break;
        if (entry.lambda.is_rational) {
            rep.perp_independent =
                same_row_space(perp, kernel_matrix(core * pair.at(entry.lambda.value)));
        } else {
            const Eigen::MatrixXcd constraints = to_complex(core) * pair.at(entry.lambda.numeric);
            rep.perp_independent = numeric_same_span(perp, numeric_kernel(constraints, tol), tol);
        }
    }
    if (!rep.perp_independent) fail("skew-orthogonal complement varies with lambda");

    // Off the spectrum the pencil must be non-degenerate on the quotient.
    RatMatrix complement(0, n);
    {
        RatMatrix span = core;
        for (std::size_t i = 0; i < perp.rows(); ++i) {
            const RatMatrix candidate = RatMatrix::from_rows({perp.row(i)});
            const RatMatrix trial = stack_rows(span, candidate);
            if (rank(trial) == rank(span) + 1) {
                span = trial;
                complement = stack_rows(complement, candidate);
            }
        }
    }
    rep.quotient_nondegenerate = true;
    for (int done = 0, attempts = 0; done < 5; ++attempts) {
        if (attempts > 10000) throw internal_error("no generic pencil parameters found");
        const Rational lam = rng.rat(100);
        const RatMatrix p = pair.at(lam);
        if (n - rank(p) != r) continue;
        ++done;
        const RatMatrix b = complement * p * complement.transpose();
        if (complement.rows() > 0 && det(b) == 0) {
            rep.quotient_nondegenerate = false;
            fail("pencil degenerates on the quotient at a generic parameter");
            break;
        }
    }

    // The remaining checks concern the exceptional kernels.
    rep.exceptional_kernel_meets_core = true;
    rep.kernel_restriction_contains_core = true;
    for (const auto& entry : exceptional) {
        if (entry.lambda.is_rational) {
            const RatMatrix kmat = kernel_matrix(pair.at(entry.lambda.value));
            const RatMatrix meet = intersect_row_spaces(kmat, core);
            if (meet.rows() != r) {
                rep.exceptional_kernel_meets_core = false;
                fail("exceptional kernel meets the core in the wrong dimension");
            }
            const auto contained = [&](const RatMatrix& alpha_form) {
                return (meet * alpha_form * kmat.transpose()).is_zero();
            };
            if (!contained(pair.p0()) || !contained(pair.pinf()) ||
                !contained(pair.at(rng.rat(50)))) {
                rep.kernel_restriction_contains_core = false;
                fail("restricted kernel fails to contain the core intersection");
            }
        } else {
            const Eigen::MatrixXcd kc = numeric_kernel(pair.at(entry.lambda.numeric), tol);
            const std::size_t kdim = static_cast<std::size_t>(kc.cols());
            Eigen::MatrixXcd stacked(kdim + core.rows(), n);
            stacked.topRows(static_cast<Eigen::Index>(kdim)) = kc.transpose();
            stacked.bottomRows(static_cast<Eigen::Index>(core.rows())) = to_complex(core);
            const std::size_t joint = numeric_rank(stacked, tol);
            if (kdim + core.rows() - joint != r) {
                rep.exceptional_kernel_meets_core = false;
                fail("exceptional kernel meets the core in the wrong dimension");
            }
            // Numeric intersection: solutions of K c = L^T d give the meet.
            Eigen::MatrixXcd solver(n, kdim + core.rows());
            solver.leftCols(static_cast<Eigen::Index>(kdim)) = kc;
            solver.rightCols(static_cast<Eigen::Index>(core.rows())) = -to_complex(core).transpose();
            const Eigen::MatrixXcd null = numeric_kernel(solver, tol);
            const Eigen::MatrixXcd meet = kc * null.topRows(static_cast<Eigen::Index>(kdim));
            const auto contained = [&](const RatMatrix& alpha_form) {
                const Eigen::MatrixXcd prod = meet.transpose() * to_complex(alpha_form) * kc;
                return prod.norm() <= tol * (1.0 + to_complex(alpha_form).norm()) *
                                          (1.0 + meet.norm()) * (1.0 + kc.norm());
            };
            if (!contained(pair.p0()) || !contained(pair.pinf())) {
                rep.kernel_restriction_contains_core = false;
                fail("restricted kernel fails to contain the core intersection");
            }
        }
    }
    return rep;
}

IsotropyReport isotropy_check(const FormPair& pair, const RatMatrix& u,
                              std::size_t lambda_samples, std::uint64_t seed) {
    IsotropyReport rep;
    const std::size_t n = pair.dim();
    const RatMatrix uc = row_space_canonical(u);
    Rng rng(seed);

    rep.isotropic = (uc * pair.p0() * uc.transpose()).is_zero() &&
                    (uc * pair.pinf() * uc.transpose()).is_zero();
    for (std::size_t s = 0; rep.isotropic && s < lambda_samples; ++s)
        rep.isotropic = (uc * pair.at(rng.rat(100)) * uc.transpose()).is_zero();
    if (!rep.isotropic) return rep;

    const std::size_t r = min_corank(pair, 5, seed ^ 0xA5A5A5A5ull);
    bool maximal = true;
    std::size_t guard = 0;
    for (int done = 0; done < 3;) {
        if (++guard > 10000) throw internal_error("no generic pencil parameters found");
        const RatMatrix p = pair.at(rng.rat(100));
        if (n - rank(p) != r) continue;
        ++done;
        maximal = maximal && same_row_space(kernel_matrix(uc * p), uc);
    }
    rep.maximal_at_generic = maximal;
    return rep;
}

PencilReport build_pencil_report(const FormPair& pair, const std::optional<UniPoly>& hint,
                                 std::uint64_t seed, double tol) {
    PencilReport report;
    const std::size_t n = pair.dim();
    report.r = min_corank(pair, 5, seed);
    const auto exceptional = spectrum(pair, report.r, hint, tol);
    const RatMatrix core = core_subspace(pair, report.r, seed ^ 0x6A09E667F3BCC909ull);
    report.dim_core = core.rows();
    report.infinity_exceptional = n - rank(pair.pinf()) > report.r;

    std::vector<EigenData> eigen;
    bool have_operator = false;
    if (!report.infinity_exceptional) {
        const RecursionOperator rec =
            recursion_operator(pair, core, report.r, seed ^ 0xBB67AE8584CAA73Bull, tol);
        report.dim_core_perp = rec.core_perp.rows();
        report.diagonalizable = rec.diagonalizable;
        eigen = rec.eigen;
        have_operator = true;
        for (const EigenData& e : rec.eigen)
            report.multiplicities.emplace_back(e.value, e.algebraic);
    } else {
        Rng rng(seed ^ 0x3C6EF372FE94F82Bull);
        std::size_t guard = 0;
        for (;;) {
            if (++guard > 10000) throw internal_error("no generic pencil parameters found");
            const RatMatrix p = pair.at(rng.rat(100));
            if (n - rank(p) != report.r) continue;
            report.dim_core_perp = kernel_matrix(core * p).rows();
            break;
        }
    }
    if ((report.dim_core_perp - report.dim_core) % 2 != 0)
        throw internal_error("quotient dimension is odd");

    for (const auto& entry : exceptional) {
        PencilReport::Entry row;
        row.lambda = entry.lambda;
        row.corank = entry.corank;
        if (have_operator) {
            for (const EigenData& e : eigen) {
                const bool match =
                    (entry.lambda.is_rational && e.value.is_rational)
                        ? entry.lambda.value == e.value.value
                        : std::abs(entry.lambda.numeric - e.value.numeric) <=
                              1e-6 * std::max(1.0, std::abs(entry.lambda.numeric));
                if (match) {
                    row.eigenspace_dim = e.geometric;
                    break;
                }
            }
        }
        report.exceptional.push_back(std::move(row));
    }
    return report;
}

} // namespace argshift
