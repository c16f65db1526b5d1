#include "argshift/unipoly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace argshift {

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(const Rational& c) {
    UniPoly p;
    p.c_.push_back(c);
    p.trim();
    return p;
}

UniPoly UniPoly::variable() {
    UniPoly p;
    p.c_ = {Rational(0), Rational(1)};
    return p;
}

const Rational& UniPoly::coeff(std::size_t k) const {
    static const Rational zero(0);
    return k < c_.size() ? c_[k] : zero;
}

const Rational& UniPoly::leading_coeff() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    UniPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
}

UniPoly UniPoly::operator*(const Rational& s) const {
    UniPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    UniPoly r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
    r.trim();
    return r;
}

Rational UniPoly::evaluate(const Rational& x) const {
    Rational v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

std::complex<double> UniPoly::evaluate(const std::complex<double>& x) const {
    std::complex<double> v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + to_double(*it);
    return v;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    UniPoly rem = *this;
    UniPoly quot;
    const std::size_t dd = divisor.c_.size() - 1;
    if (rem.c_.size() > dd) quot.c_.assign(rem.c_.size() - dd, Rational(0));
    while (!rem.c_.empty() && rem.c_.size() - 1 >= dd) {
        const std::size_t shift = rem.c_.size() - 1 - dd;
        const Rational q = rem.c_.back() / divisor.c_.back();
        quot.c_[shift] = q;
        for (std::size_t i = 0; i < divisor.c_.size(); ++i)
            rem.c_[shift + i] -= q * divisor.c_[i];
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

std::optional<UniPoly> UniPoly::divide_exact(const UniPoly& divisor) const {
    auto [q, r] = divmod(divisor);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return {};
    return *this * (Rational(1) / c_.back());
}

std::string UniPoly::to_text(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << to_string(c_[k]);
        if (k >= 1) {
            os << " * " << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

UniPoly gcd(const UniPoly& p, const UniPoly& q) {
    UniPoly x = p, y = q;
    while (!y.is_zero()) {
        UniPoly r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

std::vector<std::pair<int, UniPoly>> squarefree_decomposition(const UniPoly& q) {
    if (q.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
    std::vector<std::pair<int, UniPoly>> out;
    if (q.degree() == 0) return out;
    const UniPoly f = q.monic();
    const UniPoly df = f.derivative();
    UniPoly u = gcd(f, df);
    UniPoly w = *f.divide_exact(u);
    UniPoly y = *df.divide_exact(u);
    int k = 1;
    while (true) {
        const UniPoly z = y - w.derivative();
        if (z.is_zero()) {
            if (w.degree().value_or(0) > 0) out.emplace_back(k, w.monic());
            break;
        }
        const UniPoly g = gcd(w, z);
        if (g.degree().value_or(0) > 0) out.emplace_back(k, g);
        w = *w.divide_exact(g);
        y = *z.divide_exact(g);
        ++k;
    }
    return out;
}

UniPoly squarefree_part(const UniPoly& q) {
    UniPoly s = UniPoly::constant(1);
    for (const auto& [mult, f] : squarefree_decomposition(q)) s = s * f;
    return s.monic();
}

namespace {

// Positive divisors of |n|, ascending; root candidates for the
// integer-cleared polynomial. Large n only means a longer candidate list.
std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> small, large;
    Integer a = abs(n);
    for (Integer d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            small.push_back(d);
            if (d * d != a) large.push_back(a / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Splits off all rational roots of a squarefree polynomial, dividing them
// out of q as they are found.
std::vector<Rational> extract_rational_roots(UniPoly& q) {
    std::vector<Rational> roots;
    while (q.degree().value_or(0) >= 1) {
        if (q.coeff(0) == 0) {
            roots.emplace_back(0);
            q = *q.divide_exact(UniPoly::variable());
            continue;
        }
        Integer den_lcm = 1;
        const int d = *q.degree();
        for (int k = 0; k <= d; ++k)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                    q.coeff(static_cast<std::size_t>(k)).get_den().get_mpz_t());
        std::vector<Integer> ic(static_cast<std::size_t>(d) + 1);
        for (int k = 0; k <= d; ++k)
            ic[static_cast<std::size_t>(k)] =
                Rational(q.coeff(static_cast<std::size_t>(k)) * Rational(den_lcm)).get_num();
        // Candidates: +-(divisor of the constant term) / (divisor of the
        // leading coefficient).
        bool found = false;
        for (const Integer& pnum : divisors(ic.front())) {
            for (const Integer& pden : divisors(ic.back())) {
                for (const int sign : {1, -1}) {
                    const Rational cand = make_rational(sign * pnum, pden);
                    if (q.evaluate(cand) == 0) {
                        roots.push_back(cand);
                        q = *q.divide_exact(UniPoly({-cand, Rational(1)}));
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    return roots;
}

std::vector<std::complex<double>> companion_eigenvalues(const UniPoly& q) {
    const int d = q.degree().value_or(0);
    if (d < 1) return {};
    const UniPoly m = q.monic();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
        companion(i, d - 1) = -to_double(m.coeff(static_cast<std::size_t>(i)));
    const Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

// Sum of |coefficient| * |z|^k, the natural scale for a relative residual.
double residual_scale(const UniPoly& q, const std::complex<double>& z) {
    double scale = 0.0, zk = 1.0;
    const double az = std::abs(z);
    const int d = q.degree().value_or(0);
    for (int k = 0; k <= d; ++k) {
        scale += std::abs(to_double(q.coeff(static_cast<std::size_t>(k)))) * zk;
        zk *= az;
    }
    return scale > 0 ? scale : 1.0;
}

} // namespace

std::vector<Root> distinct_roots(const UniPoly& q, const RootOptions& opts) {
    if (q.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    std::vector<Root> out;
    for (const auto& [mult, factor] : squarefree_decomposition(q)) {
        UniPoly rest = factor;
        for (const Rational& r : extract_rational_roots(rest)) {
            Root root;
            root.is_rational = true;
            root.value = r;
            root.numeric = std::complex<double>(to_double(r), 0.0);
            root.multiplicity = mult;
            root.residual = 0.0;
            out.push_back(std::move(root));
        }
        for (const auto& z : companion_eigenvalues(rest)) {
            Root root;
            root.is_rational = false;
            root.numeric = z;
            root.multiplicity = mult;
            root.residual = std::abs(rest.evaluate(z)) / residual_scale(rest, z);
            if (root.residual > opts.residual_tol)
                throw internal_error("root residual exceeds tolerance");
            out.push_back(std::move(root));
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.numeric.real() != b.numeric.real()) return a.numeric.real() < b.numeric.real();
        return a.numeric.imag() < b.numeric.imag();
    });
    return out;
}

} // namespace argshift
