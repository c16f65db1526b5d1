#include "argshift/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace argshift {

namespace {

unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

} // namespace

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b; // lexicographic on exponent vectors, x1 slot first
}

MultiPoly MultiPoly::constant(std::size_t num_vars, const Rational& c) {
    MultiPoly p(num_vars);
    p.add_term(Monomial(num_vars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::out_of_range("variable index out of range");
    Monomial m(num_vars, 0);
    m[index] = 1;
    return monomial(num_vars, std::move(m), 1);
}

MultiPoly MultiPoly::monomial(std::size_t num_vars, Monomial expo, const Rational& c) {
    if (expo.size() != num_vars) throw std::invalid_argument("exponent vector length mismatch");
    MultiPoly p(num_vars);
    p.add_term(std::move(expo), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational MultiPoly::constant_term() const {
    const auto it = terms_.find(Monomial(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> MultiPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int MultiPoly::degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
    return d;
}

const std::pair<const Monomial, Rational>& MultiPoly::leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return *terms_.rbegin();
}

void MultiPoly::require_same_vars(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable-count mismatch");
}

void MultiPoly::add_term(Monomial expo, const Rational& c) {
    if (expo.size() != nvars_) throw std::invalid_argument("exponent vector length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(expo), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same_vars(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    require_same_vars(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& s) const {
    MultiPoly r(nvars_);
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_vars(o);
    MultiPoly r(nvars_);
    Monomial prod(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) prod[i] = ma[i] + mb[i];
            r.add_term(prod, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(nvars_, 1);
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
    if (var >= nvars_) throw std::out_of_range("variable index out of range");
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        d[var] -= 1;
        r.add_term(std::move(d), c * Rational(static_cast<long>(m[var])));
    }
    return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("point length mismatch");
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
        }
        sum += t;
    }
    return sum;
}

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("point length mismatch");
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) {
        std::complex<double> t = to_double(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
        }
        sum += t;
    }
    return sum;
}

std::vector<Rational> MultiPoly::gradient(std::span<const Rational> point) const {
    std::vector<Rational> g(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) g[i] = partial_derivative(i).evaluate(point);
    return g;
}

UniPoly MultiPoly::restrict_to_line(std::span<const Rational> base,
                                    std::span<const Rational> direction) const {
    if (base.size() != nvars_ || direction.size() != nvars_)
        throw std::invalid_argument("point length mismatch");
    UniPoly result;
    for (const auto& [m, c] : terms_) {
        UniPoly term = UniPoly::constant(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            const UniPoly lin({base[i], direction[i]});
            for (unsigned e = 0; e < m[i]; ++e) term = term * lin;
        }
        result = result + term;
    }
    return result;
}

std::vector<MultiPoly> shift_coefficients(const MultiPoly& f, std::span<const Rational> a) {
    const std::size_t n = f.num_vars();
    if (a.size() != n) throw std::invalid_argument("shift point length mismatch");
    const int deg = f.degree().value_or(0);
    std::vector<MultiPoly> out(static_cast<std::size_t>(deg) + 1, MultiPoly(n));

    // Per term: prod_i (a_i + t x_i)^{e_i}, expanded one variable at a time.
    // coeffs[k] holds the x-polynomial multiplying t^k.
    for (const auto& [m, c] : f.terms()) {
        std::vector<MultiPoly> coeffs{MultiPoly::constant(n, c)};
        for (std::size_t i = 0; i < n; ++i) {
            for (unsigned e = 0; e < m[i]; ++e) {
                std::vector<MultiPoly> next(coeffs.size() + 1, MultiPoly(n));
                const MultiPoly xi = MultiPoly::variable(n, i);
                for (std::size_t k = 0; k < coeffs.size(); ++k) {
                    next[k] = next[k] + coeffs[k] * a[i];
                    next[k + 1] = next[k + 1] + coeffs[k] * xi;
                }
                coeffs = std::move(next);
            }
        }
        for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = out[k] + coeffs[k];
    }
    return out;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q) {
    if (q.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (p.num_vars() != q.num_vars()) throw std::invalid_argument("variable-count mismatch");
    const std::size_t n = p.num_vars();
    MultiPoly rem = p;
    MultiPoly quot(n);
    const auto& [qm, qc] = q.leading_term();
    // Leading-term division: if q | p each partial remainder stays divisible,
    // so any non-divisible leading term proves q does not divide p.
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading_term();
        Monomial diff(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rm[i] < qm[i]) return std::nullopt;
            diff[i] = rm[i] - qm[i];
        }
        const MultiPoly factor = MultiPoly::monomial(n, std::move(diff), rc / qc);
        quot = quot + factor;
        rem = rem - factor * q;
    }
    return quot;
}

MultiPoly normalize_primitive(const MultiPoly& p) {
    if (p.is_zero()) return p;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational scale = make_rational(den_lcm, num_gcd);
    if (p.leading_term().second < 0) scale = -scale;
    return p * scale;
}

namespace {

// --- multivariate GCD (primitive PRS), helpers -----------------------------

// p viewed in the main variable v: dense coefficient list, entries are
// polynomials in the remaining variables (v-exponent zeroed out).
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t v) {
    std::vector<MultiPoly> cs(static_cast<std::size_t>(p.degree_in(v)) + 1,
                              MultiPoly(p.num_vars()));
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        const unsigned e = rest[v];
        rest[v] = 0;
        cs[e].add_term(std::move(rest), c);
    }
    return cs;
}

MultiPoly leading_coeff_in(const MultiPoly& p, std::size_t v) {
    return coefficients_in(p, v).back();
}

// Pseudo-remainder of a by b in variable v (deg_v a >= deg_v b >= 0, b != 0).
MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, std::size_t v) {
    const int db = b.degree_in(v);
    const MultiPoly lb = leading_coeff_in(b, v);
    const std::size_t n = a.num_vars();
    const MultiPoly xv = MultiPoly::variable(n, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const int da = a.degree_in(v);
        const MultiPoly la = leading_coeff_in(a, v);
        MultiPoly shift = MultiPoly::constant(n, 1);
        for (int k = 0; k < da - db; ++k) shift = shift * xv;
        a = a * lb - b * (la * shift);
    }
    return a;
}

MultiPoly gcd_recursive(const MultiPoly& p, const MultiPoly& q);

// GCD of the v-coefficients, i.e. the content of p with respect to v.
MultiPoly content_in(const MultiPoly& p, std::size_t v) {
    MultiPoly acc(p.num_vars());
    for (const auto& c : coefficients_in(p, v)) {
        if (c.is_zero()) continue;
        acc = gcd_recursive(acc, c);
        if (acc.is_constant()) break;
    }
    return acc;
}

MultiPoly primitive_in(const MultiPoly& p, const MultiPoly& content) {
    auto quo = divide_exact(p, content);
    if (!quo) throw internal_error("content does not divide its polynomial");
    return *quo;
}

MultiPoly gcd_recursive(const MultiPoly& p, const MultiPoly& q) {
    if (p.is_zero()) return normalize_primitive(q);
    if (q.is_zero()) return normalize_primitive(p);
    if (p.is_constant() || q.is_constant())
        return MultiPoly::constant(p.num_vars(), 1);

    // Main variable: first one occurring in both. Without a shared variable
    // the gcd is constant.
    std::size_t v = p.num_vars();
    for (std::size_t i = 0; i < p.num_vars(); ++i) {
        if (p.degree_in(i) > 0 && q.degree_in(i) > 0) { v = i; break; }
    }
    if (v == p.num_vars()) return MultiPoly::constant(p.num_vars(), 1);

    const MultiPoly cp = content_in(p, v);
    const MultiPoly cq = content_in(q, v);
    const MultiPoly content_gcd = gcd_recursive(cp, cq);

    MultiPoly a = normalize_primitive(primitive_in(p, cp));
    MultiPoly b = normalize_primitive(primitive_in(q, cq));
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);

    // Primitive PRS: take the content out of every pseudo-remainder.
    while (!b.is_zero()) {
        MultiPoly r = pseudo_remainder(a, b, v);
        if (!r.is_zero()) {
            if (r.degree_in(v) > 0) r = primitive_in(r, content_in(r, v));
            r = normalize_primitive(r);
        }
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero() && b.degree_in(v) == 0) {
            // Coprime in v: only the content part survives.
            a = MultiPoly::constant(p.num_vars(), 1);
            b = MultiPoly(p.num_vars());
        }
    }
    return normalize_primitive(content_gcd * a);
}

} // namespace

MultiPoly gcd_multivariate(const MultiPoly& p, const MultiPoly& q) {
    if (p.num_vars() != q.num_vars()) throw std::invalid_argument("variable-count mismatch");
    const MultiPoly g = gcd_recursive(p, q);
    if (!g.is_zero()) {
        if (!p.is_zero() && !divide_exact(p, g))
            throw internal_error("gcd certification failed on first argument");
        if (!q.is_zero() && !divide_exact(q, g))
            throw internal_error("gcd certification failed on second argument");
    }
    return g;
}

std::vector<std::pair<int, MultiPoly>> squarefree_decomposition(const MultiPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
    std::vector<std::pair<int, MultiPoly>> out;
    MultiPoly rest = normalize_primitive(p);
    // Peel one variable at a time: factors of the v-primitive part all
    // involve v, so Yun's algorithm with d/dv is complete for that slice;
    // the v-content carries the remaining factors.
    for (std::size_t v = 0; v < p.num_vars() && !rest.is_constant(); ++v) {
        if (rest.degree_in(v) == 0) continue;
        const MultiPoly content = content_in(rest, v);
        MultiPoly f = normalize_primitive(primitive_in(rest, content));

        const MultiPoly df = f.partial_derivative(v);
        MultiPoly u = gcd_multivariate(f, df);
        MultiPoly w = *divide_exact(f, u);
        MultiPoly y = *divide_exact(df, u);
        int k = 1;
        while (true) {
            const MultiPoly z = y - w.partial_derivative(v);
            if (z.is_zero()) {
                if (!w.is_constant()) out.emplace_back(k, normalize_primitive(w));
                break;
            }
            const MultiPoly g = gcd_multivariate(w, z);
            if (!g.is_constant()) out.emplace_back(k, g);
            w = *divide_exact(w, g);
            y = *divide_exact(z, g);
            ++k;
        }
        rest = normalize_primitive(content);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return GradedLexLess{}(a.second.leading_term().first, b.second.leading_term().first);
    });
    return out;
}

MultiPoly squarefree_part(const MultiPoly& p) {
    MultiPoly s = MultiPoly::constant(p.num_vars(), 1);
    for (const auto& [mult, f] : squarefree_decomposition(p)) s = s * f;
    return normalize_primitive(s);
}

// --- text form --------------------------------------------------------------

std::string MultiPoly::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending graded-lex, leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const auto& [m, c] = *it;
        os << to_string(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            os << " * x" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

namespace {

struct TextCursor {
    const std::string& s;
    std::size_t pos = 0;
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return s[pos];
    }
};

std::string read_number(TextCursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    if (cur.pos < cur.s.size() && (cur.s[cur.pos] == '-' || cur.s[cur.pos] == '+')) ++cur.pos;
    while (cur.pos < cur.s.size() &&
           (std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])) || cur.s[cur.pos] == '/'))
        ++cur.pos;
    if (cur.pos == start) throw parse_error("expected number at position " + std::to_string(start));
    return cur.s.substr(start, cur.pos - start);
}

} // namespace

MultiPoly MultiPoly::parse(const std::string& text, std::size_t num_vars) {
    MultiPoly result(num_vars);
    TextCursor cur{text};
    if (cur.eof()) throw parse_error("empty polynomial text");
    bool negate = false;
    if (cur.peek() == '+' || cur.peek() == '-') {
        negate = cur.peek() == '-';
        ++cur.pos;
    }
    while (true) {
        // one term: factors separated by '*'
        Rational coeff(1);
        bool saw_coeff = false;
        Monomial expo(num_vars, 0);
        while (true) {
            cur.skip_ws();
            if (cur.eof()) break;
            const char c = cur.peek();
            if (c == 'x') {
                ++cur.pos;
                std::size_t start = cur.pos;
                while (cur.pos < cur.s.size() &&
                       std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])))
                    ++cur.pos;
                if (cur.pos == start) throw parse_error("expected variable index after 'x'");
                const unsigned long idx = std::stoul(cur.s.substr(start, cur.pos - start));
                if (idx < 1 || idx > num_vars)
                    throw parse_error("variable x" + std::to_string(idx) + " out of range");
                unsigned e = 1;
                cur.skip_ws();
                if (!cur.eof() && cur.peek() == '^') {
                    ++cur.pos;
                    cur.skip_ws();
                    std::size_t es = cur.pos;
                    while (cur.pos < cur.s.size() &&
                           std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])))
                        ++cur.pos;
                    if (cur.pos == es) throw parse_error("expected exponent after '^'");
                    e = static_cast<unsigned>(std::stoul(cur.s.substr(es, cur.pos - es)));
                }
                expo[idx - 1] += e;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
                coeff *= parse_rational(read_number(cur));
                saw_coeff = true;
            } else {
                throw parse_error(std::string("unexpected character '") + c + "' in polynomial");
            }
            cur.skip_ws();
            if (!cur.eof() && cur.peek() == '*') {
                ++cur.pos;
                continue;
            }
            break;
        }
        if (!saw_coeff && expo == Monomial(num_vars, 0))
            throw parse_error("empty term in polynomial text");
        result.add_term(std::move(expo), negate ? -coeff : coeff);
        if (cur.eof()) break;
        const char sep = cur.peek();
        if (sep == '+' || sep == '-') {
            negate = sep == '-';
            ++cur.pos;
            continue;
        }
        throw parse_error(std::string("unexpected character '") + sep + "' between terms");
    }
    return result;
}

} // namespace argshift
