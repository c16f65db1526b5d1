#ifndef ARGSHIFT_RATIONAL_HPP
#define ARGSHIFT_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace argshift {

// Exact scalars. mpq_class arithmetic keeps canonical form (reduced,
// positive denominator) as long as every value is canonical on entry,
// so all construction from raw num/den goes through make_rational.
using Integer = mpz_class;
using Rational = mpq_class;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rational make_rational(Integer num, Integer den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

/// Parses "n" or "n/d" with optional sign.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return make_rational(Integer(text));
        return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational literal: '" + text + "'");
    }
}

/// "n" when the denominator is 1, "n/d" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

} // namespace argshift

#endif
