#ifndef ARGSHIFT_RNG_HPP
#define ARGSHIFT_RNG_HPP

#include <cstdint>
#include <vector>

#include "argshift/rational.hpp"

namespace argshift {

// splitmix64. Self-contained so that a given seed produces the same
// stream on every platform; std:: distributions do not guarantee that.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    /// Uniform integer in [lo, hi], inclusive.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Integer-valued rational in [-height, height].
    Rational rat(long height) {
        return Rational(static_cast<long>(int_in(-height, height)));
    }

    /// Nonzero integer-valued rational in [-height, height].
    Rational nonzero_rat(long height) {
        for (;;) {
            Rational r = rat(height);
            if (r != 0) return r;
        }
    }

    std::vector<Rational> rat_vector(std::size_t n, long height) {
        std::vector<Rational> v(n);
        for (auto& x : v) x = rat(height);
        return v;
    }

    /// Derives an independent stream; used to fan work out deterministically.
    Rng fork(std::uint64_t salt) {
        return Rng(next() ^ (0xD1B54A32D192ED03ull * (salt + 1)));
    }

private:
    std::uint64_t state_;
};

} // namespace argshift

#endif
