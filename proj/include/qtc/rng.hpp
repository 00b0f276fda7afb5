#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qtc {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic random stream. Streams for independent work units are derived
/// from (master seed, indices) so parallel and serial schedules agree bit-for-bit.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    static Rng derive(uint64_t master, uint64_t a, uint64_t b = 0) {
        uint64_t s = splitmix64(master);
        s = splitmix64(s ^ (a + 0x9e3779b97f4a7c15ull));
        s = splitmix64(s ^ (b + 0x7f4a7c159e3779b9ull));
        return Rng(s);
    }

    uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        // rejection-free Lemire-style reduction is overkill here; use rejection
        uint64_t mask = n - 1;
        if ((n & mask) == 0) return eng_() & mask;
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= lim);
        return v % n;
    }

    /// k uniform random bits (k <= 64).
    uint64_t bits(size_t k) {
        uint64_t v = eng_();
        return k >= 64 ? v : (v & ((uint64_t{1} << k) - 1));
    }

    /// Standard normal via Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qtc
