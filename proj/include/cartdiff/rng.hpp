#pragma once

#include <cstdint>
#include <string>

namespace cartdiff {

/// Small deterministic generator (splitmix64). Bounded draws are produced
/// from raw 64-bit output, so streams are reproducible across platforms
/// and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    /// Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double real(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::uint64_t state_;
};

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Stream for one law case: independent of scheduling, so suites may run
/// cases in any order or concurrently and still report identical results.
inline Rng case_stream(std::uint64_t suite_seed, const std::string& law_id,
                       std::uint64_t case_index) {
    Rng mix(suite_seed ^ fnv1a(law_id));
    std::uint64_t a = mix.next();
    Rng mix2(a + 0x9e3779b97f4a7c15ULL * (case_index + 1));
    return Rng(mix2.next());
}

} // namespace cartdiff
