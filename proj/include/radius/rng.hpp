#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "radius/errors.hpp"

namespace radius {

namespace detail {

// SplitMix64 step, also used as a 64-bit finalizer when deriving substreams.
// https://prng.di.unimi.it/splitmix64.c
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Deterministic, platform-independent random stream. The generator is
/// xoshiro256** seeded through SplitMix64; all derived distributions
/// (uniform, normal, gamma) are implemented here rather than via
/// std::*_distribution so that draw sequences are identical across
/// standard libraries. Identical (seed, label path) reproduce identical
/// sequences everywhere.
class RngStream {
  public:
    static constexpr const char* kAlgorithmId = "xoshiro256**-splitmix64/v1";

    explicit RngStream(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            word = detail::splitmix64(sm);
        }
    }

    std::uint64_t seed() const { return seed_; }

    /// Independent stream derived from this stream's construction seed and a
    /// label (e.g. a question_id). Derivation ignores how far this stream has
    /// advanced, so per-label substreams are stable under parallel evaluation.
    RngStream substream(std::string_view label) const {
        std::uint64_t s = seed_ ^ detail::fnv1a64(label);
        return RngStream(detail::splitmix64(s));
    }

    // xoshiro256**: https://prng.di.unimi.it/xoshiro256starstar.c
    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via the Marsaglia polar method (second value cached).
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    /// Gamma(shape, 1) via Marsaglia & Tsang (2000); shape < 1 handled by the
    /// usual boost Gamma(shape) = Gamma(shape+1) * U^(1/shape).
    double next_gamma(double shape) {
        if (!(shape > 0.0)) {
            throw ValidationError("gamma sample requires shape > 0");
        }
        if (shape < 1.0) {
            const double u = 1.0 - next_double();  // (0, 1]
            return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) {
                return d * v;
            }
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
                return d * v;
            }
        }
    }

  private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// One multinomial draw of n trials over probabilities p (must sum to 1
/// within 1e-9). Output sums to n exactly.
inline std::vector<std::int64_t> multinomial_sample(RngStream& rng, std::int64_t n,
                                                    const std::vector<double>& p) {
    if (n < 1) {
        throw ValidationError("multinomial sample requires n >= 1");
    }
    if (p.empty()) {
        throw ValidationError("multinomial sample requires a non-empty probability vector");
    }
    std::vector<double> cum(p.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || std::isnan(p[i])) {
            throw ValidationError("multinomial sample: negative probability entry");
        }
        total += p[i];
        cum[i] = total;
    }
    if (std::fabs(total - 1.0) > 1e-9) {
        throw ValidationError("multinomial sample: probabilities must sum to 1");
    }

    std::vector<std::int64_t> counts(p.size(), 0);
    const std::size_t last = p.size() - 1;
    for (std::int64_t trial = 0; trial < n; ++trial) {
        const double u = rng.next_double() * total;
        std::size_t lo = 0;
        if (u >= cum[last]) {
            // u can round up onto the total; never land on a zero-probability tail
            lo = last;
            while (lo > 0 && p[lo] == 0.0) --lo;
        } else {
            std::size_t hi = last;
            while (lo < hi) {  // first index with cum[idx] > u
                const std::size_t mid = (lo + hi) / 2;
                if (cum[mid] > u) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
        }
        ++counts[lo];
    }
    return counts;
}

/// Symmetric Dirichlet(alpha, ..., alpha) draw of dimension k.
inline std::vector<double> dirichlet_sample(RngStream& rng, double alpha, std::size_t k) {
    if (!(alpha > 0.0)) {
        throw ValidationError("dirichlet sample requires alpha > 0");
    }
    if (k < 1) {
        throw ValidationError("dirichlet sample requires k >= 1");
    }
    std::vector<double> p(k);
    double sum = 0.0;
    do {
        sum = 0.0;
        for (auto& v : p) {
            v = rng.next_gamma(alpha);
            sum += v;
        }
    } while (sum <= 0.0);  // underflow guard for extreme alpha
    for (auto& v : p) {
        v /= sum;
    }
    return p;
}

}  // namespace radius
