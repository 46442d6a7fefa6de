#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ssp {

/// Counter-based 64-bit generator (SplitMix64 output function applied to a
/// strided counter). Substreams are keyed by (seed, stream_id) through an
/// avalanche mix, so disjoint stream ids never share counter sequences.
/// The construction is stateless apart from the counter, which makes draws
/// reproducible bit-for-bit for a given (seed, stream_id, draw index).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream_id = 0)
        : counter_(0), have_cached_normal_(false), cached_normal_(0.0) {
        key_ = mix64(seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1));
        key_ = mix64(key_ ^ stream_id);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + 0x9E3779B97F4A7C15ULL * (++counter_);
        return mix64(z);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925286766559 * u2;
        cached_normal_ = r * std::sin(th);
        have_cached_normal_ = true;
        return r * std::cos(th);
    }

    double exponential() { return -std::log(uniform_pos()); }

    /// Gamma(shape, scale 1), Marsaglia-Tsang; the shape < 1 case goes
    /// through the boost identity Gamma(k) = Gamma(k+1) * U^{1/k}.
    double gamma(double shape) {
        if (shape <= 0.0) throw std::invalid_argument("gamma: shape must be > 0");
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// Poisson count by inversion; large means are split into chunks so the
    /// running product never underflows.
    std::uint64_t poisson(double mean) {
        if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
        std::uint64_t total = 0;
        while (mean > 500.0) {
            total += poisson_small(500.0);
            mean -= 500.0;
        }
        return total + poisson_small(mean);
    }

    /// Standard symmetric alpha-stable draw (characteristic function
    /// exp(-|w|^alpha)) by the Chambers-Mallows-Stuck transform.
    double stable_sym(double alpha) {
        if (alpha <= 0.0 || alpha > 2.0)
            throw std::invalid_argument("stable_sym: alpha must be in (0, 2]");
        const double half_pi = 1.5707963267948966192313216916398;
        const double u = uniform(-half_pi, half_pi);
        if (alpha == 2.0) return 1.4142135623730950488016887242097 * normal(); // N(0, 2)
        const double e = exponential();
        if (std::abs(alpha - 1.0) < 1e-12) return std::tan(u);
        const double s = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
        const double t = std::pow(std::cos(u - alpha * u) / e, (1.0 - alpha) / alpha);
        return s * t;
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = uniform_pos();
        while (prod > limit) {
            ++k;
            prod *= uniform_pos();
        }
        return k;
    }

    std::uint64_t key_;
    std::uint64_t counter_;
    bool have_cached_normal_;
    double cached_normal_;
};

} // namespace ssp
