#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sparseproc/grid.hpp"
#include "sparseproc/rng.hpp"

namespace ssp_test {

inline ssp::SampledPath make_path(double t_start, double delta, std::size_t n) {
    ssp::SampledPath p;
    p.t_start = t_start;
    p.delta = delta;
    p.values.assign(n, ssp::cplx(0.0, 0.0));
    return p;
}

/// Smooth compactly supported bump on (c - w, c + w), infinitely
/// differentiable at the edges.
inline double bump(double t, double center, double width) {
    const double u = (t - center) / width;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

/// Random smooth compactly supported function: a few bumps with centers kept
/// away from the grid edges.
inline ssp::SampledPath random_smooth(double t_start, double delta, std::size_t n,
                                      ssp::CounterRng& rng) {
    ssp::SampledPath p = make_path(t_start, delta, n);
    const double span = delta * static_cast<double>(n - 1);
    const double lo = t_start + 0.25 * span, hi = t_start + 0.75 * span;
    const int bumps = 2 + static_cast<int>(rng.next_u64() % 3);
    std::vector<double> centers(static_cast<std::size_t>(bumps)), widths(centers.size()),
        weights(centers.size());
    for (std::size_t b = 0; b < centers.size(); ++b) {
        centers[b] = rng.uniform(lo, hi);
        widths[b] = rng.uniform(0.05 * span, 0.15 * span);
        weights[b] = rng.uniform(-2.0, 2.0);
    }
    for (std::size_t k = 0; k < n; ++k) {
        double v = 0.0;
        for (std::size_t b = 0; b < centers.size(); ++b)
            v += weights[b] * bump(p.time(k), centers[b], widths[b]);
        p.values[k] = v;
    }
    return p;
}

/// One-sample Kolmogorov-Smirnov statistic against a cdf.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = cdf(samples[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
    }
    return d;
}

/// Asymptotic Kolmogorov distribution tail: P{sqrt(n) D > lambda}.
inline double ks_pvalue_from_lambda(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, sum));
}

inline double ks_pvalue(const std::vector<double>& samples,
                        const std::function<double(double)>& cdf) {
    const double d = ks_statistic(samples, cdf);
    const double n = static_cast<double>(samples.size());
    const double en = std::sqrt(n);
    return ks_pvalue_from_lambda((en + 0.12 + 0.11 / en) * d);
}

/// Two-sample KS p-value.
inline double ks2_pvalue(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i; // step over ties on both sides
        while (j < b.size() && b[j] <= v) ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double en = std::sqrt(na * nb / (na + nb));
    return ks_pvalue_from_lambda((en + 0.12 + 0.11 / en) * d);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

} // namespace ssp_test
