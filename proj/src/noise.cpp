#include "sparseproc/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace ssp {

std::vector<double> sample_increments(const NoiseSpec& spec, std::size_t n) {
    if (spec.delta <= 0.0) throw std::invalid_argument("sample_increments: delta must be > 0");
    CounterRng rng(spec.seed, spec.stream);
    std::vector<double> out(n);
    const double d = spec.delta;
    switch (spec.exponent.kind()) {
        case LevyExponent::Kind::Gaussian: {
            const double s = std::sqrt(d);
            for (auto& x : out) x = s * rng.normal();
            break;
        }
        case LevyExponent::Kind::Laplace:
            // Variance-gamma identity: (1+w^2)^{-d} is the characteristic
            // function of Gamma(d,1) - Gamma(d,1), exact for every d.
            for (auto& x : out) {
                const double g1 = rng.gamma(d);
                const double g2 = rng.gamma(d);
                x = g1 - g2;
            }
            break;
        case LevyExponent::Kind::Poisson: {
            const double mean = spec.exponent.poisson_lambda() * d;
            const AmplitudePdf amp = spec.exponent.amplitude();
            for (auto& x : out) {
                const std::uint64_t k = rng.poisson(mean);
                double sum = 0.0;
                for (std::uint64_t i = 0; i < k; ++i) sum += amp.sample(rng);
                x = sum;
            }
            break;
        }
        case LevyExponent::Kind::Sas: {
            const double alpha = spec.exponent.sas_alpha();
            const double scale = std::pow(d / std::tgamma(alpha + 1.0), 1.0 / alpha);
            for (auto& x : out) x = scale * rng.stable_sym(alpha);
            break;
        }
        case LevyExponent::Kind::Numeric:
            throw std::invalid_argument(
                "sample_increments: no sampler for numeric exponents; invert the "
                "characteristic function (char_to_pdf) and sample by inverse CDF");
    }
    return out;
}

ImpulseStream sample_impulse_stream(double lambda, double duration, const AmplitudePdf& amplitude,
                                    std::uint64_t seed, std::uint64_t stream) {
    if (lambda < 0.0) throw std::invalid_argument("sample_impulse_stream: lambda must be >= 0");
    if (duration <= 0.0) throw std::invalid_argument("sample_impulse_stream: duration must be > 0");
    CounterRng rng(seed, stream);
    ImpulseStream s;
    s.rate = lambda;
    s.duration = duration;
    const std::uint64_t count = lambda > 0.0 ? rng.poisson(lambda * duration) : 0;
    s.locations.reserve(count);
    s.amplitudes.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        s.locations.push_back(rng.uniform(0.0, duration));
        s.amplitudes.push_back(amplitude.sample(rng));
    }
    return s;
}

std::vector<double> bin_impulses(const ImpulseStream& stream, double t_start, double delta,
                                 std::size_t n) {
    if (delta <= 0.0) throw std::invalid_argument("bin_impulses: delta must be > 0");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < stream.locations.size(); ++i) {
        const double pos = (stream.locations[i] - t_start) / delta;
        if (pos < 0.0 || pos >= static_cast<double>(n)) continue;
        out[static_cast<std::size_t>(pos)] += stream.amplitudes[i];
    }
    return out;
}

CharGrid empirical_char(const std::vector<double>& samples, double omega_start, double omega_step,
                        std::size_t count) {
    if (samples.empty()) throw std::invalid_argument("empirical_char: empty sample set");
    CharGrid grid;
    grid.domain = CharGrid::Domain::Frequency;
    grid.axis_start = omega_start;
    grid.axis_step = omega_step;
    grid.values.resize(count);
    grid.mc_standard_error = 1.0 / std::sqrt(static_cast<double>(samples.size()));
    for (std::size_t k = 0; k < count; ++k) {
        const double w = omega_start + omega_step * static_cast<double>(k);
        cplx acc(0.0, 0.0);
        for (double x : samples) acc += cplx(std::cos(w * x), std::sin(w * x));
        grid.values[k] = acc / static_cast<double>(samples.size());
    }
    return grid;
}

} // namespace ssp
