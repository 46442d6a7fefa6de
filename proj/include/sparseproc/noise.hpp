#pragma once

#include <cstdint>
#include <vector>

#include "sparseproc/grid.hpp"
#include "sparseproc/id_laws.hpp"
#include "sparseproc/rng.hpp"

namespace ssp {

/// Parameters of a discretized white-noise source. Increments over disjoint
/// grid cells are independent with characteristic function e^{delta f(w)}.
struct NoiseSpec {
    LevyExponent exponent;
    std::uint64_t seed = 0;
    double delta = 1.0;
    std::uint64_t stream = 0; ///< substream id; disjoint ids give independent draws
};

/// n i.i.d. cell increments of the noise. Throws for numeric exponents, which
/// have no closed sampling construction here (invert the characteristic
/// function and use inverse-CDF sampling externally instead).
std::vector<double> sample_increments(const NoiseSpec& spec, std::size_t n);

/// Exact compound-Poisson representation on [0, T): random impulse locations
/// with i.i.d. amplitudes.
struct ImpulseStream {
    std::vector<double> locations;
    std::vector<double> amplitudes;
    double rate = 0.0;
    double duration = 0.0;
};

ImpulseStream sample_impulse_stream(double lambda, double duration, const AmplitudePdf& amplitude,
                                    std::uint64_t seed, std::uint64_t stream = 0);

/// Sum impulse amplitudes into grid cells [t_start + k delta, t_start + (k+1) delta).
std::vector<double> bin_impulses(const ImpulseStream& stream, double t_start, double delta,
                                 std::size_t n);

/// Monte-Carlo estimate of E{e^{j w X}} on a uniform frequency grid
/// [omega_start, omega_start + (count-1) step]; the 1/sqrt(n) standard-error
/// bound is attached to the result.
CharGrid empirical_char(const std::vector<double>& samples, double omega_start, double omega_step,
                        std::size_t count);

} // namespace ssp
