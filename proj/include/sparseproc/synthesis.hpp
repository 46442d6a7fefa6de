#pragma once

#include <vector>

#include "sparseproc/noise.hpp"
#include "sparseproc/operators.hpp"

namespace ssp {

/// Uniform grid descriptor for synthesized paths.
struct GridSpec {
    double t_start = 0.0;
    double delta = 1.0 / 16.0;
    std::size_t n = 0;
};

/// Full description of one process: whitening system, driving noise, grid.
struct ProcessSpec {
    SystemSpec system;
    NoiseSpec noise;
    GridSpec grid;
};

/// Drive a factor chain with externally supplied cell increments (one per
/// grid cell). The first inverse factor consumes the increments directly as
/// its per-cell quadrature term; the remaining factors act on the resulting
/// pointwise path. Truncating the chain exposes the partially inverted
/// signals of a multi-factor system.
SampledPath drive_chain(const OperatorChain& chain, const GridSpec& grid,
                        const std::vector<double>& increments);

/// Stationary CARMA path: forward LSI chain driven by cell increments.
/// Requires a system without imaginary poles.
SampledPath synth_stationary(const ProcessSpec& spec);

/// Non-stationary path of a system with imaginary poles, pinned to zero at
/// the boundary points. Rejects noises that fail the p-admissibility probe
/// (notably sas with alpha < 1).
SampledPath synth_generalized_levy(const ProcessSpec& spec);

/// Classical Lévy motion W(t) on [0, T]: exact cumulative sum of increments,
/// W(0) = 0.
SampledPath synth_levy_motion(const NoiseSpec& noise, const GridSpec& grid);

/// The four showcase processes in order of increasing sparsity: Brownian
/// motion, Laplace motion, compound Poisson (lambda = 1/32, unit gaussian
/// amplitudes), and an alpha = 1.2 stable flight.
std::vector<LevyExponent> gallery_exponents();

struct GalleryEntry {
    std::string name;
    SampledPath path;
    std::vector<double> unit_increments;
};

std::vector<GalleryEntry> gallery(const GridSpec& grid, std::uint64_t seed);

} // namespace ssp
