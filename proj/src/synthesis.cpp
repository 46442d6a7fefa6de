#include "sparseproc/synthesis.hpp"

#include <cmath>
#include <stdexcept>

namespace ssp {

namespace {

/// Apply the chain to cell increments. The first inverse factor consumes the
/// increments directly as its per-cell quadrature term (cell integrals are
/// the only well-defined discrete observation of the noise); the rest of the
/// chain then acts on the resulting pointwise path.
SampledPath drive_chain_impl(const OperatorChain& chain, const SampledPath& grid_shape,
                             const std::vector<double>& increments) {
    SampledPath cur = grid_shape;
    cur.values.assign(increments.begin(), increments.end());
    std::size_t first = 0;
    if (!chain.factors.empty()) {
        const auto& f = chain.factors.front();
        const std::size_t n = cur.values.size();
        auto& v = cur.values;
        switch (f.kind) {
            case OperatorFactor::Kind::StableInverse: {
                const cplx q = std::exp(f.alpha * cur.delta);
                for (std::size_t k = 1; k < n; ++k) v[k] = q * v[k - 1] + v[k];
                first = 1;
                break;
            }
            case OperatorFactor::Kind::AntiCausalInverse: {
                const cplx r = std::exp(-f.alpha * cur.delta);
                v[n - 1] = -v[n - 1];
                for (std::size_t k = n - 1; k-- > 0;) v[k] = r * v[k + 1] - v[k];
                first = 1;
                break;
            }
            case OperatorFactor::Kind::CorrectedIntegrator: {
                // modulated cumulative sum, then pin the value at t0
                cplx acc(0.0, 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const double t = cur.time(k);
                    acc += std::exp(cplx(0.0, -f.omega0 * t)) * v[k];
                    v[k] = std::exp(cplx(0.0, f.omega0 * t)) * acc;
                }
                const std::size_t k0 = cur.index_of(f.t0);
                const cplx pinned = v[k0];
                for (std::size_t k = 0; k < n; ++k)
                    v[k] -= std::exp(cplx(0.0, f.omega0 * (cur.time(k) - f.t0))) * pinned;
                first = 1;
                break;
            }
            case OperatorFactor::Kind::Differential:
                // no quadrature shortcut; fall back to the density proxy w/delta
                for (auto& c : v) c /= cur.delta;
                break;
        }
    }
    OperatorChain rest;
    rest.adjoint = chain.adjoint;
    rest.factors.assign(chain.factors.begin() + static_cast<std::ptrdiff_t>(first),
                        chain.factors.end());
    return apply_chain(rest, cur);
}

SampledPath shape_of(const GridSpec& grid) {
    SampledPath p;
    p.t_start = grid.t_start;
    p.delta = grid.delta;
    p.values.assign(grid.n, cplx(0.0, 0.0));
    return p;
}

/// Burn-in length needed for the slowest off-axis pole's kernel to decay to
/// round-off level.
double pad_time(const SystemSpec& system) {
    double slowest = 0.0;
    for (const auto& p : system.poles) {
        if (system.is_imaginary(p)) continue;
        const double rate = std::abs(p.real());
        slowest = std::max(slowest, 1.0 / rate);
    }
    return slowest * 32.3; // |e^{-32.3}| < 1e-14
}

void check_admissible(const ProcessSpec& spec) {
    const auto& f = spec.noise.exponent;
    if (f.kind() == LevyExponent::Kind::Sas && f.sas_alpha() < 1.0)
        throw std::domain_error(
            "synth_generalized_levy: sas noise with alpha < 1 fails the p-admissibility "
            "probe for every p >= 1; no well-defined solution with boundary conditions");
    double p = 2.0;
    if (f.kind() == LevyExponent::Kind::Sas) p = f.sas_alpha();
    if (f.kind() == LevyExponent::Kind::Poisson) p = 1.0;
    const double margin = p_admissibility_margin(f, p, admissibility_probe_grid());
    if (!std::isfinite(margin))
        throw std::domain_error("synth_generalized_levy: noise exponent fails admissibility");
}

SampledPath synth_with_padding(const ProcessSpec& spec, bool pad_left, bool pad_right) {
    const double pad = pad_time(spec.system);
    const auto pad_cells = static_cast<std::size_t>(std::ceil(pad / spec.grid.delta));
    GridSpec wide = spec.grid;
    if (pad_left) {
        wide.t_start -= static_cast<double>(pad_cells) * wide.delta;
        wide.n += pad_cells;
    }
    if (pad_right) wide.n += pad_cells;

    NoiseSpec noise = spec.noise;
    noise.delta = wide.delta;
    const auto increments = sample_increments(noise, wide.n);
    const auto chain = factorize(spec.system, /*adjoint=*/false);
    const SampledPath full = drive_chain_impl(chain, shape_of(wide), increments);

    SampledPath out = shape_of(spec.grid);
    const std::size_t offset = pad_left ? pad_cells : 0;
    for (std::size_t k = 0; k < spec.grid.n; ++k) out.values[k] = full.values[k + offset];
    return out;
}

} // namespace

SampledPath drive_chain(const OperatorChain& chain, const GridSpec& grid,
                        const std::vector<double>& increments) {
    if (increments.size() != grid.n)
        throw std::invalid_argument("drive_chain: need one increment per grid cell");
    return drive_chain_impl(chain, shape_of(grid), increments);
}

SampledPath synth_stationary(const ProcessSpec& spec) {
    if (spec.system.imaginary_count() > 0)
        throw std::invalid_argument(
            "synth_stationary: system has imaginary poles; use synth_generalized_levy");
    bool anti = false;
    for (const auto& p : spec.system.poles)
        if (p.real() > 0.0) anti = true;
    bool causal = false;
    for (const auto& p : spec.system.poles)
        if (p.real() < 0.0) causal = true;
    return synth_with_padding(spec, causal, anti);
}

SampledPath synth_generalized_levy(const ProcessSpec& spec) {
    if (spec.system.imaginary_count() == 0)
        throw std::invalid_argument("synth_generalized_levy: no imaginary poles; "
                                    "use synth_stationary");
    check_admissible(spec);
    for (double t0 : spec.system.boundary_points) {
        const double end =
            spec.grid.t_start + spec.grid.delta * static_cast<double>(spec.grid.n - 1);
        if (t0 < spec.grid.t_start || t0 > end)
            throw std::invalid_argument("synth_generalized_levy: boundary point leaves the grid");
    }
    // Padding must not extend past boundary points on the left when the pinned
    // value would fall off-grid; pad only with off-axis poles present.
    const bool has_lsi = spec.system.order() > spec.system.imaginary_count();
    return synth_with_padding(spec, /*pad_left=*/has_lsi, /*pad_right=*/false);
}

SampledPath synth_levy_motion(const NoiseSpec& noise, const GridSpec& grid) {
    if (grid.n == 0) throw std::invalid_argument("synth_levy_motion: empty grid");
    if (grid.t_start != 0.0)
        throw std::invalid_argument("synth_levy_motion: grid must start at t = 0 (W(0) = 0)");
    NoiseSpec local = noise;
    local.delta = grid.delta;
    const auto increments = sample_increments(local, grid.n - 1);
    SampledPath w = shape_of(grid);
    double acc = 0.0;
    for (std::size_t k = 1; k < grid.n; ++k) {
        acc += increments[k - 1];
        w.values[k] = acc;
    }
    return w;
}

std::vector<LevyExponent> gallery_exponents() {
    return {LevyExponent::gaussian(), LevyExponent::laplace(),
            LevyExponent::poisson(1.0 / 32.0, AmplitudePdf{AmplitudePdf::Tag::Gaussian, 1.0}),
            LevyExponent::sas(1.2)};
}

std::vector<GalleryEntry> gallery(const GridSpec& grid, std::uint64_t seed) {
    std::vector<GalleryEntry> entries;
    std::uint64_t stream = 0;
    for (const auto& f : gallery_exponents()) {
        GalleryEntry e;
        e.name = f.name();
        NoiseSpec noise{f, seed, grid.delta, stream++};
        if (f.kind() == LevyExponent::Kind::Poisson) {
            // event-driven construction: exact jump locations keep the path
            // piecewise constant between impulses
            const double duration = grid.delta * static_cast<double>(grid.n);
            const auto stream_events = sample_impulse_stream(f.poisson_lambda(), duration,
                                                             f.amplitude(), seed, noise.stream);
            const auto increments = bin_impulses(stream_events, 0.0, grid.delta, grid.n - 1);
            SampledPath w = shape_of(grid);
            double acc = 0.0;
            for (std::size_t k = 1; k < grid.n; ++k) {
                acc += increments[k - 1];
                w.values[k] = acc;
            }
            e.path = std::move(w);
        } else {
            e.path = synth_levy_motion(noise, grid);
        }
        const auto stride = static_cast<std::size_t>(std::lround(1.0 / grid.delta));
        if (stride >= 1) {
            for (std::size_t k = stride; k < grid.n; k += stride)
                e.unit_increments.push_back(e.path.values[k].real() -
                                            e.path.values[k - stride].real());
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace ssp
