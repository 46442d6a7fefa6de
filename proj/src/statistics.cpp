#include "sparseproc/statistics.hpp"

#include <cmath>
#include <stdexcept>

namespace ssp {

namespace {

SampledPath grid_shape(const GridSpec& grid) {
    return SampledPath(grid.t_start, grid.delta, grid.n);
}

/// Burn-in needed for the stable factors' adjoint spreads to decay to
/// round-off (|e^{-32.3}| < 1e-14).
double pad_span(const SystemSpec& system) {
    double pad = 0.0;
    for (const auto& p : system.poles) {
        if (system.is_imaginary(p)) continue;
        pad = std::max(pad, 32.3 / std::abs(p.real()));
    }
    return pad;
}

/// The kernels entering the Lévy exponent must be real-valued; systems with
/// off-axis complex poles would need a complex-argument exponent.
void require_real(const SampledPath& u, const char* who) {
    double scale = 1.0;
    for (const auto& v : u.values) scale = std::max(scale, std::abs(v));
    if (u.max_abs_imag() > 1e-8 * scale)
        throw std::invalid_argument(std::string(who) +
                                    ": observation kernel is not real-valued");
}

/// Trapezoid quadrature of t -> f(c * u(t)) over the kernel's grid.
cplx exponent_quadrature(const LevyExponent& f, const SampledPath& u, double c) {
    cplx acc(0.0, 0.0);
    const std::size_t n = u.values.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += w * f.eval(c * u.values[k].real());
    }
    return acc * u.delta;
}

double second_cumulant_or_throw(const NoiseSpec& noise, const char* who) {
    const LevyTriplet trip = noise.exponent.triplet();
    if (!moment_finite(trip, 2.0))
        throw std::domain_error(std::string(who) +
                                ": noise law has infinite variance; "
                                "second-order statistics are undefined");
    return trip.second_cumulant();
}

} // namespace

TestFunction TestFunction::dirac(const GridSpec& grid, double t, cplx weight) {
    TestFunction phi;
    phi.samples = grid_shape(grid);
    phi.samples.values[phi.samples.index_of(t)] = weight / grid.delta;
    phi.tag = Tag::Delta;
    phi.delta_t = t;
    return phi;
}

TestFunction TestFunction::rect(const GridSpec& grid, double t_lo, double t_hi, cplx height) {
    if (t_hi <= t_lo) throw std::invalid_argument("TestFunction::rect: empty support");
    TestFunction phi;
    phi.samples = grid_shape(grid);
    const double lo = (t_lo - grid.t_start) / grid.delta;
    const double hi = (t_hi - grid.t_start) / grid.delta;
    const long klo = std::lround(std::ceil(lo - 1e-9));
    const long khi = std::lround(std::floor(hi + 1e-9));
    if (klo < 0 || khi >= static_cast<long>(grid.n))
        throw std::invalid_argument("TestFunction::rect: support leaves the grid");
    for (long k = klo; k <= khi; ++k) phi.samples.values[static_cast<std::size_t>(k)] = height;
    phi.tag = Tag::Rect;
    return phi;
}

TestFunction TestFunction::from_path(SampledPath p, Tag tag) {
    TestFunction phi;
    phi.samples = std::move(p);
    phi.tag = tag;
    return phi;
}

SampledPath adjoint_response(const ProcessSpec& spec, const TestFunction& phi) {
    const auto pad_cells =
        static_cast<std::size_t>(std::ceil(pad_span(spec.system) / phi.samples.delta));
    SampledPath wide(phi.samples.t_start - phi.samples.delta * static_cast<double>(pad_cells),
                     phi.samples.delta, phi.samples.size() + 2 * pad_cells);
    for (std::size_t k = 0; k < phi.samples.size(); ++k)
        wide.values[k + pad_cells] = phi.samples.values[k];
    return apply_chain(factorize(spec.system, /*adjoint=*/true), wide);
}

cplx char_form(const ProcessSpec& spec, const TestFunction& phi) {
    const SampledPath u = adjoint_response(spec, phi);
    require_real(u, "char_form");
    return std::exp(exponent_quadrature(spec.noise.exponent, u, 1.0));
}

PdfResult first_order_pdf(const ProcessSpec& spec, double t, const PdfGridSpec& out) {
    const SampledPath u = adjoint_response(spec, TestFunction::dirac(spec.grid, t));
    require_real(u, "first_order_pdf");
    const auto& f = spec.noise.exponent;
    const auto g = [&](double w) { return exponent_quadrature(f, u, -w); };

    double omega_max = out.omega_max;
    if (omega_max <= 0.0) {
        omega_max = 64.0;
        while (omega_max < 65536.0 && std::exp(g(omega_max).real()) > 1e-12) omega_max *= 2.0;
    }
    std::size_t n = out.n;
    const double needed = 40.0 * out.x_max * omega_max / 3.14159265358979323846;
    while (static_cast<double>(n) < needed) n *= 2;

    CharGrid samples;
    samples.domain = CharGrid::Domain::Frequency;
    samples.axis_step = 2.0 * omega_max / static_cast<double>(n);
    samples.axis_start = -omega_max;
    samples.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) samples.values[k] = g(samples.axis(k));
    PdfGridSpec resolved = out;
    resolved.n = n;
    resolved.omega_max = omega_max;
    return char_to_pdf(samples, resolved);
}

cplx covariance_form(const ProcessSpec& spec, const TestFunction& phi1, const TestFunction& phi2) {
    const double s0 = second_cumulant_or_throw(spec.noise, "covariance_form");
    if (phi1.samples.t_start != phi2.samples.t_start ||
        phi1.samples.delta != phi2.samples.delta ||
        phi1.samples.size() != phi2.samples.size())
        throw std::invalid_argument("covariance_form: test functions on different grids");
    const SampledPath u1 = adjoint_response(spec, phi1);
    const SampledPath u2 = adjoint_response(spec, phi2);
    return s0 * inner_product(u1, u2);
}

SampledPath autocorrelation(const ProcessSpec& spec, double tau_max) {
    if (spec.system.imaginary_count() > 0)
        throw std::invalid_argument(
            "autocorrelation: system has imaginary poles; the process is not stationary");
    const double s0 = second_cumulant_or_throw(spec.noise, "autocorrelation");
    const double delta = spec.grid.delta;
    const double span = pad_span(spec.system) + tau_max;
    const auto half = static_cast<std::size_t>(std::ceil(span / delta));
    // impulse response of the inverse system, centered so both causal and
    // anti-causal spreads fit
    SampledPath pulse(-delta * static_cast<double>(half), delta, 2 * half + 1);
    pulse.values[half] = 1.0 / delta;
    const SampledPath rho = apply_chain(factorize(spec.system, /*adjoint=*/false), pulse);

    const auto lags = static_cast<std::size_t>(std::lround(tau_max / delta));
    SampledPath r(-delta * static_cast<double>(lags), delta, 2 * lags + 1);
    const long n = static_cast<long>(rho.values.size());
    for (long m = -static_cast<long>(lags); m <= static_cast<long>(lags); ++m) {
        cplx acc(0.0, 0.0);
        for (long k = std::max(0L, m); k < std::min(n, n + m); ++k)
            acc += rho.values[static_cast<std::size_t>(k)] *
                   std::conj(rho.values[static_cast<std::size_t>(k - m)]);
        r.values[static_cast<std::size_t>(m + static_cast<long>(lags))] = s0 * acc * delta;
    }
    return r;
}

SampledPath power_spectrum(const ProcessSpec& spec, double omega_max, std::size_t n) {
    if (spec.system.imaginary_count() > 0)
        throw std::invalid_argument(
            "power_spectrum: system has imaginary poles; the process is not stationary");
    if (n < 2) throw std::invalid_argument("power_spectrum: need at least two points");
    const double s0 = second_cumulant_or_throw(spec.noise, "power_spectrum");
    SampledPath phi(-omega_max, 2.0 * omega_max / static_cast<double>(n - 1), n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx l_hat = spec.system.transfer(-phi.time(k));
        phi.values[k] = s0 / std::norm(l_hat);
    }
    return phi;
}

cplx wavelet_exponent(const LevyExponent& f, const SampledPath& kernel, double omega) {
    require_real(kernel, "wavelet_exponent");
    return exponent_quadrature(f, kernel, omega);
}

cplx joint_wavelet_char(const LevyExponent& f, const SampledPath& kernel1,
                        const SampledPath& kernel2, double omega1, double omega2) {
    require_real(kernel1, "joint_wavelet_char");
    require_real(kernel2, "joint_wavelet_char");
    const double delta = kernel1.delta;
    if (std::abs(kernel2.delta - delta) > 1e-12 * delta)
        throw std::invalid_argument("joint_wavelet_char: kernel grid spacings differ");
    const double offset = (kernel2.t_start - kernel1.t_start) / delta;
    const long shift = std::lround(offset);
    if (std::abs(offset - static_cast<double>(shift)) > 1e-6)
        throw std::invalid_argument("joint_wavelet_char: kernel grids are not aligned");

    const long lo = std::min(0L, shift);
    const long hi = std::max(static_cast<long>(kernel1.size()),
                             shift + static_cast<long>(kernel2.size()));
    cplx acc(0.0, 0.0);
    for (long k = lo; k < hi; ++k) {
        const double w = (k == lo || k + 1 == hi) ? 0.5 : 1.0;
        double v = 0.0;
        if (k >= 0 && k < static_cast<long>(kernel1.size()))
            v += omega1 * kernel1.values[static_cast<std::size_t>(k)].real();
        const long k2 = k - shift;
        if (k2 >= 0 && k2 < static_cast<long>(kernel2.size()))
            v += omega2 * kernel2.values[static_cast<std::size_t>(k2)].real();
        acc += w * f.eval(v);
    }
    return std::exp(acc * delta);
}

CharGrid increment_char(const NoiseSpec& noise, double omega_max, std::size_t n) {
    CharGrid grid = sample_exponent(noise.exponent, omega_max, n);
    for (auto& v : grid.values) v = std::exp(v);
    return grid;
}

} // namespace ssp
