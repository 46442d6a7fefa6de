#pragma once

#include <functional>

#include "sparseproc/id_laws.hpp"
#include "sparseproc/synthesis.hpp"

namespace ssp {

/// Test function on the process grid. Dirac weights are represented as
/// 1/delta-scaled single-cell indicators, so delta-based formulas are
/// O(delta)-approximate.
struct TestFunction {
    enum class Tag { Generic, Rect, Delta, BSpline, Wavelet };

    SampledPath samples;
    Tag tag = Tag::Generic;
    double delta_t = 0.0; ///< location, Tag::Delta only
    int scale = 0;        ///< Tag::Wavelet only
    int shift = 0;        ///< Tag::Wavelet only

    static TestFunction dirac(const GridSpec& grid, double t, cplx weight = cplx(1.0));
    static TestFunction rect(const GridSpec& grid, double t_lo, double t_hi,
                             cplx height = cplx(1.0));
    static TestFunction from_path(SampledPath p, Tag tag = Tag::Generic);
};

/// The effective observation kernel u = L^{-1*} phi, evaluated on a grid
/// padded so that the spread of the stable factors' adjoints has decayed to
/// round-off at the ends.
SampledPath adjoint_response(const ProcessSpec& spec, const TestFunction& phi);

/// Characteristic form exp(int f(u(t)) dt) with u = adjoint_response, by
/// trapezoid quadrature on the padded grid.
cplx char_form(const ProcessSpec& spec, const TestFunction& phi);

/// Marginal density of s(t): inverts g(w) = int f(-w u(tau)) dtau where u is
/// the adjoint response of a Dirac weight at t.
PdfResult first_order_pdf(const ProcessSpec& spec, double t, const PdfGridSpec& out = {});

/// sigma0^2 <L^{-1*}phi1, L^{-1*}phi2>; requires a finite-variance noise.
cplx covariance_form(const ProcessSpec& spec, const TestFunction& phi1, const TestFunction& phi2);

/// Stationary autocorrelation r_s(tau) = sigma0^2 (conj(rho_L) * rho_L^v)(tau)
/// on tau in [-tau_max, tau_max] with the grid spacing of the spec. Requires
/// a system without imaginary poles and a finite-variance noise.
SampledPath autocorrelation(const ProcessSpec& spec, double tau_max);

/// Stationary power spectrum sigma0^2 / |L_hat(-w)|^2 on n points covering
/// [-omega_max, omega_max].
SampledPath power_spectrum(const ProcessSpec& spec, double omega_max, std::size_t n);

/// Modified exponent of a smoothed observation: f_i(w) = int f(w phi(t)) dt
/// by trapezoid quadrature on the kernel's own grid.
cplx wavelet_exponent(const LevyExponent& f, const SampledPath& kernel, double omega);

/// Joint characteristic function of two smoothed observations:
/// exp(int f(w1 phi1(t) + w2 phi2(t)) dt). Kernels must share the grid
/// spacing; their supports are aligned on a common axis internally.
cplx joint_wavelet_char(const LevyExponent& f, const SampledPath& kernel1,
                        const SampledPath& kernel2, double omega1, double omega2);

/// Characteristic function e^{f(w)} of unit-lag increments on a symmetric
/// frequency grid of n points (power of two).
CharGrid increment_char(const NoiseSpec& noise, double omega_max, std::size_t n);

} // namespace ssp
