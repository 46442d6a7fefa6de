#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ssp {

struct QuadratureSpec {
    double abs_tol = 1e-9;
    int max_depth = 48;
    double log_floor = -40.0;    ///< lower limit of the log-substituted inner panel, ln(a_min)
    int panels_inner = 4096;     ///< Simpson panels on the log-substituted segment
    int osc_terms = 64;          ///< half-period terms for the oscillatory tail
};

/// Adaptive Simpson on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

/// Composite Simpson with n panels (n rounded up to even).
double composite_simpson(const std::function<double(double)>& f, double a, double b, int n);

/// 15-point Gauss-Legendre on [a, b].
double gauss15(const std::function<double(double)>& f, double a, double b);

/// Integral over [a0, inf) of cos(omega t) * g(t) (use_sin: sin instead),
/// for a smooth decaying envelope g, computed by alternating half-period
/// partial integrals accelerated with repeated Euler averaging. omega > 0.
double oscillatory_tail(const std::function<double(double)>& g, double a0, double omega,
                        bool use_sin, int terms = 64);

} // namespace ssp
