#pragma once

#include <vector>

#include "sparseproc/grid.hpp"

namespace ssp {

/// Rational whitening system L = P_N(D)/Q_M(D), described by the monic
/// denominator-polynomial coefficients a_0..a_{N-1} (a_N = 1), numerator
/// coefficients b_0..b_M, and the computed poles. Poles within
/// imag_tolerance of the imaginary axis are classified as purely imaginary
/// and ordered last; each carries one boundary point.
struct SystemSpec {
    std::vector<cplx> a;              ///< a_0..a_{N-1}
    std::vector<cplx> b{cplx(1.0)};   ///< b_0..b_M
    std::vector<cplx> poles;          ///< roots of P_N, imaginary ones last
    std::vector<double> boundary_points; ///< one per imaginary pole
    double imag_tolerance = 0.0;      ///< resolved per pole; see classify

    static SystemSpec from_poles(std::vector<cplx> poles, std::vector<cplx> b = {cplx(1.0)},
                                 std::vector<double> boundary_points = {});
    static SystemSpec from_coeffs(std::vector<cplx> a, std::vector<cplx> b = {cplx(1.0)},
                                  std::vector<double> boundary_points = {});

    std::size_t order() const { return poles.size(); }
    std::size_t imaginary_count() const; ///< n0, the trailing imaginary poles
    bool is_imaginary(const cplx& pole) const;

    /// Frequency response P_N(j w) / Q_M(j w).
    cplx transfer(double omega) const;
};

/// One factor of an inverse-operator cascade.
struct OperatorFactor {
    enum class Kind {
        StableInverse,      ///< convolution with the causal Green kernel, Re(alpha) < 0
        AntiCausalInverse,  ///< anti-causal branch, Re(alpha) > 0
        CorrectedIntegrator,///< shift-variant right inverse pinning a zero at t0
        Differential        ///< Q_M(D) by central differences
    };
    Kind kind = Kind::StableInverse;
    cplx alpha;
    double omega0 = 0.0;
    double t0 = 0.0;
    std::vector<cplx> q; ///< Differential coefficients b_0..b_M
};

/// Ordered cascade; factors are listed in application order. The adjoint
/// chain applies the conjugate-transposed factors in reversed order.
struct OperatorChain {
    std::vector<OperatorFactor> factors;
    bool adjoint = false;
};

/// Green kernel of (D - alpha Id) sampled on the grid of `shape`: causal
/// e^{alpha t} 1_{t>=0} when Re(alpha) <= 0, anti-causal -e^{alpha t} 1_{t<=0}
/// when Re(alpha) > 0.
SampledPath green_function(cplx alpha, const SampledPath& shape);

enum class Direction { Forward, Adjoint };

/// Convolution with the Green kernel of (D - alpha Id) via the exact
/// first-order recursion with trapezoid cell quadrature; the adjoint is the
/// exact conjugate transpose of the discrete forward map.
SampledPath stable_inverse(cplx alpha, const SampledPath& x, Direction dir);

/// I_{w0} x(t) = e^{j w0 t} int_{-inf}^t e^{-j w0 tau} x(tau) dtau by
/// modulated cumulative trapezoid sums.
SampledPath integrator(double omega0, const SampledPath& x);

/// Exact transpose of `integrator`: integrates from t to +inf with conjugate
/// modulation.
SampledPath integrator_adjoint(double omega0, const SampledPath& x);

/// Right inverse of (D - j w0 Id) with the boundary condition out(t0) = 0.
SampledPath corrected_integrator(double omega0, double t0, const SampledPath& x);

/// Exact transpose of `corrected_integrator`; maps compactly supported
/// inputs to two-sided-decaying outputs.
SampledPath corrected_adjoint(double omega0, double t0, const SampledPath& x);

/// Q(D) with q = b_0..b_M applied by central differences (zero padding past
/// the ends). The adjoint flips the sign of every odd-order term and
/// conjugates the coefficients, which is the exact transpose.
SampledPath differential(const std::vector<cplx>& q, const SampledPath& x, Direction dir);

/// Build the forward (adjoint = false) or adjoint cascade of the system's
/// inverse: differential part and stable inverses first, then one corrected
/// integrator per imaginary pole; the adjoint chain reverses the order.
OperatorChain factorize(const SystemSpec& spec, bool adjoint);

SampledPath apply_chain(const OperatorChain& chain, const SampledPath& x);

} // namespace ssp
