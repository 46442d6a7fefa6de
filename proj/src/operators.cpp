#include "sparseproc/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssp {

namespace {

cplx polyval(const std::vector<cplx>& coeffs, cplx z) {
    // coeffs are c_0..c_M
    cplx acc(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

bool imaginary_pole(const cplx& pole) {
    const double tol = 1e-9 * std::max(1.0, std::abs(pole));
    return std::abs(pole.real()) <= tol;
}

/// Move imaginary poles to the back, preserving relative order, and make
/// sure there is one boundary point per imaginary pole (default 0).
void normalize(SystemSpec& spec) {
    std::stable_partition(spec.poles.begin(), spec.poles.end(),
                          [](const cplx& p) { return !imaginary_pole(p); });
    std::size_t n0 = 0;
    for (const auto& p : spec.poles)
        if (imaginary_pole(p)) ++n0;
    spec.boundary_points.resize(n0, 0.0);
    if (spec.b.empty()) spec.b = {cplx(1.0)};
}

std::vector<cplx> coeffs_from_poles(const std::vector<cplx>& poles) {
    // Expand prod (z - alpha_k); returns a_0..a_{N-1} with a_N = 1 implied.
    std::vector<cplx> c{cplx(1.0)};
    for (const auto& p : poles) {
        std::vector<cplx> next(c.size() + 1, cplx(0.0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= p * c[i];
        }
        c = std::move(next);
    }
    c.pop_back(); // drop the leading 1
    return c;
}

std::size_t grid_index(const SampledPath& x, double t, const char* what) {
    const double pos = (t - x.t_start) / x.delta;
    const double rounded = std::round(pos);
    if (rounded < 0.0 || rounded >= static_cast<double>(x.values.size()) ||
        std::abs(pos - rounded) > 1e-6)
        throw std::invalid_argument(std::string(what) + ": point is not on the grid");
    return static_cast<std::size_t>(rounded);
}

} // namespace

SystemSpec SystemSpec::from_poles(std::vector<cplx> poles, std::vector<cplx> b,
                                  std::vector<double> boundary_points) {
    SystemSpec spec;
    spec.poles = std::move(poles);
    spec.b = std::move(b);
    spec.boundary_points = std::move(boundary_points);
    normalize(spec);
    spec.a = coeffs_from_poles(spec.poles);
    return spec;
}

SystemSpec SystemSpec::from_coeffs(std::vector<cplx> a, std::vector<cplx> b,
                                   std::vector<double> boundary_points) {
    SystemSpec spec;
    spec.a = a;
    spec.b = std::move(b);
    spec.boundary_points = std::move(boundary_points);
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("SystemSpec: order zero system");
    // Companion-matrix roots of z^N + a_{N-1} z^{N-1} + ... + a_0.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i + 1 < n; ++i)
        m(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -a[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("SystemSpec: polynomial root finding failed");
    spec.poles.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        spec.poles[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    normalize(spec);
    // Consistency: the reordered poles must reproduce the coefficients.
    const auto back = coeffs_from_poles(spec.poles);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(back[i] - a[i]) > 1e-6 * std::max(1.0, std::abs(a[i])))
            throw std::runtime_error("SystemSpec: root refinement drifted from coefficients");
    spec.a = a;
    return spec;
}

std::size_t SystemSpec::imaginary_count() const {
    std::size_t n0 = 0;
    for (const auto& p : poles)
        if (imaginary_pole(p)) ++n0;
    return n0;
}

bool SystemSpec::is_imaginary(const cplx& pole) const { return imaginary_pole(pole); }

cplx SystemSpec::transfer(double omega) const {
    const cplx jw(0.0, omega);
    cplx num(1.0, 0.0);
    for (const auto& p : poles) num *= (jw - p);
    const cplx den = polyval(b, jw);
    return num / den;
}

SampledPath green_function(cplx alpha, const SampledPath& shape) {
    SampledPath g;
    g.t_start = shape.t_start;
    g.delta = shape.delta;
    g.values.assign(shape.values.size(), cplx(0.0, 0.0));
    const bool causal = alpha.real() <= 0.0;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        const double t = g.time(k);
        if (causal && t >= 0.0)
            g.values[k] = std::exp(alpha * t);
        else if (!causal && t <= 0.0)
            g.values[k] = -std::exp(alpha * t);
    }
    return g;
}

SampledPath stable_inverse(cplx alpha, const SampledPath& x, Direction dir) {
    if (alpha.real() == 0.0)
        throw std::invalid_argument(
            "stable_inverse: pole on the imaginary axis; use the corrected integrator");
    const std::size_t n = x.values.size();
    SampledPath y;
    y.t_start = x.t_start;
    y.delta = x.delta;
    y.values.assign(n, cplx(0.0, 0.0));
    if (n == 0) return y;
    const double h = 0.5 * x.delta;

    const bool causal_kernel = alpha.real() < 0.0;
    // The adjoint runs the conjugated recursion in the opposite direction and
    // is the exact conjugate transpose of the forward map.
    const bool run_causal = causal_kernel == (dir == Direction::Forward);
    cplx q = causal_kernel ? std::exp(alpha * x.delta) : std::exp(-alpha * x.delta);
    if (dir == Direction::Adjoint) q = std::conj(q);
    const double sign = causal_kernel ? 1.0 : -1.0;

    const auto& v = x.values;
    auto& out = y.values;
    if (run_causal) {
        out[0] = sign * h * v[0];
        for (std::size_t k = 1; k < n; ++k)
            out[k] = q * out[k - 1] + sign * h * (v[k] + q * v[k - 1]);
    } else {
        out[n - 1] = sign * h * v[n - 1];
        for (std::size_t k = n - 1; k-- > 0;)
            out[k] = q * out[k + 1] + sign * h * (v[k] + q * v[k + 1]);
    }
    return y;
}

namespace {

/// Cumulative trapezoid sum: y[0] = (h/2) x[0], y[k] = y[k-1] + (h/2)(x[k] + x[k-1]).
void cumtrapz(std::vector<cplx>& v, double delta) {
    const double h = 0.5 * delta;
    cplx prev = v.empty() ? cplx(0.0) : v[0];
    if (!v.empty()) v[0] = h * v[0];
    for (std::size_t k = 1; k < v.size(); ++k) {
        const cplx cur = v[k];
        v[k] = v[k - 1] + h * (cur + prev);
        prev = cur;
    }
}

/// Exact transpose of cumtrapz: the same trapezoid recursion run from the
/// right (the forward seed gives x[0] full weight, making the transpose
/// uniform).
void cumtrapz_transpose(std::vector<cplx>& v, double delta) {
    if (v.empty()) return;
    const double h = 0.5 * delta;
    const std::size_t n = v.size();
    cplx next = v[n - 1];
    v[n - 1] = h * v[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        const cplx cur = v[k];
        v[k] = v[k + 1] + h * (cur + next);
        next = cur;
    }
}

void modulate(SampledPath& x, double omega0, double phase_origin) {
    if (omega0 == 0.0) return;
    for (std::size_t k = 0; k < x.values.size(); ++k) {
        const double phi = omega0 * (x.time(k) - phase_origin);
        x.values[k] *= cplx(std::cos(phi), std::sin(phi));
    }
}

} // namespace

SampledPath integrator(double omega0, const SampledPath& x) {
    SampledPath y = x;
    modulate(y, -omega0, 0.0);
    cumtrapz(y.values, y.delta);
    modulate(y, omega0, 0.0);
    return y;
}

SampledPath integrator_adjoint(double omega0, const SampledPath& x) {
    SampledPath y = x;
    modulate(y, -omega0, 0.0);
    cumtrapz_transpose(y.values, y.delta);
    modulate(y, omega0, 0.0);
    return y;
}

SampledPath corrected_integrator(double omega0, double t0, const SampledPath& x) {
    const std::size_t k0 = grid_index(x, t0, "corrected_integrator");
    SampledPath y = integrator(omega0, x);
    const cplx pinned = y.values[k0];
    for (std::size_t k = 0; k < y.values.size(); ++k) {
        const double phi = omega0 * (y.time(k) - t0);
        y.values[k] -= cplx(std::cos(phi), std::sin(phi)) * pinned;
    }
    return y;
}

SampledPath corrected_adjoint(double omega0, double t0, const SampledPath& x) {
    const std::size_t k0 = grid_index(x, t0, "corrected_adjoint");
    SampledPath y = integrator_adjoint(omega0, x);
    // Transpose of the rank-one correction in corrected_integrator.
    cplx weight(0.0, 0.0);
    for (std::size_t k = 0; k < x.values.size(); ++k) {
        const double phi = omega0 * (x.time(k) - t0);
        weight += cplx(std::cos(phi), -std::sin(phi)) * x.values[k];
    }
    SampledPath unit;
    unit.t_start = x.t_start;
    unit.delta = x.delta;
    unit.values.assign(x.values.size(), cplx(0.0, 0.0));
    unit.values[k0] = 1.0;
    const SampledPath column = integrator_adjoint(omega0, unit);
    for (std::size_t k = 0; k < y.values.size(); ++k)
        y.values[k] -= column.values[k] * weight;
    return y;
}

SampledPath differential(const std::vector<cplx>& q, const SampledPath& x, Direction dir) {
    const std::size_t n = x.values.size();
    SampledPath out;
    out.t_start = x.t_start;
    out.delta = x.delta;
    out.values.assign(n, cplx(0.0, 0.0));

    // The zero-padded central-difference matrix is exactly antisymmetric, so
    // the transpose of b_m D^m is conj(b_m) (-D)^m.
    auto derivative = [&](const std::vector<cplx>& v) {
        std::vector<cplx> d(n, cplx(0.0, 0.0));
        const double inv = 1.0 / (2.0 * x.delta);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx right = (k + 1 < n) ? v[k + 1] : cplx(0.0);
            const cplx left = (k >= 1) ? v[k - 1] : cplx(0.0);
            d[k] = (right - left) * inv;
        }
        return d;
    };

    std::vector<cplx> power(x.values);
    for (std::size_t m = 0; m < q.size(); ++m) {
        cplx coeff = q[m];
        if (dir == Direction::Adjoint) {
            coeff = std::conj(coeff);
            if (m % 2) coeff = -coeff;
        }
        for (std::size_t k = 0; k < n; ++k) out.values[k] += coeff * power[k];
        if (m + 1 < q.size()) power = derivative(power);
    }
    return out;
}

OperatorChain factorize(const SystemSpec& spec, bool adjoint) {
    OperatorChain chain;
    chain.adjoint = adjoint;

    std::vector<OperatorFactor> lsi;
    if (spec.b.size() > 1 || std::abs(spec.b.front() - cplx(1.0)) > 0.0) {
        OperatorFactor f;
        f.kind = OperatorFactor::Kind::Differential;
        f.q = spec.b;
        lsi.push_back(std::move(f));
    }
    std::vector<OperatorFactor> integrators;
    std::size_t boundary_index = 0;
    for (const auto& p : spec.poles) {
        if (spec.is_imaginary(p)) {
            OperatorFactor f;
            f.kind = OperatorFactor::Kind::CorrectedIntegrator;
            f.omega0 = p.imag();
            if (boundary_index >= spec.boundary_points.size())
                throw std::invalid_argument("factorize: missing boundary point");
            f.t0 = spec.boundary_points[boundary_index++];
            integrators.push_back(std::move(f));
        } else {
            OperatorFactor f;
            f.kind = p.real() < 0.0 ? OperatorFactor::Kind::StableInverse
                                    : OperatorFactor::Kind::AntiCausalInverse;
            f.alpha = p;
            lsi.push_back(std::move(f));
        }
    }
    if (!adjoint) {
        chain.factors = std::move(lsi);
        chain.factors.insert(chain.factors.end(), integrators.begin(), integrators.end());
    } else {
        chain.factors.assign(integrators.rbegin(), integrators.rend());
        chain.factors.insert(chain.factors.end(), lsi.rbegin(), lsi.rend());
    }
    return chain;
}

SampledPath apply_chain(const OperatorChain& chain, const SampledPath& x) {
    SampledPath cur = x;
    const Direction dir = chain.adjoint ? Direction::Adjoint : Direction::Forward;
    for (const auto& f : chain.factors) {
        switch (f.kind) {
            case OperatorFactor::Kind::StableInverse:
            case OperatorFactor::Kind::AntiCausalInverse:
                cur = stable_inverse(f.alpha, cur, dir);
                break;
            case OperatorFactor::Kind::CorrectedIntegrator:
                cur = chain.adjoint ? corrected_adjoint(f.omega0, f.t0, cur)
                                    : corrected_integrator(f.omega0, f.t0, cur);
                break;
            case OperatorFactor::Kind::Differential:
                cur = differential(f.q, cur, dir);
                break;
        }
    }
    return cur;
}

} // namespace ssp
