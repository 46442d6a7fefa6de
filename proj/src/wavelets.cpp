#include "sparseproc/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace ssp {

namespace {

void check_compatible(const GridSpec& grid, int levels) {
    if (levels < 1) throw std::invalid_argument("wavelet basis: need at least one scale");
    if (grid.n == 0 || grid.n % (std::size_t(1) << levels) != 0)
        throw std::invalid_argument(
            "wavelet basis: grid length must be a multiple of 2^levels");
}

/// Exact discrete innovation-smoothing kernel of one basis column under the
/// operator L = D - slope Id: phi[j] = sum_{m >= j} col[m] e^{slope (t_m - t_j)} delta.
/// Mean/exponential annihilation makes it vanish left of the column support.
SampledPath column_kernel(const WaveletBasis& basis, const std::vector<double>& col) {
    const std::size_t n = basis.n;
    std::vector<double> phi(n, 0.0);
    const double q = std::exp(basis.slope * basis.delta);
    double acc = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        acc = acc * q + col[j] * basis.delta;
        phi[j] = acc;
    }
    double peak = 0.0;
    for (double v : phi) peak = std::max(peak, std::abs(v));
    std::size_t lo = 0, hi = n;
    while (lo < n && std::abs(phi[lo]) <= 1e-12 * peak) ++lo;
    while (hi > lo && std::abs(phi[hi - 1]) <= 1e-12 * peak) --hi;
    // keep one zero sample on each side so trapezoid quadrature gives full
    // weight to every staircase cell
    if (lo > 0) --lo;
    if (hi < n) ++hi;
    SampledPath out(basis.t_start + basis.delta * static_cast<double>(lo), basis.delta,
                    hi > lo ? hi - lo : 1);
    for (std::size_t j = lo; j < hi; ++j) out.values[j - lo] = phi[j];
    return out;
}

void fill_kernels(WaveletBasis& basis) {
    basis.kernels.clear();
    for (int scale = 1; scale <= basis.levels; ++scale) {
        for (std::size_t j = 0; j < basis.atoms.size(); ++j) {
            if (basis.atoms[j].scale == scale && !basis.atoms[j].coarse &&
                basis.atoms[j].shift == 0) {
                basis.kernels.push_back(column_kernel(basis, basis.columns[j]));
                break;
            }
        }
    }
}

} // namespace

WaveletBasis haar_basis(const GridSpec& grid, int levels) {
    check_compatible(grid, levels);
    WaveletBasis basis;
    basis.t_start = grid.t_start;
    basis.delta = grid.delta;
    basis.n = grid.n;
    basis.levels = levels;
    basis.slope = 0.0;

    for (int scale = 1; scale <= levels; ++scale) {
        const std::size_t block = std::size_t(1) << scale;
        const double h = 1.0 / std::sqrt(static_cast<double>(block) * grid.delta);
        for (std::size_t k = 0; k * block < grid.n; ++k) {
            std::vector<double> col(grid.n, 0.0);
            for (std::size_t m = 0; m < block; ++m)
                col[k * block + m] = m < block / 2 ? h : -h;
            basis.columns.push_back(std::move(col));
            basis.atoms.push_back({scale, static_cast<long>(k), false, false});
        }
    }
    const std::size_t block = std::size_t(1) << levels;
    const double h = 1.0 / std::sqrt(static_cast<double>(block) * grid.delta);
    for (std::size_t k = 0; k * block < grid.n; ++k) {
        std::vector<double> col(grid.n, 0.0);
        for (std::size_t m = 0; m < block; ++m) col[k * block + m] = h;
        basis.columns.push_back(std::move(col));
        basis.atoms.push_back({0, static_cast<long>(k), true, false});
    }
    fill_kernels(basis);
    return basis;
}

WaveletBasis espline_basis(cplx alpha, const GridSpec& grid, int levels) {
    if (std::abs(alpha.imag()) > 0.0)
        throw std::invalid_argument("espline_basis: complex slopes are not supported");
    if (alpha.real() > 0.0)
        throw std::invalid_argument("espline_basis: slope must satisfy Re(alpha) <= 0");
    check_compatible(grid, levels);
    const double a = alpha.real();

    WaveletBasis basis;
    basis.t_start = grid.t_start;
    basis.delta = grid.delta;
    basis.n = grid.n;
    basis.levels = levels;
    basis.slope = a;

    // raw columns: within each scale-i block the taps are e^{-a t} with a
    // sign flip at the half point, so <col, e^{a t}> = 0 exactly; the coarse
    // layer carries the reproduced exponential e^{a t} itself.
    Eigen::MatrixXd raw(static_cast<Eigen::Index>(grid.n), static_cast<Eigen::Index>(grid.n));
    raw.setZero();
    Eigen::Index j = 0;
    for (int scale = 1; scale <= levels; ++scale) {
        const std::size_t block = std::size_t(1) << scale;
        for (std::size_t k = 0; k * block < grid.n; ++k, ++j) {
            double norm2 = 0.0;
            for (std::size_t m = 0; m < block; ++m) {
                const double t = grid.delta * static_cast<double>(m);
                const double v = std::exp(-a * t) * (m < block / 2 ? 1.0 : -1.0);
                raw(static_cast<Eigen::Index>(k * block + m), j) = v;
                norm2 += v * v * grid.delta;
            }
            raw.col(j) /= std::sqrt(norm2);
            basis.atoms.push_back({scale, static_cast<long>(k), false, false});
        }
    }
    const std::size_t block = std::size_t(1) << levels;
    for (std::size_t k = 0; k * block < grid.n; ++k, ++j) {
        double norm2 = 0.0;
        for (std::size_t m = 0; m < block; ++m) {
            const double t = grid.delta * static_cast<double>(m);
            const double v = std::exp(a * t);
            raw(static_cast<Eigen::Index>(k * block + m), j) = v;
            norm2 += v * v * grid.delta;
        }
        raw.col(j) /= std::sqrt(norm2);
        basis.atoms.push_back({0, static_cast<long>(k), true, false});
    }

    // QR ordered fine to coarse: each orthonormalized column is a combination
    // of itself and earlier (finer) columns, so exponential annihilation and
    // block supports survive.
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ();
    const double root_delta = std::sqrt(grid.delta);
    basis.columns.assign(grid.n, std::vector<double>(grid.n, 0.0));
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(grid.n); ++c) {
        const double sign = raw.col(c).dot(q.col(c)) < 0.0 ? -1.0 : 1.0;
        for (Eigen::Index rix = 0; rix < static_cast<Eigen::Index>(grid.n); ++rix) {
            double v = sign * q(rix, c) / root_delta;
            if (std::abs(v) < 1e-14 / root_delta) v = 0.0;
            basis.columns[static_cast<std::size_t>(c)][static_cast<std::size_t>(rix)] = v;
        }
    }
    fill_kernels(basis);
    return basis;
}

std::vector<double> analyze(const WaveletBasis& basis, const SampledPath& x) {
    if (x.values.size() != basis.n)
        throw std::invalid_argument("analyze: signal length does not match the basis");
    std::vector<double> coeffs(basis.columns.size());
    for (std::size_t c = 0; c < basis.columns.size(); ++c) {
        double acc = 0.0;
        const auto& col = basis.columns[c];
        for (std::size_t k = 0; k < basis.n; ++k) acc += x.values[k].real() * col[k];
        coeffs[c] = acc * basis.delta;
    }
    return coeffs;
}

SampledPath synthesize(const WaveletBasis& basis, const std::vector<double>& coeffs) {
    if (coeffs.size() != basis.columns.size())
        throw std::invalid_argument("synthesize: coefficient count does not match the basis");
    SampledPath x(basis.t_start, basis.delta, basis.n);
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        if (coeffs[c] == 0.0) continue;
        const auto& col = basis.columns[c];
        for (std::size_t k = 0; k < basis.n; ++k) x.values[k] += coeffs[c] * col[k];
    }
    return x;
}

MatrixBasis klt_basis(const std::vector<double>& r, std::size_t N) {
    if (r.size() < N)
        throw std::invalid_argument("klt_basis: need at least N correlation lags");
    Eigen::MatrixXd cov(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (std::size_t m = 0; m < N; ++m)
        for (std::size_t n = 0; n < N; ++n)
            cov(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
                r[m > n ? m - n : n - m];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const double top = std::max(1.0, eig.eigenvalues().maxCoeff());
    if (eig.eigenvalues().minCoeff() < -1e-10 * top)
        throw std::invalid_argument("klt_basis: correlation sequence is not positive semidefinite");
    MatrixBasis basis;
    basis.columns.assign(N, std::vector<double>(N));
    basis.eigenvalues.resize(N);
    for (std::size_t c = 0; c < N; ++c) {
        const auto src = static_cast<Eigen::Index>(N - 1 - c); // descending order
        basis.eigenvalues[c] = eig.eigenvalues()(src);
        for (std::size_t k = 0; k < N; ++k)
            basis.columns[c][k] = eig.eigenvectors()(static_cast<Eigen::Index>(k), src);
    }
    return basis;
}

MatrixBasis dct_basis(std::size_t N) {
    if (N == 0) throw std::invalid_argument("dct_basis: empty basis");
    MatrixBasis basis;
    basis.columns.assign(N, std::vector<double>(N));
    const double pi = 3.14159265358979323846;
    for (std::size_t j = 0; j < N; ++j) {
        const double c = std::sqrt((j == 0 ? 1.0 : 2.0) / static_cast<double>(N));
        for (std::size_t k = 0; k < N; ++k)
            basis.columns[j][k] =
                c * std::cos(pi * (static_cast<double>(k) + 0.5) * static_cast<double>(j) /
                             static_cast<double>(N));
    }
    return basis;
}

std::vector<double> analyze(const MatrixBasis& basis, const std::vector<double>& x) {
    const std::size_t n = basis.columns.size();
    if (x.size() != n) throw std::invalid_argument("analyze: signal length does not match");
    std::vector<double> coeffs(n);
    for (std::size_t c = 0; c < n; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += x[k] * basis.columns[c][k];
        coeffs[c] = acc;
    }
    return coeffs;
}

std::vector<double> synthesize(const MatrixBasis& basis, const std::vector<double>& coeffs) {
    const std::size_t n = basis.columns.size();
    if (coeffs.size() != n)
        throw std::invalid_argument("synthesize: coefficient count does not match");
    std::vector<double> x(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        if (coeffs[c] == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) x[k] += coeffs[c] * basis.columns[c][k];
    }
    return x;
}

namespace {

double tail_energy_ratio(std::vector<double> coeffs, std::size_t M) {
    if (M > coeffs.size())
        throw std::invalid_argument("m_term_error: M exceeds the coefficient count");
    double total = 0.0;
    for (double c : coeffs) total += c * c;
    if (total == 0.0) return 0.0;
    std::sort(coeffs.begin(), coeffs.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    double kept = 0.0;
    for (std::size_t i = 0; i < M; ++i) kept += coeffs[i] * coeffs[i];
    return std::max(0.0, (total - kept) / total);
}

} // namespace

double m_term_error(const SampledPath& x, const WaveletBasis& basis, std::size_t M) {
    return tail_energy_ratio(analyze(basis, x), M);
}

double m_term_error(const std::vector<double>& x, const MatrixBasis& basis, std::size_t M) {
    return tail_energy_ratio(analyze(basis, x), M);
}

} // namespace ssp
