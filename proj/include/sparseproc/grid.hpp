#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssp {

using cplx = std::complex<double>;

/// Uniformly sampled signal segment: origin, spacing, complex values.
struct SampledPath {
    double t_start = 0.0;
    double delta = 1.0;
    std::vector<cplx> values;

    SampledPath() = default;
    SampledPath(double t0, double dt, std::size_t n)
        : t_start(t0), delta(dt), values(n, cplx(0.0, 0.0)) {
        if (dt <= 0.0) throw std::invalid_argument("SampledPath: delta must be > 0");
    }

    std::size_t size() const { return values.size(); }
    double time(std::size_t k) const { return t_start + delta * static_cast<double>(k); }
    double t_end() const { return time(values.empty() ? 0 : values.size() - 1); }

    /// Index of the grid point nearest to t; throws if t lies outside the grid.
    std::size_t index_of(double t) const {
        const double pos = (t - t_start) / delta;
        const long k = std::lround(pos);
        if (k < 0 || static_cast<std::size_t>(k) >= values.size())
            throw std::out_of_range("SampledPath: time outside grid");
        return static_cast<std::size_t>(k);
    }

    std::vector<double> real_values() const {
        std::vector<double> out(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
        return out;
    }

    double max_abs_imag() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
        return m;
    }
};

/// Grid inner product <x, y> = sum x[k] conj(y[k]) delta.
cplx inner_product(const SampledPath& x, const SampledPath& y);

/// L2 norm on the grid.
double norm_l2(const SampledPath& x);

/// Samples of a characteristic function (frequency domain) or a pdf
/// (amplitude domain) on a uniform axis symmetric about 0.
struct CharGrid {
    enum class Domain { Frequency, Amplitude };

    double axis_start = 0.0;
    double axis_step = 1.0;
    std::vector<cplx> values;
    Domain domain = Domain::Frequency;
    double mc_standard_error = 0.0; ///< 1/sqrt(n) bound when Monte-Carlo estimated.

    std::size_t size() const { return values.size(); }
    double axis(std::size_t k) const { return axis_start + axis_step * static_cast<double>(k); }
};

/// CSV export: (axis, re, im) for frequency grids, (x, pdf) for amplitude
/// grids. A leading '#' comment line records the passed-through config note.
void write_csv(const CharGrid& grid, const std::string& path, const std::string& comment = "");
void write_csv(const SampledPath& path_data, const std::string& path, const std::string& comment = "");

} // namespace ssp
