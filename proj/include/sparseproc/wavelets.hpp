#pragma once

#include <vector>

#include "sparseproc/synthesis.hpp"

namespace ssp {

/// Metadata for one basis function of a wavelet basis.
struct WaveletAtom {
    int scale = 1;        ///< 1 = finest; 0 marks the coarse scaling layer
    long shift = 0;       ///< block index within the scale
    bool coarse = false;  ///< scaling-function layer
    bool boundary = false;///< truncated at the interval end and re-orthonormalized
};

/// Orthonormal wavelet basis on a uniform grid. Columns are normalized in
/// the delta-weighted inner product (sum c[k]^2 delta = 1), so analysis
/// coefficients approximate continuous-domain inner products <s, psi>.
/// The operator tag is L = D - slope Id; slope = 0 is the Haar basis.
struct WaveletBasis {
    double t_start = 0.0;
    double delta = 1.0;
    std::size_t n = 0;
    int levels = 1;
    double slope = 0.0;
    bool boundary_corrected = false;

    std::vector<std::vector<double>> columns; ///< n columns of length n
    std::vector<WaveletAtom> atoms;           ///< parallel to columns

    /// Per-scale innovation-smoothing kernel prototypes: the exact discrete
    /// kernel mapping driving-noise cells to the shift-0 coefficient of the
    /// scale. For Haar these are staircase triangles.
    std::vector<SampledPath> kernels;
};

/// Orthonormal Haar basis with the given number of dyadic scales; the grid
/// length must be divisible by 2^levels.
WaveletBasis haar_basis(const GridSpec& grid, int levels);

/// Operator-like basis for L = D - alpha Id with real alpha <= 0: two-sided
/// exponential-weighted blocks whose analysis annihilates e^{alpha t}
/// exactly, orthonormalized by QR ordered fine-to-coarse (which preserves
/// both the annihilation property and the block supports). alpha = 0
/// reproduces the Haar basis exactly.
WaveletBasis espline_basis(cplx alpha, const GridSpec& grid, int levels);

/// Analysis against every basis function (delta-weighted inner products) and
/// the inverse expansion; synthesize(analyze(x)) = x for orthonormal bases.
std::vector<double> analyze(const WaveletBasis& basis, const SampledPath& x);
SampledPath synthesize(const WaveletBasis& basis, const std::vector<double>& coeffs);

/// Dense orthonormal transform of a length-N sample vector (plain l2 inner
/// products); eigenvalues are populated for the KLT only.
struct MatrixBasis {
    std::vector<std::vector<double>> columns;
    std::vector<double> eigenvalues;
};

/// Eigenbasis of the symmetric Toeplitz covariance [r(|m-n|)], descending
/// eigenvalue order. Throws if the matrix is not positive semidefinite or if
/// fewer than N correlation lags are supplied.
MatrixBasis klt_basis(const std::vector<double>& r, std::size_t N);

/// Orthonormal DCT-II matrix.
MatrixBasis dct_basis(std::size_t N);

std::vector<double> analyze(const MatrixBasis& basis, const std::vector<double>& x);
std::vector<double> synthesize(const MatrixBasis& basis, const std::vector<double>& coeffs);

/// Relative quadratic error of the best M-term approximation: keep the M
/// largest-magnitude coefficients and measure the dropped energy fraction.
double m_term_error(const SampledPath& x, const WaveletBasis& basis, std::size_t M);
double m_term_error(const std::vector<double>& x, const MatrixBasis& basis, std::size_t M);

} // namespace ssp
