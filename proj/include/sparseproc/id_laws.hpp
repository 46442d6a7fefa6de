#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparseproc/grid.hpp"
#include "sparseproc/quadrature.hpp"
#include "sparseproc/rng.hpp"

namespace ssp {

/// Amplitude law for compound Poisson jumps. All shipped laws are symmetric
/// about zero, so their characteristic functions are real.
struct AmplitudePdf {
    enum class Tag { Gaussian, Laplace, Uniform };

    Tag tag = Tag::Gaussian;
    double param = 1.0; ///< sigma / scale / half-width

    double pdf(double a) const;
    double char_fn(double w) const;
    double char_deriv(double w) const;
    double sample(CounterRng& rng) const;
    double second_moment() const;
    double abs_moment() const;
    /// Radius beyond which the pdf is numerically negligible.
    double support_radius() const;
    std::string name() const;
};

/// Lévy density tag + parameters; the jump part of a triplet.
struct LevyDensity {
    enum class Tag { None, Poisson, Laplace, Sas, Custom };

    Tag tag = Tag::None;
    double lambda = 1.0;                      ///< Poisson rate
    AmplitudePdf amplitude;                   ///< Poisson amplitude law
    double alpha = 1.5;                       ///< SaS stability index
    std::function<double(double)> custom_v;   ///< custom v(a), a != 0
    bool custom_symmetric = true;

    static LevyDensity none() { return {}; }
    static LevyDensity poisson(double lambda, AmplitudePdf amp);
    static LevyDensity laplace();
    static LevyDensity sas(double alpha);
    static LevyDensity custom(std::function<double(double)> v, bool symmetric = true);

    /// v(a); throws for Tag::None.
    double density(double a) const;
};

/// Lévy triplet (b1, b2, v). uses_compensated_form selects the fully
/// compensated integral over the simplified finite/symmetric-measure form.
struct LevyTriplet {
    double b1 = 0.0;
    double b2 = 0.0;
    LevyDensity density;
    bool uses_compensated_form = true;

    /// Checks b2 >= 0, the min(1, a^2)-weighted admissibility integral, and
    /// unit mass of Poisson amplitude laws. Throws on violation.
    void validate(const QuadratureSpec& quad = {}) const;

    /// sigma0^2 = b2 + int a^2 v(a) da; throws if the second moment diverges.
    double second_cumulant() const;
};

/// A Lévy exponent: the log-characteristic function of an id law. Closed
/// forms are used when the kind allows it; Numeric falls back to the
/// Lévy-Khintchine quadrature of the stored triplet.
class LevyExponent {
public:
    enum class Kind { Gaussian, Sas, Poisson, Laplace, Numeric };

    LevyExponent() = default; ///< defaults to the gaussian exponent

    static LevyExponent gaussian();
    static LevyExponent sas(double alpha);
    static LevyExponent poisson(double lambda, AmplitudePdf amp = {});
    static LevyExponent laplace();
    static LevyExponent numeric(LevyTriplet triplet, QuadratureSpec quad = {});

    Kind kind() const { return kind_; }
    double sas_alpha() const { return alpha_; }
    double poisson_lambda() const { return lambda_; }
    const AmplitudePdf& amplitude() const { return amplitude_; }

    cplx eval(double w) const;
    cplx deriv(double w) const;

    /// Matching triplet (for quadrature cross-checks); identity for Numeric.
    LevyTriplet triplet() const;

    std::string name() const;

private:
    Kind kind_ = Kind::Gaussian;
    double alpha_ = 2.0;
    double lambda_ = 1.0;
    AmplitudePdf amplitude_;
    std::optional<LevyTriplet> triplet_;
    QuadratureSpec quad_;
};

cplx eval_exponent(const LevyExponent& f, double w);

/// Numeric evaluation of the Lévy-Khintchine integral for the triplet.
/// The Lévy-density integral is split at |a| = 1: a log-spaced panel tames
/// the singularity at the origin, the tail is handled as an Euler-accelerated
/// oscillatory integral.
cplx levy_khintchine(const LevyTriplet& triplet, double w, const QuadratureSpec& quad = {});

/// sup over the probe grid of (|f(u)| + |u||f'(u)|) / |u|^p.
double p_admissibility_margin(const LevyExponent& f, double p, const std::vector<double>& probe_grid);

/// Log-spaced probe grid with n points per side covering [lo, hi].
std::vector<double> admissibility_probe_grid(double lo = 1e-3, double hi = 1e3, int n = 61);

/// Ramachandran-Wolfe moment test: E|X|^p < inf iff the |a| > 1 tail of
/// |a|^p v(a) is integrable.
bool moment_finite(const LevyTriplet& triplet, double p);

/// Poisson mass-at-zero index e^{-lambda}.
double sparsity_index(double lambda);

struct PdfGridSpec {
    double x_max = 5.0;          ///< range of interest, |x| <= x_max
    std::size_t n = 4096;        ///< FFT size (power of two)
    double omega_max = 0.0;      ///< 0 = derive from n and the alias span
    bool allow_window = false;   ///< apply a raised-cosine window on slow decay
};

struct PdfResult {
    CharGrid pdf;                ///< amplitude-domain samples
    double mass_defect = 0.0;    ///< |1 - sum pdf * dx| before renormalization
    double min_value = 0.0;      ///< most negative raw sample
    bool windowed = false;
    double edge_magnitude = 0.0; ///< |e^f| at the frequency-grid edge
};

/// FFT inversion of exp(f) sampled on a symmetric frequency grid.
PdfResult char_to_pdf(const CharGrid& exponent_samples, const PdfGridSpec& spec = {});

/// Sample f on a symmetric frequency grid of n points (power of two).
CharGrid sample_exponent(const LevyExponent& f, double omega_max, std::size_t n);

/// Convenience: pick a frequency grid for the exponent and invert.
PdfResult invert_exponent(const LevyExponent& f, const PdfGridSpec& spec = {});

/// Linear interpolation of a pdf grid at x.
double pdf_at(const CharGrid& pdf, double x);

struct PsdResult {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

/// Finite-dimensional positive-definiteness probe: assembles the matrix
/// [exp(tau f(w_m - w_n))] and reports its smallest eigenvalue.
PsdResult psd_check(const std::function<cplx(double)>& f, double tau,
                    const std::vector<double>& omega_points, double eig_tol = 1e-10);
PsdResult psd_check(const LevyExponent& f, double tau,
                    const std::vector<double>& omega_points, double eig_tol = 1e-10);

} // namespace ssp
