#include "sparseproc/id_laws.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "sparseproc/fft.hpp"

namespace ssp {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;
} // namespace

// ---------------------------------------------------------------------------
// AmplitudePdf

double AmplitudePdf::pdf(double a) const {
    switch (tag) {
        case Tag::Gaussian:
            return std::exp(-0.5 * a * a / (param * param)) / (param * kSqrt2Pi);
        case Tag::Laplace:
            return 0.5 / param * std::exp(-std::abs(a) / param);
        case Tag::Uniform:
            return std::abs(a) <= param ? 0.5 / param : 0.0;
    }
    return 0.0;
}

double AmplitudePdf::char_fn(double w) const {
    switch (tag) {
        case Tag::Gaussian:
            return std::exp(-0.5 * param * param * w * w);
        case Tag::Laplace:
            return 1.0 / (1.0 + param * param * w * w);
        case Tag::Uniform:
            return w == 0.0 ? 1.0 : std::sin(param * w) / (param * w);
    }
    return 1.0;
}

double AmplitudePdf::char_deriv(double w) const {
    switch (tag) {
        case Tag::Gaussian:
            return -param * param * w * std::exp(-0.5 * param * param * w * w);
        case Tag::Laplace: {
            const double d = 1.0 + param * param * w * w;
            return -2.0 * param * param * w / (d * d);
        }
        case Tag::Uniform: {
            if (w == 0.0) return 0.0;
            const double x = param * w;
            return (std::cos(x) - std::sin(x) / x) / w;
        }
    }
    return 0.0;
}

double AmplitudePdf::sample(CounterRng& rng) const {
    switch (tag) {
        case Tag::Gaussian:
            return param * rng.normal();
        case Tag::Laplace:
            return param * (rng.exponential() - rng.exponential());
        case Tag::Uniform:
            return rng.uniform(-param, param);
    }
    return 0.0;
}

double AmplitudePdf::second_moment() const {
    switch (tag) {
        case Tag::Gaussian:
            return param * param;
        case Tag::Laplace:
            return 2.0 * param * param;
        case Tag::Uniform:
            return param * param / 3.0;
    }
    return 0.0;
}

double AmplitudePdf::abs_moment() const {
    switch (tag) {
        case Tag::Gaussian:
            return param * 2.0 / kSqrt2Pi;
        case Tag::Laplace:
            return param;
        case Tag::Uniform:
            return 0.5 * param;
    }
    return 0.0;
}

double AmplitudePdf::support_radius() const {
    switch (tag) {
        case Tag::Gaussian:
            return 12.0 * param;
        case Tag::Laplace:
            return 50.0 * param;
        case Tag::Uniform:
            return param;
    }
    return 1.0;
}

std::string AmplitudePdf::name() const {
    switch (tag) {
        case Tag::Gaussian:
            return "gaussian(" + std::to_string(param) + ")";
        case Tag::Laplace:
            return "laplace(" + std::to_string(param) + ")";
        case Tag::Uniform:
            return "uniform(" + std::to_string(param) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// LevyDensity

LevyDensity LevyDensity::poisson(double lambda, AmplitudePdf amp) {
    if (lambda < 0.0) throw std::invalid_argument("poisson density: lambda must be >= 0");
    LevyDensity d;
    d.tag = Tag::Poisson;
    d.lambda = lambda;
    d.amplitude = amp;
    return d;
}

LevyDensity LevyDensity::laplace() {
    LevyDensity d;
    d.tag = Tag::Laplace;
    return d;
}

LevyDensity LevyDensity::sas(double alpha) {
    if (alpha <= 0.0 || alpha >= 2.0)
        throw std::invalid_argument("sas density: alpha must be in (0, 2)");
    LevyDensity d;
    d.tag = Tag::Sas;
    d.alpha = alpha;
    return d;
}

LevyDensity LevyDensity::custom(std::function<double(double)> v, bool symmetric) {
    LevyDensity d;
    d.tag = Tag::Custom;
    d.custom_v = std::move(v);
    d.custom_symmetric = symmetric;
    return d;
}

double LevyDensity::density(double a) const {
    switch (tag) {
        case Tag::None:
            throw std::logic_error("LevyDensity::density: no density");
        case Tag::Poisson:
            return lambda * amplitude.pdf(a);
        case Tag::Laplace:
            return std::exp(-std::abs(a)) / std::abs(a);
        case Tag::Sas: {
            const double c = std::sin(0.5 * kPi * alpha) / kPi;
            return c / std::pow(std::abs(a), alpha + 1.0);
        }
        case Tag::Custom:
            return custom_v(a);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// LevyTriplet

void LevyTriplet::validate(const QuadratureSpec& quad) const {
    if (b2 < 0.0) throw std::invalid_argument("LevyTriplet: b2 must be >= 0");
    if (density.tag == LevyDensity::Tag::Poisson) {
        const double r = density.amplitude.support_radius();
        const double mass = adaptive_simpson([&](double a) { return density.amplitude.pdf(a); },
                                             -r, r, quad.abs_tol);
        if (std::abs(mass - 1.0) > 1e-6)
            throw std::invalid_argument("LevyTriplet: Poisson amplitude pdf mass != 1");
    }
    if (density.tag == LevyDensity::Tag::Custom) {
        // min(1, a^2)-weighted admissibility integral, checked numerically on
        // a log-spaced grid over both half-lines.
        auto weighted = [&](double u, double sign) {
            const double a = sign * std::exp(u);
            return std::min(1.0, a * a) * density.density(a) * std::exp(u);
        };
        double total = 0.0;
        for (double sign : {-1.0, 1.0}) {
            total += composite_simpson([&](double u) { return weighted(u, sign); },
                                       quad.log_floor, 12.0, quad.panels_inner);
        }
        if (!std::isfinite(total) || total > 1e12)
            throw std::invalid_argument("LevyTriplet: admissibility integral diverges");
    }
}

double LevyTriplet::second_cumulant() const {
    double jumps = 0.0;
    switch (density.tag) {
        case LevyDensity::Tag::None:
            break;
        case LevyDensity::Tag::Poisson:
            jumps = density.lambda * density.amplitude.second_moment();
            break;
        case LevyDensity::Tag::Laplace:
            // int a^2 e^{-|a|}/|a| da = 2 int_0^inf a e^{-a} da = 2
            jumps = 2.0;
            break;
        case LevyDensity::Tag::Sas:
            throw std::domain_error("second_cumulant: SaS law has infinite variance");
        case LevyDensity::Tag::Custom: {
            if (!moment_finite(*this, 2.0))
                throw std::domain_error("second_cumulant: second moment diverges");
            auto integrand = [&](double u, double sign) {
                const double a = sign * std::exp(u);
                return a * a * density.density(a) * std::exp(u);
            };
            for (double sign : {-1.0, 1.0})
                jumps += composite_simpson([&](double u) { return integrand(u, sign); }, -40.0,
                                           16.0, 8192);
            break;
        }
    }
    return b2 + jumps;
}

// ---------------------------------------------------------------------------
// Lévy-Khintchine quadrature

namespace {

/// int_0^1 g(a) v(a) da with a log-spaced grid; g must vanish fast enough at
/// the origin to tame the density singularity.
double inner_log_integral(const std::function<double(double)>& g,
                          const std::function<double(double)>& v, const QuadratureSpec& quad) {
    auto integrand = [&](double u) {
        const double a = std::exp(u);
        return g(a) * v(a) * a;
    };
    // The integrand decays exponentially in u at a density-dependent rate
    // (e.g. 2 - alpha for stable laws), which can be slow; extend the cutoff
    // until the un-integrated tail is negligible.
    double lo = quad.log_floor;
    const double t1 = std::abs(integrand(lo));
    if (t1 > 0.0) {
        const double t2 = std::abs(integrand(lo + 5.0));
        const double rate = (t2 > t1) ? std::log(t2 / t1) / 5.0 : 0.0;
        if (rate > 1e-3) {
            const double tail = t1 / rate;
            if (tail > 1e-14) lo -= std::log(tail / 1e-14) / rate;
        } else {
            lo = 8.0 * quad.log_floor;
        }
        lo = std::max(lo, -5000.0);
    }
    const int panels =
        quad.panels_inner * static_cast<int>(std::ceil(lo / quad.log_floor));
    return composite_simpson(integrand, lo, 0.0, panels);
}

/// int_1^inf v(a) da by log substitution.
double tail_mass(const std::function<double(double)>& v, double log_upper,
                 const QuadratureSpec& quad) {
    auto integrand = [&](double u) {
        const double a = std::exp(u);
        const double val = v(a) * a;
        return std::isfinite(val) ? val : 0.0;
    };
    return composite_simpson(integrand, 0.0, log_upper, quad.panels_inner);
}

/// cos(x) - 1 without cancellation near x = 0.
double cos_minus_one(double x) {
    const double s = std::sin(0.5 * x);
    return -2.0 * s * s;
}

/// sin(x) - x without cancellation near x = 0.
double sin_minus_x(double x) {
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        return -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return std::sin(x) - x;
}

/// int_0^inf (cos(a w) - 1) v(a) da for a density with a possible origin
/// singularity; w >= 0.
double half_line_cos(const std::function<double(double)>& v, double w, double log_upper,
                     const QuadratureSpec& quad) {
    if (w == 0.0) return 0.0;
    const double inner =
        inner_log_integral([&](double a) { return cos_minus_one(a * w); }, v, quad);
    const double mass = tail_mass(v, log_upper, quad);
    const double osc = oscillatory_tail(v, 1.0, w, /*use_sin=*/false, quad.osc_terms);
    return inner + osc - mass;
}

/// int_0^inf (sin(a w) - a w 1_{a<1}) v(a) da (compensated = true) or
/// int_0^inf sin(a w) v(a) da; w may be negative (odd in w).
double half_line_sin(const std::function<double(double)>& v, double w, double log_upper,
                     const QuadratureSpec& quad, bool compensated) {
    if (w == 0.0) return 0.0;
    const double aw = std::abs(w);
    double inner;
    if (compensated)
        inner = inner_log_integral([&](double a) { return sin_minus_x(a * aw); }, v, quad);
    else
        inner = inner_log_integral([&](double a) { return std::sin(a * aw); }, v, quad);
    const double osc = oscillatory_tail(v, 1.0, aw, /*use_sin=*/true, quad.osc_terms);
    const double value = inner + osc;
    return w < 0.0 ? -value : value;
}

double log_upper_for(const LevyDensity& d) {
    if (d.tag == LevyDensity::Tag::Sas) return std::max(40.0, 30.0 / d.alpha);
    return 40.0;
}

} // namespace

cplx levy_khintchine(const LevyTriplet& triplet, double w, const QuadratureSpec& quad) {
    const cplx base(-0.5 * triplet.b2 * w * w, triplet.b1 * w);
    switch (triplet.density.tag) {
        case LevyDensity::Tag::None:
            return base;
        case LevyDensity::Tag::Poisson: {
            // Finite measure: direct quadrature of Eq-8 style integrand over
            // the amplitude support.
            const auto& amp = triplet.density.amplitude;
            const double r = amp.support_radius();
            // Composite rule: an adaptive scheme can miss the bump entirely when
            // the pdf is concentrated far from the probe points. Resolution
            // tracks the oscillation count of the trigonometric factor.
            const int panels =
                std::max(4096, 64 * static_cast<int>(std::ceil(r * std::abs(w) / kPi)));
            const double re = composite_simpson(
                [&](double a) { return cos_minus_one(a * w) * amp.pdf(a); }, -r, r, panels);
            const double im = composite_simpson(
                [&](double a) { return std::sin(a * w) * amp.pdf(a); }, -r, r, panels);
            return base + triplet.density.lambda * cplx(re, im);
        }
        default:
            break;
    }
    const auto& d = triplet.density;
    const double log_upper = log_upper_for(d);
    const bool symmetric = d.tag != LevyDensity::Tag::Custom || d.custom_symmetric;
    auto v_pos = [&](double a) { return d.density(a); };
    if (symmetric) {
        // Odd parts cancel; only the cosine integral survives, doubled.
        const double re = 2.0 * half_line_cos(v_pos, std::abs(w), log_upper, quad);
        if (!std::isfinite(re))
            throw std::runtime_error("levy_khintchine: quadrature failed (admissibility?)");
        return base + re;
    }
    auto v_neg = [&](double a) { return d.density(-a); };
    const bool comp = triplet.uses_compensated_form;
    const double re =
        half_line_cos(v_pos, std::abs(w), log_upper, quad) +
        half_line_cos(v_neg, std::abs(w), log_upper, quad);
    const double im =
        half_line_sin(v_pos, w, log_upper, quad, comp) -
        half_line_sin(v_neg, w, log_upper, quad, comp);
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::runtime_error("levy_khintchine: quadrature failed (admissibility?)");
    return base + cplx(re, im);
}

// ---------------------------------------------------------------------------
// LevyExponent

LevyExponent LevyExponent::gaussian() {
    LevyExponent f;
    f.kind_ = Kind::Gaussian;
    return f;
}

LevyExponent LevyExponent::sas(double alpha) {
    if (alpha <= 0.0 || alpha >= 2.0)
        throw std::invalid_argument("LevyExponent::sas: alpha must be in (0, 2)");
    LevyExponent f;
    f.kind_ = Kind::Sas;
    f.alpha_ = alpha;
    return f;
}

LevyExponent LevyExponent::poisson(double lambda, AmplitudePdf amp) {
    if (lambda < 0.0) throw std::invalid_argument("LevyExponent::poisson: lambda must be >= 0");
    LevyExponent f;
    f.kind_ = Kind::Poisson;
    f.lambda_ = lambda;
    f.amplitude_ = amp;
    return f;
}

LevyExponent LevyExponent::laplace() {
    LevyExponent f;
    f.kind_ = Kind::Laplace;
    return f;
}

LevyExponent LevyExponent::numeric(LevyTriplet triplet, QuadratureSpec quad) {
    triplet.validate(quad);
    LevyExponent f;
    f.kind_ = Kind::Numeric;
    f.triplet_ = std::move(triplet);
    f.quad_ = quad;
    return f;
}

cplx LevyExponent::eval(double w) const {
    switch (kind_) {
        case Kind::Gaussian:
            return cplx(-0.5 * w * w, 0.0);
        case Kind::Sas:
            return cplx(-std::pow(std::abs(w), alpha_) / std::tgamma(alpha_ + 1.0), 0.0);
        case Kind::Poisson:
            return cplx(lambda_ * (amplitude_.char_fn(w) - 1.0), 0.0);
        case Kind::Laplace:
            return cplx(-std::log1p(w * w), 0.0);
        case Kind::Numeric:
            return levy_khintchine(*triplet_, w, quad_);
    }
    return cplx(0.0, 0.0);
}

cplx LevyExponent::deriv(double w) const {
    switch (kind_) {
        case Kind::Gaussian:
            return cplx(-w, 0.0);
        case Kind::Sas: {
            if (w == 0.0) {
                if (alpha_ > 1.0) return cplx(0.0, 0.0);
                return cplx(-std::numeric_limits<double>::infinity(), 0.0);
            }
            const double mag = alpha_ * std::pow(std::abs(w), alpha_ - 1.0) / std::tgamma(alpha_ + 1.0);
            return cplx(-(w > 0.0 ? mag : -mag), 0.0);
        }
        case Kind::Poisson:
            return cplx(lambda_ * amplitude_.char_deriv(w), 0.0);
        case Kind::Laplace:
            return cplx(-2.0 * w / (1.0 + w * w), 0.0);
        case Kind::Numeric: {
            const double h = std::max(1e-6, 1e-6 * std::abs(w));
            return (eval(w + h) - eval(w - h)) / (2.0 * h);
        }
    }
    return cplx(0.0, 0.0);
}

LevyTriplet LevyExponent::triplet() const {
    LevyTriplet t;
    switch (kind_) {
        case Kind::Gaussian:
            t.b2 = 1.0;
            break;
        case Kind::Sas:
            t.density = LevyDensity::sas(alpha_);
            break;
        case Kind::Poisson:
            t.density = LevyDensity::poisson(lambda_, amplitude_);
            break;
        case Kind::Laplace:
            t.density = LevyDensity::laplace();
            break;
        case Kind::Numeric:
            return *triplet_;
    }
    return t;
}

std::string LevyExponent::name() const {
    switch (kind_) {
        case Kind::Gaussian:
            return "gaussian";
        case Kind::Sas:
            return "sas(" + std::to_string(alpha_) + ")";
        case Kind::Poisson:
            return "poisson(" + std::to_string(lambda_) + "," + amplitude_.name() + ")";
        case Kind::Laplace:
            return "laplace";
        case Kind::Numeric:
            return "numeric";
    }
    return "?";
}

cplx eval_exponent(const LevyExponent& f, double w) { return f.eval(w); }

// ---------------------------------------------------------------------------
// Admissibility, moments, sparsity

double p_admissibility_margin(const LevyExponent& f, double p,
                              const std::vector<double>& probe_grid) {
    if (p < 1.0) throw std::invalid_argument("p_admissibility_margin: p must be >= 1");
    if (probe_grid.empty()) throw std::invalid_argument("p_admissibility_margin: empty grid");
    double sup = 0.0;
    for (double u : probe_grid) {
        if (u == 0.0) continue;
        const double fu = std::abs(f.eval(u));
        const double dfu = std::abs(f.deriv(u));
        if (std::isnan(fu) || std::isnan(dfu))
            throw std::runtime_error("p_admissibility_margin: exponent evaluation failed");
        sup = std::max(sup, (fu + std::abs(u) * dfu) / std::pow(std::abs(u), p));
    }
    return sup;
}

std::vector<double> admissibility_probe_grid(double lo, double hi, int n) {
    if (lo <= 0.0 || hi <= lo || n < 2) throw std::invalid_argument("probe grid: bad parameters");
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    return grid;
}

bool moment_finite(const LevyTriplet& triplet, double p) {
    if (p <= 0.0) throw std::invalid_argument("moment_finite: p must be > 0");
    switch (triplet.density.tag) {
        case LevyDensity::Tag::None:
            return true;
        case LevyDensity::Tag::Poisson:
            return true; // all shipped amplitude laws have finite moments of all orders
        case LevyDensity::Tag::Laplace:
            return true;
        case LevyDensity::Tag::Sas:
            return p < triplet.density.alpha;
        case LevyDensity::Tag::Custom: {
            // Numeric tail test: compare int_1^A |a|^p v over growing spans.
            auto tail = [&](double log_upper) {
                double total = 0.0;
                for (double sign : {-1.0, 1.0}) {
                    total += composite_simpson(
                        [&](double u) {
                            const double a = sign * std::exp(u);
                            const double val =
                                std::pow(std::abs(a), p) * triplet.density.density(a) * std::exp(u);
                            return std::isfinite(val) ? val : 0.0;
                        },
                        0.0, log_upper, 4096);
                }
                return total;
            };
            // Convergent tails add geometrically shrinking increments on a log
            // axis; divergent ones add constant or growing increments.
            const double i1 = tail(10.0);
            const double i2 = tail(20.0);
            const double i3 = tail(40.0);
            const double i4 = tail(50.0);
            if (!std::isfinite(i4)) return false;
            const double early = i2 - i1;
            const double late = i4 - i3;
            return late <= 0.5 * early + 1e-12;
        }
    }
    return false;
}

double sparsity_index(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("sparsity_index: lambda must be > 0");
    return std::exp(-lambda);
}

// ---------------------------------------------------------------------------
// Characteristic-function inversion

CharGrid sample_exponent(const LevyExponent& f, double omega_max, std::size_t n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("sample_exponent: n must be a power of two");
    CharGrid grid;
    grid.domain = CharGrid::Domain::Frequency;
    grid.axis_step = 2.0 * omega_max / static_cast<double>(n);
    grid.axis_start = -omega_max;
    grid.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) grid.values[k] = f.eval(grid.axis(k));
    return grid;
}

PdfResult char_to_pdf(const CharGrid& exponent_samples, const PdfGridSpec& spec) {
    const std::size_t n = exponent_samples.size();
    if (!is_power_of_two(n) || n < 8)
        throw std::invalid_argument("char_to_pdf: grid size must be a power of two >= 8");
    if (exponent_samples.domain != CharGrid::Domain::Frequency)
        throw std::invalid_argument("char_to_pdf: expected a frequency grid");
    const double dw = exponent_samples.axis_step;
    if (std::abs(exponent_samples.axis_start + 0.5 * static_cast<double>(n) * dw) > 1e-9 * dw * n)
        throw std::invalid_argument("char_to_pdf: grid must be symmetric about 0");

    PdfResult result;
    std::vector<cplx> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = std::exp(exponent_samples.values[k]);
    result.edge_magnitude = std::max(std::abs(g.front()), std::abs(g.back()));
    if (result.edge_magnitude > 1e-12 && spec.allow_window) {
        for (std::size_t k = 0; k < n; ++k) {
            const double c = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(k) / n);
            g[k] *= c;
        }
        result.windowed = true;
    }

    // p(x_m) = dw/(2 pi) (-1)^{m + n/2} FFT[g_k (-1)^k]_m on the conjugate grid.
    for (std::size_t k = 0; k < n; ++k)
        if (k % 2) g[k] = -g[k];
    fft_radix2(g, /*inverse=*/false);

    const double dx = 2.0 * kPi / (static_cast<double>(n) * dw);
    CharGrid pdf;
    pdf.domain = CharGrid::Domain::Amplitude;
    pdf.axis_step = dx;
    pdf.axis_start = -0.5 * static_cast<double>(n) * dx;
    pdf.values.resize(n);
    const double scale = dw / (2.0 * kPi);
    const int half_parity = static_cast<int>(n / 2) % 2;
    double min_value = 0.0;
    double mass = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const int sign = ((static_cast<int>(m) + half_parity) % 2) ? -1 : 1;
        double p = sign * scale * g[m].real();
        min_value = std::min(min_value, p);
        if (p < 0.0) p = 0.0;
        pdf.values[m] = p;
        mass += p;
    }
    mass *= dx;
    result.mass_defect = std::abs(1.0 - mass);
    result.min_value = min_value;
    if (mass > 0.0)
        for (auto& v : pdf.values) v /= mass;
    result.pdf = std::move(pdf);
    return result;
}

PdfResult invert_exponent(const LevyExponent& f, const PdfGridSpec& spec) {
    double omega_max = spec.omega_max;
    if (omega_max <= 0.0) {
        // The amplitude-grid pitch is pi / omega_max, so the span also
        // controls interpolation accuracy between pdf samples.
        omega_max = 64.0;
        while (omega_max < 65536.0 && std::exp(f.eval(omega_max).real()) > 1e-12) omega_max *= 2.0;
    }
    // Keep the amplitude-domain period large enough to make aliasing of the
    // pdf tails negligible on |x| <= x_max.
    std::size_t n = spec.n;
    const double needed = 40.0 * spec.x_max * omega_max / kPi;
    while (static_cast<double>(n) < needed) n *= 2;
    return char_to_pdf(sample_exponent(f, omega_max, n), spec);
}

double pdf_at(const CharGrid& pdf, double x) {
    if (pdf.domain != CharGrid::Domain::Amplitude)
        throw std::invalid_argument("pdf_at: expected an amplitude grid");
    const double pos = (x - pdf.axis_start) / pdf.axis_step;
    if (pos < 0.0 || pos > static_cast<double>(pdf.size() - 1)) return 0.0;
    std::size_t k = static_cast<std::size_t>(pos);
    if (k + 1 >= pdf.size()) return pdf.values.back().real();
    const double frac = pos - static_cast<double>(k);
    if (k == 0 || k + 2 >= pdf.size()) {
        return (1.0 - frac) * pdf.values[k].real() + frac * pdf.values[k + 1].real();
    }
    // Four-point Lagrange interpolation; linear is too coarse for smooth pdfs
    // at the grid pitch the inversion produces.
    const double s = frac;
    const double ym1 = pdf.values[k - 1].real(), y0 = pdf.values[k].real(),
                 y1 = pdf.values[k + 1].real(), y2 = pdf.values[k + 2].real();
    return ym1 * (-s * (s - 1.0) * (s - 2.0) / 6.0) + y0 * ((s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0) +
           y1 * (-(s + 1.0) * s * (s - 2.0) / 2.0) + y2 * ((s + 1.0) * s * (s - 1.0) / 6.0);
}

// ---------------------------------------------------------------------------
// Positive-definiteness probe

PsdResult psd_check(const std::function<cplx(double)>& f, double tau,
                    const std::vector<double>& omega_points, double eig_tol) {
    const std::size_t n = omega_points.size();
    if (n == 0) throw std::invalid_argument("psd_check: empty point set");
    Eigen::MatrixXcd m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                std::exp(tau * f(omega_points[r] - omega_points[c]));
    // Symmetrize to wash out quadrature round-off before the Hermitian solve.
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    PsdResult result;
    result.min_eigenvalue = solver.eigenvalues().minCoeff();
    result.psd = result.min_eigenvalue >= -eig_tol;
    return result;
}

PsdResult psd_check(const LevyExponent& f, double tau, const std::vector<double>& omega_points,
                    double eig_tol) {
    return psd_check([&f](double w) { return f.eval(w); }, tau, omega_points, eig_tol);
}

} // namespace ssp
