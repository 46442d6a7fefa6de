#include "sparseproc/quadrature.hpp"

#include <array>
#include <vector>

namespace ssp {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// Nodes/weights for 15-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0,
    0.2011940939974345223006283033946,
    0.3941513470775633698972073709810,
    0.5709721726085388475372267372539,
    0.7244177313601700474161860546139,
    0.8482065834104272162006483207742,
    0.9372733924007059043077589477102,
    0.9879925180204854284895657185866};
constexpr std::array<double, 8> kGlWeights = {
    0.2025782419255612728806201999675,
    0.1984314853271115764561183264438,
    0.1861610000155622110268005618664,
    0.1662692058169939335532008604812,
    0.1395706779261543144478047945110,
    0.1071592204671719350118695466858,
    0.0703660474881081247092674164507,
    0.0307532419961172683546283935772};

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double composite_simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double sum = kGlWeights[0] * f(c);
    for (int i = 1; i < 8; ++i)
        sum += kGlWeights[i] * (f(c + h * kGlNodes[i]) + f(c - h * kGlNodes[i]));
    return sum * h;
}

double oscillatory_tail(const std::function<double(double)>& g, double a0, double omega,
                        bool use_sin, int terms) {
    if (omega <= 0.0) throw std::invalid_argument("oscillatory_tail: omega must be > 0");
    const double pi = 3.1415926535897932384626433832795;
    auto f = [&](double t) { return (use_sin ? std::sin(omega * t) : std::cos(omega * t)) * g(t); };

    // First zero of the trigonometric factor at or beyond a0.
    const double phase0 = use_sin ? 0.0 : 0.5 * pi;
    double k = std::ceil((a0 * omega - phase0) / pi);
    double z = (phase0 + k * pi) / omega;
    if (z < a0) z = (phase0 + (k + 1.0) * pi) / omega;

    auto panel = [&](double lo, double hi) {
        // Subdivide so the envelope is resolved even when the half-period is long.
        const int sub = std::max(1, static_cast<int>(std::ceil((hi - lo) / 2.0)));
        double s = 0.0;
        const double h = (hi - lo) / sub;
        for (int i = 0; i < sub; ++i) s += gauss15(f, lo + i * h, lo + (i + 1) * h);
        return s;
    };

    double head = (z > a0) ? panel(a0, z) : 0.0;

    // Half-period integrals form an alternating series; Euler-accelerate it.
    const double half = pi / omega;
    std::vector<double> partial;
    partial.reserve(static_cast<std::size_t>(terms));
    double acc = 0.0;
    double scale = std::abs(head);
    for (int i = 0; i < terms; ++i) {
        const double term = panel(z + i * half, z + (i + 1) * half);
        acc += term;
        partial.push_back(acc);
        scale = std::max(scale, std::abs(acc));
        if (i > 2 && std::abs(term) < 1e-17 * std::max(scale, 1e-300)) break;
    }
    // If the series already converged numerically, the plain partial sum is
    // exact to round-off; averaging in early partials would only hurt.
    const std::size_t n = partial.size();
    if (n < static_cast<std::size_t>(terms) || n < 8) return head + partial.back();

    // Slowly decaying alternating tail: repeated averaging (Euler transform)
    // of the later partial sums.
    std::vector<double> row(partial.begin() + static_cast<std::ptrdiff_t>(n / 2), partial.end());
    while (row.size() > 1) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    return head + row.front();
}

} // namespace ssp
