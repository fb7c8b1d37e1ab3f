#include "geokit/roots.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geokit {

namespace {

constexpr double kDegreeReduction = 1e-14;
constexpr double kClusterWidth = 1e-7;

double max_abs_coeff(const PolyCoeffs& p) {
    double m = 0.0;
    for (double c : p.c) m = std::max(m, std::abs(c));
    return m;
}

// Newton refinement against the full polynomial. Near-multiple roots only
// converge linearly, so the loop runs until the residual target is met or
// ten steps are spent; oversized corrections are clamped.
double polish(const PolyCoeffs& p, double x) {
    const double scale = std::max(max_abs_coeff(p), 1.0);
    for (int i = 0; i < 10; ++i) {
        const double f = p.eval(x);
        if (std::abs(f) <= 1e-13 * scale) break;
        const double fp = p.derivative_eval(x);
        if (fp == 0.0) break;
        double step = f / fp;
        if (!std::isfinite(step)) break;
        const double limit = 0.5 * (1.0 + std::abs(x));
        step = std::clamp(step, -limit, limit);
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
        x -= step;
    }
    return x;
}

std::vector<double> cluster_sorted(std::vector<double> roots) {
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    std::size_t i = 0;
    while (i < roots.size()) {
        std::size_t j = i + 1;
        double sum = roots[i];
        while (j < roots.size() && roots[j] - roots[j - 1] < kClusterWidth) {
            sum += roots[j];
            ++j;
        }
        out.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return out;
}

std::vector<double> finish(const PolyCoeffs& p, std::vector<double> roots) {
    for (double& r : roots) r = polish(p, r);
    return cluster_sorted(std::move(roots));
}

std::vector<double> solve_linear_monic(double c0) { return {-c0}; }

// Monic x^2 + bx + c, via the cancellation-free q formulation.
std::vector<double> solve_quadratic_monic(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0) return {};
    if (disc == 0.0) return {-0.5 * b};
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    std::vector<double> roots{q};
    if (q != 0.0) roots.push_back(c / q);
    else roots.push_back(0.0);
    return roots;
}

// Monic x^3 + ax^2 + bx + c, trig/Cardano hybrid on the depressed cubic.
std::vector<double> solve_cubic_monic(double a, double b, double c) {
    const double shift = a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = c + a * (2.0 * a * a - 9.0 * b) / 27.0;

    const double scale = std::max({std::abs(p), std::abs(q), 1e-300});
    if (std::abs(p) <= 1e-14 * scale && std::abs(q) <= 1e-14 * scale) {
        return {-shift};  // triple root
    }

    const double disc = 0.25 * q * q + p * p * p / 27.0;
    std::vector<double> roots;
    if (disc > 0.0) {
        // One real root.
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-0.5 * q + sq);
        const double v = std::cbrt(-0.5 * q - sq);
        roots.push_back(u + v - shift);
    } else if (disc == 0.0) {
        const double u = std::cbrt(-0.5 * q);
        roots.push_back(2.0 * u - shift);
        roots.push_back(-u - shift);
    } else {
        // Three real roots: p < 0 here.
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) - shift);
        }
    }
    return roots;
}

// Neumark's factorization of the monic quartic x^4 + ax^3 + bx^2 + cx + d
// into two real quadratics, choosing the resolvent root that keeps both
// factor discriminants safely real and taking the square root of the
// better-conditioned one (the other follows from gH + Gh = c).
std::vector<double> solve_quartic_monic(double a, double b, double c, double d) {
    if (d == 0.0) {
        std::vector<double> roots = solve_cubic_monic(a, b, c);
        roots.push_back(0.0);
        return roots;
    }

    const double p = -2.0 * b;
    const double q = b * b + a * c - 4.0 * d;
    const double r = c * c - a * b * c + a * a * d;
    std::vector<double> resolvent = solve_cubic_monic(p, q, r);

    const double scale2 = std::max({a * a, std::abs(b), std::abs(d)});
    const double clamp_tol = 1e-12 * std::max(scale2, 1.0);

    double best_score = -std::numeric_limits<double>::infinity();
    double best_y = 0.0;
    for (double y : resolvent) {
        double gdis = a * a - 4.0 * y;
        double hdis = (b - y) * (b - y) - 4.0 * d;
        if (gdis > -clamp_tol && hdis > -clamp_tol) {
            const double score = std::min(gdis, hdis);
            if (score > best_score) {
                best_score = score;
                best_y = y;
            }
        }
    }
    if (!std::isfinite(best_score)) return {};  // no real factorization: no real roots

    const double y = best_y;
    const double g1 = 0.5 * a;
    const double h1 = 0.5 * (b - y);
    const double gdis = std::max(a * a - 4.0 * y, 0.0);
    const double hdis = std::max((b - y) * (b - y) - 4.0 * d, 0.0);

    double g2, h2;
    const double gerr = a * a + std::abs(4.0 * y);
    const double herr = (b - y) * (b - y) + std::abs(4.0 * d);
    if (herr * gdis > gerr * hdis) {
        const double gsq = std::sqrt(gdis);
        g2 = 0.5 * gsq;
        h2 = gsq != 0.0 ? (a * h1 - c) / gsq : 0.0;
    } else {
        const double hsq = std::sqrt(hdis);
        h2 = 0.5 * hsq;
        g2 = hsq != 0.0 ? (a * h1 - c) / hsq : 0.0;
    }

    std::vector<double> roots;
    for (double root : solve_quadratic_monic(g1 + g2, h1 + h2)) roots.push_back(root);
    for (double root : solve_quadratic_monic(g1 - g2, h1 - h2)) roots.push_back(root);
    return roots;
}

}  // namespace

int PolyCoeffs::effective_degree() const {
    const double threshold = kDegreeReduction * max_abs_coeff(*this);
    for (int d = 4; d >= 1; --d) {
        if (std::abs(c[d]) > threshold) return d;
    }
    return 0;
}

double PolyCoeffs::eval(double x) const {
    return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
}

double PolyCoeffs::derivative_eval(double x) const {
    return c[1] + x * (2.0 * c[2] + x * (3.0 * c[3] + x * 4.0 * c[4]));
}

std::vector<double> solve_quadratic(const PolyCoeffs& p) {
    const int deg = p.effective_degree();
    if (deg == 0) throw DomainError("solve_quadratic: degree-0 polynomial");
    if (deg == 1) return finish(p, solve_linear_monic(p.c[0] / p.c[1]));
    return finish(p, solve_quadratic_monic(p.c[1] / p.c[2], p.c[0] / p.c[2]));
}

std::vector<double> solve_cubic(const PolyCoeffs& p) {
    const int deg = p.effective_degree();
    if (deg <= 2) return solve_quadratic(p);
    return finish(p, solve_cubic_monic(p.c[2] / p.c[3], p.c[1] / p.c[3], p.c[0] / p.c[3]));
}

std::vector<double> solve_quartic(const PolyCoeffs& p) {
    const int deg = p.effective_degree();
    if (deg <= 3) return solve_cubic(p);
    return finish(p, solve_quartic_monic(p.c[3] / p.c[4], p.c[2] / p.c[4], p.c[1] / p.c[4],
                                         p.c[0] / p.c[4]));
}

std::vector<double> roots_in_open_unit_interval(const PolyCoeffs& p) {
    if (p.effective_degree() == 0) return {};
    std::vector<double> all = solve_quartic(p);
    std::vector<double> inside;
    for (double r : all) {
        if (r > 1e-12 && r < 1.0 - 1e-12) inside.push_back(r);
    }
    return inside;
}

}  // namespace geokit
