#include "lassose/scalar_gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace lassose::scalar {

double alpha_min(double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::domain_error("alpha_min: delta must lie in (0, 1]");
    const double target = 0.5 * delta;
    if (delta == 1.0) return 0.0;

    // omega is strictly decreasing from 1/2 to 0 on [0, inf).
    double lo = 0.0, hi = 2.0;
    while (detail::omega(hi) > target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r = detail::omega(mid) - target;
        if (std::abs(r) <= 1e-13) {
            lo = hi = mid;
            break;
        }
        (r > 0.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, mid)) break;
    }
    double a = 0.5 * (lo + hi);
    // Newton polish; omega' is available in closed form.
    for (int it = 0; it < 4; ++it) {
        const double d = detail::omega_prime(a);
        if (d == 0.0) break;
        a -= (detail::omega(a) - target) / d;
    }
    return a;
}

namespace {

// Maximand of the critical-sparsity formula (before the delta factor).
double s_max_ratio(double a, double delta) {
    const double w = detail::omega(a);
    const double den = 1.0 + a * a - 2.0 * w;
    if (den <= 0.0) return -1e300;
    return (1.0 - 2.0 * w / delta) / den;
}

}  // namespace

double s_max(double delta) {
    if (!(delta > 0.0)) throw std::domain_error("s_max: delta must be positive");
    if (delta >= 1.0) return 1.0;

    // Coarse grid over the documented bracket, then golden-section refine.
    const double a_lo = 1e-6, a_hi = 20.0;
    const int grid_n = 4000;
    double best_a = a_lo, best_v = -1e300;
    for (int i = 0; i <= grid_n; ++i) {
        const double a = a_lo + (a_hi - a_lo) * i / grid_n;
        const double v = s_max_ratio(a, delta);
        if (v > best_v) {
            best_v = v;
            best_a = a;
        }
    }
    const double step = (a_hi - a_lo) / grid_n;
    double lo = std::max(a_lo, best_a - step), hi = std::min(a_hi, best_a + step);
    const double gr = 0.61803398874989484820;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = s_max_ratio(c, delta), fd = s_max_ratio(d, delta);
    while (hi - lo > 1e-10) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = s_max_ratio(c, delta);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = s_max_ratio(d, delta);
        }
    }
    const double value = delta * std::max(best_v, std::max(fc, fd));
    return std::min(value, 1.0);
}

double lambda_minimax(double s0, double delta, double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("lambda_minimax: sigma must be positive");
    if (!(s0 > 0.0) || s0 > 1.0)
        throw std::domain_error("lambda_minimax: s0 must lie in (0, 1]");
    if (!(delta > 0.0)) throw std::domain_error("lambda_minimax: delta must be positive");

    // a0 is the unique root of M_s' (M_s'' > 0). M_s'(0) < 0 for s0 < 1.
    double a0 = 0.0;
    if (s0 < 1.0) {
        double lo = 0.0, hi = 1.0;
        while (m_s(hi, s0).first_deriv < 0.0) {
            hi *= 2.0;
            if (hi > 1e6) throw std::domain_error("lambda_minimax: no stationary threshold");
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (m_s(mid, s0).first_deriv < 0.0 ? lo : hi) = mid;
        }
        a0 = 0.5 * (lo + hi);
        for (int it = 0; it < 4; ++it) {
            const auto m = m_s(a0, s0);
            a0 -= m.first_deriv / m.second_deriv;
        }
    }
    const double m0 = m_s(a0, s0).value;
    if (m0 >= delta)
        throw std::domain_error("lambda_minimax: sparsity s0 is above the stable region");
    return a0 * sigma * std::sqrt(1.0 - m0 / delta);
}

}  // namespace lassose::scalar
