#pragma once

#include <cmath>
#include <utility>

namespace lassose::scalar {

// Closed-form scalar functions of the standard Gaussian used by state
// evolution and the minimax / critical-sparsity formulas. All functions of
// (x, alpha) are even in x and expect alpha >= 0.

inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
inline constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

// Soft threshold eta(x; b) = (|x| - b)_+ sign(x). Exact zero for |x| <= b.
inline double soft_threshold(double x, double b) {
    if (x > b) return x - b;
    if (x < -b) return x + b;
    return 0.0;
}

inline double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

inline std::pair<double, double> gauss_phi_Phi(double x) {
    return {norm_pdf(x), norm_cdf(x)};
}

namespace detail {

// Tail-accurate pieces shared by the closed forms below, for x >= 0:
//   active = Phi(x - a) + Phi(-x - a)      (mass outside the threshold)
//   mid    = Phi(a - x) - Phi(-a - x)      (mass inside)
//   phi_m  = phi(x - a),  phi_p = phi(x + a)
// Each tail comes from its own erfc call so no catastrophic cancellation
// occurs for large |x| or large a.
struct Pieces {
    double active, mid, phi_m, phi_p;
};

inline Pieces pieces(double x, double a) {
    x = std::abs(x);
    const double lo = 0.5 * std::erfc((a - x) * kInvSqrt2);  // Phi(x - a)
    const double in = 0.5 * std::erfc((x - a) * kInvSqrt2);  // Phi(a - x)
    const double hi = 0.5 * std::erfc((x + a) * kInvSqrt2);  // Phi(-x - a)
    return {lo + hi, in - hi, norm_pdf(x - a), norm_pdf(x + a)};
}

// omega(a) = (1 + a^2) Phi(-a) - a phi(a); strictly decreasing, 1/2 at 0.
inline double omega(double a) {
    return (1.0 + a * a) * norm_cdf(-a) - a * norm_pdf(a);
}

inline double omega_prime(double a) { return 2.0 * (a * norm_cdf(-a) - norm_pdf(a)); }

}  // namespace detail

// E_Z[(eta(x + Z, a) - x)^2], the per-atom soft-thresholding MSE.
inline double atom_mse(double x, double a) {
    x = std::abs(x);
    const auto p = detail::pieces(x, a);
    return (1.0 + a * a) * p.active + x * x * p.mid - (x + a) * p.phi_m +
           (x - a) * p.phi_p;
}

// P(|x + Z| >= a) = Phi(x - a) + Phi(-x - a).
inline double atom_active_prob(double x, double a) {
    return detail::pieces(x, a).active;
}

// H_a(x) = (x-a) Phi(x-a) + (-x-a) Phi(-x-a) + phi(a-x) + phi(x+a) - |x|.
// Equals E|eta(x+Z, a)| - |x|; even, 1-Lipschitz, tends to -a.
inline double h_alpha(double x, double a) {
    x = std::abs(x);
    const double lo = 0.5 * std::erfc((a - x) * kInvSqrt2);  // Phi(x - a)
    const double hi = 0.5 * std::erfc((x + a) * kInvSqrt2);  // Phi(-x - a)
    return (x - a) * lo + (-x - a) * hi + norm_pdf(x - a) + norm_pdf(x + a) - x;
}

// Delta_a(x) = E[l_a(x + Z)] - a|x| with l_a the scalar lasso value
//   l_a(y) = y^2/2 on |y| <= a, a|y| - a^2/2 outside.
// Assembled from E[Y^2 1{|Y|<=a}], H_a and the active probability:
//   Delta_a = E[Y^2 1]/2 + a H_a(x) + (a^2/2) P(|Y| >= a).
inline double delta_alpha(double x, double a) {
    x = std::abs(x);
    const auto p = detail::pieces(x, a);
    const double e2_inside =
        (x * x + 1.0) * p.mid + (x - a) * p.phi_p - (x + a) * p.phi_m;
    return 0.5 * e2_inside + a * h_alpha(x, a) + 0.5 * a * a * p.active;
}

// Worst soft-thresholding MSE over s-sparse signals, with derivatives:
//   M_s(a)  = s (1 + a^2) + 2 (1 - s) omega(a)
//   M_s'(a) = 2 (a s + 2 (1 - s)(a Phi(-a) - phi(a)))
//   M_s''(a)= 2 (s + 2 (1 - s) Phi(-a))
struct MsValue {
    double value, first_deriv, second_deriv;
};

inline MsValue m_s(double a, double s) {
    const double cdf = norm_cdf(-a);
    const double pdf = norm_pdf(a);
    const double w = (1.0 + a * a) * cdf - a * pdf;
    return {s * (1.0 + a * a) + 2.0 * (1.0 - s) * w,
            2.0 * (a * s + 2.0 * (1.0 - s) * (a * cdf - pdf)),
            2.0 * (s + 2.0 * (1.0 - s) * cdf)};
}

// Unique positive root of (1 + a^2) Phi(-a) - a phi(a) = delta / 2 for
// delta in (0, 1); alpha_min(1) = 0. Throws std::domain_error outside (0, 1].
double alpha_min(double delta);

// Critical sparsity s_max(delta) (Donoho-Tanner curve). Returns 1 for
// delta >= 1; throws std::domain_error for delta <= 0.
double s_max(double delta);

// Minimax-optimal lambda over s0-sparse signals:
//   a0 = argmin M_{s0},  lambda = a0 sigma sqrt(1 - M_{s0}(a0) / delta).
// Throws std::domain_error when M_{s0}(a0) >= delta (sparsity above the
// stable region) or for degenerate s0.
double lambda_minimax(double s0, double delta, double sigma);

}  // namespace lassose::scalar
