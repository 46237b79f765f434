#include "lassose/state_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lassose/errors.hpp"
#include "lassose/rng.hpp"
#include "lassose/scalar_gaussian.hpp"

namespace lassose::se {

namespace {

double alpha_min_ext(double delta) {
    // Appendix-A statement is for delta in (0,1); extended by continuity.
    return delta >= 1.0 ? 0.0 : scalar::alpha_min(delta);
}

void check_common(const AtomDistribution& dist, double delta, double sigma) {
    dist.validate();
    if (!(delta > 0.0)) throw std::domain_error("state evolution: delta must be positive");
    if (!(sigma > 0.0)) throw std::domain_error("state evolution: sigma must be positive");
}

}  // namespace

double expect_mse(const AtomDistribution& dist, double tau, double alpha) {
    if (!(tau > 0.0)) throw std::domain_error("expect_mse: tau must be positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        acc += dist.weights[i] * scalar::atom_mse(dist.values[i] / tau, alpha);
    return tau * tau * acc;
}

double expect_active_prob(const AtomDistribution& dist, double tau, double alpha) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        acc += dist.weights[i] * scalar::atom_active_prob(dist.values[i] / tau, alpha);
    return acc;
}

double solve_tau(const AtomDistribution& dist, double delta, double sigma,
                 double alpha) {
    check_common(dist, delta, sigma);
    const double am = alpha_min_ext(delta);
    if (!(alpha > am + 1e-9)) {
        std::ostringstream msg;
        msg << "solve_tau: no fixed point, alpha=" << alpha
            << " <= alpha_min(delta)=" << am;
        throw NumericError(msg.str());
    }

    const double s2 = sigma * sigma;
    const auto F = [&](double t) {
        return s2 + expect_mse(dist, std::sqrt(t), alpha) / delta;
    };
    const double rel_tol = 1e-13;

    // Damped fixed-point iteration; F is concave and increasing so plain
    // iteration converges monotonically, damping guards finite-precision
    // cycling near the root.
    double t = 2.0 * s2 + dist.second_moment() / delta;
    double prev_step = 0.0;
    bool damped = false;
    for (int it = 0; it < 500; ++it) {
        const double ft = F(t);
        const double step = ft - t;
        if (std::abs(step) <= rel_tol * std::max(1.0, t)) return std::sqrt(ft);
        if (it > 0 && step * prev_step < 0.0) damped = true;
        t = damped ? 0.5 * (t + ft) : ft;
        prev_step = step;
    }

    // Bisection fallback on g(t) = F(t) - t; g(sigma^2) > 0 and the slope of
    // F at infinity is < 1, so an upper bracket exists.
    double lo = s2, hi = std::max(2.0 * s2, 2.0 * t);
    int guard = 0;
    while (F(hi) > hi) {
        hi *= 2.0;
        if (++guard > 200) throw NumericError("solve_tau: failed to bracket the fixed point");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g = F(mid) - mid;
        if (std::abs(g) <= rel_tol * std::max(1.0, mid)) return std::sqrt(F(mid));
        (g > 0.0 ? lo : hi) = mid;
    }
    return std::sqrt(0.5 * (lo + hi));
}

namespace {

// Derivative of the reduced objective Psi(beta) = min_tau psi(beta, tau):
//   Psi'(beta) = tau*(alpha) (1 - s(alpha) / delta) - beta, alpha = lambda/beta.
double psi_reduced_deriv(const AtomDistribution& dist, double delta, double sigma,
                         double lambda, double beta, double* tau_out,
                         double* s_out) {
    const double alpha = lambda / beta;
    const double tau = solve_tau(dist, delta, sigma, alpha);
    const double s = expect_active_prob(dist, tau, alpha);
    if (tau_out) *tau_out = tau;
    if (s_out) *s_out = s;
    return tau * (1.0 - s / delta) - beta;
}

}  // namespace

SEFixedPoint solve_fixed_point(const AtomDistribution& dist, double delta,
                               double sigma, double lambda) {
    check_common(dist, delta, sigma);
    if (!(lambda > 0.0)) throw std::domain_error("solve_fixed_point: lambda must be positive");

    const double am = alpha_min_ext(delta);
    double beta_hi;
    if (am > 0.0) {
        beta_hi = lambda / am - 1e-8;
    } else {
        beta_hi = 10.0 * (sigma + std::sqrt(dist.second_moment()));
    }
    double beta_lo = 1e-8;

    // Psi' > 0 near 0 and < 0 near beta_max; expand the cap if needed when
    // delta >= 1 (beta_max is infinite there).
    double tau_hi = 0.0, s_hi = 0.0;
    int expand = 0;
    while (psi_reduced_deriv(dist, delta, sigma, lambda, beta_hi, &tau_hi, &s_hi) > 0.0) {
        if (am > 0.0 || ++expand > 60)
            throw NumericError("solve_fixed_point: upper bracket has positive derivative");
        beta_hi *= 2.0;
    }

    double tau = tau_hi, s = s_hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (beta_lo + beta_hi);
        const double d = psi_reduced_deriv(dist, delta, sigma, lambda, mid, &tau, &s);
        (d > 0.0 ? beta_lo : beta_hi) = mid;
        if (beta_hi - beta_lo <= 1e-14 * std::max(1.0, mid)) break;
    }
    const double beta = 0.5 * (beta_lo + beta_hi);
    const double alpha = lambda / beta;
    tau = solve_tau(dist, delta, sigma, alpha);
    s = expect_active_prob(dist, tau, alpha);

    SEFixedPoint fp;
    fp.beta_star = beta;
    fp.tau_star = tau;
    fp.alpha_star = alpha;
    fp.s_star = s;
    fp.lambda = lambda;
    fp.delta = delta;
    fp.sigma = sigma;
    fp.psi_value = psi_value(dist, delta, sigma, lambda, beta, tau);
    fp.r_star = delta * (tau * tau - sigma * sigma);
    fp.p_star = beta * beta + (2.0 * sigma * sigma / delta) * s - sigma * sigma / delta;
    fp.kappa_star = (beta * beta) / (lambda * lambda) *
                    (1.0 + delta - 2.0 * s - delta * sigma * sigma / (tau * tau));

    // Defining residuals of the two state-evolution equations.
    const double eq1 = tau * tau - sigma * sigma - expect_mse(dist, tau, alpha) / delta;
    const double eq2 = beta - tau * (1.0 - s / delta);
    if (std::abs(eq1) > 1e-10 || std::abs(eq2) > 1e-10) {
        std::ostringstream msg;
        msg << "solve_fixed_point: residuals too large at lambda=" << lambda
            << " (eq1=" << eq1 << ", eq2=" << eq2 << ")";
        throw NumericError(msg.str());
    }
    return fp;
}

double psi_value(const AtomDistribution& dist, double delta, double sigma,
                 double lambda, double beta, double tau) {
    check_common(dist, delta, sigma);
    if (beta < 0.0) throw std::domain_error("psi_value: beta must be >= 0");
    if (!(tau >= sigma)) throw std::domain_error("psi_value: tau must be >= sigma");
    if (beta == 0.0) return -(lambda / delta) * dist.mean_abs();
    const double alpha = lambda / beta;
    double e_delta = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        e_delta += dist.weights[i] * scalar::delta_alpha(dist.values[i] / tau, alpha);
    const double s2 = sigma * sigma;
    return (s2 / tau + tau) * 0.5 * beta - 0.5 * beta * beta +
           (tau * beta * e_delta - 0.5 * beta * tau) / delta;
}

std::vector<SEFixedPoint> se_path(const AtomDistribution& dist, double delta,
                                  double sigma, std::span<const double> lambdas) {
    std::vector<SEFixedPoint> out;
    out.reserve(lambdas.size());
    const double am = alpha_min_ext(delta);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
            throw std::domain_error("se_path: lambda grid must be strictly ascending");
        try {
            out.push_back(solve_fixed_point(dist, delta, sigma, lambdas[i]));
        } catch (const NumericError& e) {
            std::ostringstream msg;
            msg << "se_path failed at lambda=" << lambdas[i] << ": " << e.what();
            throw NumericError(msg.str());
        }
        // beta_* is 2/alpha_min-Lipschitz in lambda; catch solver blunders.
        if (i > 0 && am > 0.0) {
            const double bound =
                (2.0 / am) * (lambdas[i] - lambdas[i - 1]) + 1e-6;
            const double jump = std::abs(out[i].beta_star - out[i - 1].beta_star);
            if (jump > bound) {
                std::ostringstream msg;
                msg << "se_path: beta jump " << jump << " exceeds Lipschitz bound "
                    << bound << " between lambda=" << lambdas[i - 1] << " and "
                    << lambdas[i];
                throw NumericError(msg.str());
            }
        }
    }
    return out;
}

namespace {

std::vector<std::array<double, 2>> sample_joint(const AtomDistribution& dist,
                                                const SEFixedPoint& fp,
                                                int n_samples, std::uint64_t seed,
                                                bool subgradient) {
    if (n_samples < 1) throw std::domain_error("sample: n_samples must be >= 1");
    dist.validate();
    // Cumulative weights for inverse-CDF sampling of the atom index.
    std::vector<double> cum(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist.weights[i];
        cum[i] = acc;
    }
    cum.back() = 1.0;

    Rng rng(seed);
    const double thr = fp.alpha_star * fp.tau_star;
    std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(n_samples));
    for (auto& p : pts) {
        const double u = rng.uniform();
        const auto it = std::lower_bound(cum.begin(), cum.end(), u);
        const double theta = dist.values[static_cast<std::size_t>(it - cum.begin())];
        const double z = rng.normal();
        const double y = theta + fp.tau_star * z;
        const double den = scalar::soft_threshold(y, thr);
        p[0] = subgradient ? -(den - y) / thr : den;
        p[1] = theta;
    }
    return pts;
}

}  // namespace

std::vector<std::array<double, 2>> sample_mu_star(const AtomDistribution& dist,
                                                  const SEFixedPoint& fp,
                                                  int n_samples,
                                                  std::uint64_t seed) {
    return sample_joint(dist, fp, n_samples, seed, false);
}

std::vector<std::array<double, 2>> sample_nu_star(const AtomDistribution& dist,
                                                  const SEFixedPoint& fp,
                                                  int n_samples,
                                                  std::uint64_t seed) {
    return sample_joint(dist, fp, n_samples, seed, true);
}

}  // namespace lassose::se
