#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lassose/atom_distribution.hpp"

namespace lassose::se {

// Solution of the scalar max-min problem / state-evolution system
//   tau^2 = sigma^2 + E[(eta(Theta + tau Z, alpha tau) - Theta)^2] / delta
//   beta  = tau (1 - s / delta),   s = P(|Theta + tau Z| >= alpha tau)
// with alpha = lambda / beta, plus every asymptotic prediction derived
// from it.
struct SEFixedPoint {
    double beta_star;   // residual scale
    double tau_star;    // effective noise level, >= sigma
    double alpha_star;  // lambda / beta_star
    double s_star;      // asymptotic sparsity fraction
    double lambda;
    double delta;
    double sigma;
    double psi_value;   // optimal value of the max-min objective
    double r_star;      // asymptotic l2 risk, delta (tau^2 - sigma^2)
    double p_star;      // asymptotic prediction error
    double kappa_star;  // asymptotic |v|^2 / N of the subgradient
};

// E[(eta(Theta + tau Z, alpha tau) - Theta)^2] over the atom law.
double expect_mse(const AtomDistribution& dist, double tau, double alpha);

// E[P(|Theta + tau Z| >= alpha tau)] over the atom law.
double expect_active_prob(const AtomDistribution& dist, double tau, double alpha);

// Unique fixed point of tau^2 = sigma^2 + expect_mse / delta. Exists iff
// alpha > alpha_min(delta); otherwise throws NumericError.
double solve_tau(const AtomDistribution& dist, double delta, double sigma,
                 double alpha);

// Solve the full system for one lambda. Outer bisection on the sign of the
// derivative of the (1-strongly concave) reduced objective; inner solve_tau
// per candidate beta.
SEFixedPoint solve_fixed_point(const AtomDistribution& dist, double delta,
                               double sigma, double lambda);

// Value of the max-min objective psi at an arbitrary (beta, tau >= sigma).
double psi_value(const AtomDistribution& dist, double delta, double sigma,
                 double lambda, double beta, double tau);

// One fixed point per lambda (ascending grid), warm-started along the path.
std::vector<SEFixedPoint> se_path(const AtomDistribution& dist, double delta,
                                  double sigma, std::span<const double> lambdas);

// Samples of the predicted joint law (eta(Theta + tau* Z, alpha* tau*), Theta).
std::vector<std::array<double, 2>> sample_mu_star(const AtomDistribution& dist,
                                                  const SEFixedPoint& fp,
                                                  int n_samples,
                                                  std::uint64_t seed);

// Samples of the predicted subgradient law
// (-(eta(Theta + tau* Z, alpha* tau*) - Theta - tau* Z) / (alpha* tau*), Theta);
// first coordinates lie in [-1, 1].
std::vector<std::array<double, 2>> sample_nu_star(const AtomDistribution& dist,
                                                  const SEFixedPoint& fp,
                                                  int n_samples,
                                                  std::uint64_t seed);

}  // namespace lassose::se
