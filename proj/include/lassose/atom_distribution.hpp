#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lassose {

// Finite weighted point-mass representation of the signal law; every
// Gaussian expectation in state evolution runs over these atoms in closed
// form. Weights are nonnegative and sum to one.
struct AtomDistribution {
    std::vector<double> values;
    std::vector<double> weights;

    static AtomDistribution point_mass(double value);

    // Empirical distribution of a signal vector. Exact zeros are collapsed
    // into a single atom, which keeps state evolution fast on sparse signals.
    static AtomDistribution from_signal(std::span<const double> theta);

    // Deterministic quantile discretization of s N(0,1) + (1-s) delta_0:
    // n_atoms Gaussian atoms at quantiles (i - 0.5) / n_atoms plus a point
    // mass at zero.
    static AtomDistribution sparse_gaussian(double s, int n_atoms = 2001);

    std::size_t size() const { return values.size(); }
    double second_moment() const;
    double mean_abs() const;

    // Throws std::domain_error if weights are negative or do not sum to 1.
    void validate() const;
};

// Inverse standard normal CDF (quantile function).
double norm_quantile(double p);

}  // namespace lassose
