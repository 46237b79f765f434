#include "lassose/atom_distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "lassose/scalar_gaussian.hpp"

namespace lassose {

double norm_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("norm_quantile: p must lie in (0, 1)");

    // Acklam's rational approximation, then two Newton steps against the
    // erfc-based CDF to reach full double accuracy.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int it = 0; it < 2; ++it) {
        const double err = scalar::norm_cdf(x) - p;
        x -= err / scalar::norm_pdf(x);
    }
    return x;
}

AtomDistribution AtomDistribution::point_mass(double value) {
    return {{value}, {1.0}};
}

AtomDistribution AtomDistribution::from_signal(std::span<const double> theta) {
    if (theta.empty()) throw std::domain_error("from_signal: empty vector");
    AtomDistribution d;
    const double w = 1.0 / static_cast<double>(theta.size());
    std::size_t zeros = 0;
    // Merge repeated values; realized sparse signals have many exact zeros.
    std::unordered_map<double, double> merged;
    merged.reserve(theta.size());
    for (double v : theta) {
        if (v == 0.0)
            ++zeros;
        else
            merged[v] += w;
    }
    d.values.reserve(merged.size() + 1);
    d.weights.reserve(merged.size() + 1);
    if (zeros > 0) {
        d.values.push_back(0.0);
        d.weights.push_back(w * static_cast<double>(zeros));
    }
    for (const auto& [v, wt] : merged) {
        d.values.push_back(v);
        d.weights.push_back(wt);
    }
    return d;
}

AtomDistribution AtomDistribution::sparse_gaussian(double s, int n_atoms) {
    if (!(s >= 0.0) || s > 1.0)
        throw std::domain_error("sparse_gaussian: s must lie in [0, 1]");
    if (n_atoms < 1) throw std::domain_error("sparse_gaussian: n_atoms must be >= 1");
    AtomDistribution d;
    if (s < 1.0) {
        d.values.push_back(0.0);
        d.weights.push_back(1.0 - s);
    }
    if (s > 0.0) {
        const double w = s / static_cast<double>(n_atoms);
        for (int i = 1; i <= n_atoms; ++i) {
            d.values.push_back(norm_quantile((i - 0.5) / n_atoms));
            d.weights.push_back(w);
        }
    }
    return d;
}

double AtomDistribution::second_moment() const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        m += weights[i] * values[i] * values[i];
    return m;
}

double AtomDistribution::mean_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        m += weights[i] * std::abs(values[i]);
    return m;
}

void AtomDistribution::validate() const {
    if (values.size() != weights.size() || values.empty())
        throw std::domain_error("AtomDistribution: malformed atom list");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::domain_error("AtomDistribution: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::domain_error("AtomDistribution: weights must sum to 1");
}

}  // namespace lassose
