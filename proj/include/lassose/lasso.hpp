#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

namespace lassose::lasso {

// Regression problem y = X theta + noise with columns of X at unit l2 norm
// up to sampling fluctuations. Immutable after construction; shareable
// read-only across fits.
struct DesignProblem {
    Eigen::MatrixXd X;              // n x N, column-major
    Eigen::VectorXd y;              // n
    Eigen::Index n = 0, N = 0;
    Eigen::VectorXd col_sq_norms;   // cached |x_j|^2

    DesignProblem() = default;
    DesignProblem(Eigen::MatrixXd X_in, Eigen::VectorXd y_in);
};

struct FitOptions {
    double tol = 1e-10;       // max coordinate change, relative
    double kkt_tol = 1e-6;    // slack on |v|_inf <= 1
    int max_sweeps = 0;       // 0 means 100 * N
    const Eigen::VectorXd* warm_start = nullptr;
};

// Lasso solution for objective (1/2n)|y - X theta|^2 + (lambda/n)|theta|_1.
// Zeros in theta_hat are exact (soft-threshold outputs), so support_size
// needs no epsilon.
struct LassoFit {
    double lambda = 0.0;
    Eigen::VectorXd theta_hat;
    Eigen::VectorXd residual;      // y - X theta_hat
    Eigen::VectorXd subgradient;   // X^T residual / lambda
    Eigen::Index support_size = 0;
    double objective = 0.0;
    int sweeps = 0;
    std::optional<Eigen::VectorXd> debiased;  // filled by debias()
};

// Cyclic coordinate descent with exact soft-threshold updates. Terminates
// when the coordinate-change criterion and the KKT residual both pass;
// throws NumericError when max_sweeps is exceeded.
LassoFit fit(const DesignProblem& problem, double lambda, const FitOptions& opts = {});

// Warm-started fits along a strictly descending lambda grid; results are
// returned in ascending lambda order.
std::vector<LassoFit> path(const DesignProblem& problem,
                           std::span<const double> lambda_desc,
                           const FitOptions& opts = {});

// Debiased estimator theta_hat + X^T(y - X theta_hat) / (1 - |theta|_0 / n).
// Throws std::domain_error when the support size reaches n.
Eigen::VectorXd debias(const LassoFit& fit, const DesignProblem& problem);

struct KktReport {
    double max_abs_subgrad = 0.0;
    int sign_violations = 0;
    double duality_gap = 0.0;
};

// Stationarity diagnostics for a converged fit.
KktReport kkt_report(const LassoFit& fit, const DesignProblem& problem);

double objective_value(const DesignProblem& problem, const Eigen::VectorXd& theta,
                       double lambda);

}  // namespace lassose::lasso
