#pragma once

#include <span>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

struct LogRegModel {
    std::vector<double> weights;
    double bias = 0.0;
    double C = 1000.0;
    double tol = 0.1;
};

struct LogRegConfig {
    double C = 1000.0;  // inverse regularization strength, penalty is 1/(2C) * ||w||^2
    double tol = 0.1;   // stop when the gradient max-norm drops below this
    std::size_t max_newton_iter = 100;
};

// L2-penalized logistic loss and its gradient at (weights, bias). The bias is
// not penalized. Exposed so the gradient can be checked against finite
// differences.
double logreg_loss(const FeatureMatrix& matrix, std::span<const double> weights, double bias,
                   double C);
void logreg_gradient(const FeatureMatrix& matrix, std::span<const double> weights, double bias,
                     double C, std::span<double> grad_w, double& grad_b);

// Newton steps whose linear systems are solved by conjugate gradient on
// Hessian-vector products.
LogRegModel fit_logreg_ncg(const FeatureMatrix& matrix, const LogRegConfig& config = {});

// Per-row P(class=1 | x).
std::vector<double> logreg_prob(const LogRegModel& model, const FeatureMatrix& matrix);

} // namespace instaudit
