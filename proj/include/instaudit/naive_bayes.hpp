#pragma once

#include <array>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

// Gaussian class-conditional densities with MAP prediction. Variances are
// floored at 1e-9 times the largest overall feature variance so constant
// features cannot produce singular densities.
struct GaussianNbModel {
    std::array<double, 2> log_prior;
    std::vector<double> mean; // class-major: [class][feature]
    std::vector<double> var;
    std::size_t dim = 0;

    double mean_at(int cls, std::size_t j) const { return mean[cls * dim + j]; }
    double var_at(int cls, std::size_t j) const { return var[cls * dim + j]; }
};

GaussianNbModel fit_gaussian_nb(const FeatureMatrix& matrix);

// Per-row (log p(class=0|x), log p(class=1|x)) up to the shared normalizer.
std::vector<std::array<double, 2>> gaussian_nb_log_joint(const GaussianNbModel& model,
                                                         const FeatureMatrix& matrix);

// Bernoulli likelihoods over binarized features. Continuous columns are
// thresholded at their training median (value > median -> 1); binary columns
// pass through. Laplace smoothing keeps every theta strictly inside (0,1).
struct BernoulliNbModel {
    std::array<double, 2> log_prior;
    std::vector<double> theta; // class-major: [class][feature], P(x_j=1 | class)
    std::vector<double> threshold;
    std::size_t dim = 0;

    double theta_at(int cls, std::size_t j) const { return theta[cls * dim + j]; }
};

BernoulliNbModel fit_bernoulli_nb(const FeatureMatrix& matrix, double alpha = 1.0);

std::vector<std::array<double, 2>> bernoulli_nb_log_joint(const BernoulliNbModel& model,
                                                          const FeatureMatrix& matrix);

} // namespace instaudit
