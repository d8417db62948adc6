#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

// exp(-gamma * ||x - y||^2)
double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma);

struct SvmConfig {
    double C = 100.0;
    double gamma = 1.0;
    double tol = 1e-3;
    std::size_t max_passes = 50; // cap on full examine-all sweeps
    std::uint64_t seed = 42;
};

struct SvmModel {
    std::vector<double> support_vectors; // row-major n_sv x dim
    std::vector<double> coef;            // alpha_i * y_i per support vector
    double bias = 0.0;
    double gamma = 1.0;
    double C = 100.0;
    std::size_t dim = 0;

    std::size_t n_support() const { return coef.size(); }
    std::span<const double> support_vector(std::size_t i) const {
        return {support_vectors.data() + i * dim, dim};
    }
};

// Soft-margin dual via sequential minimal optimization: repeatedly picks a
// KKT-violating pair, solves the two-variable subproblem analytically with
// clipping to [0, C], and updates the bias. Terminates when a full pass finds
// no violation (or at the sweep cap).
SvmModel fit_svm_smo(const FeatureMatrix& matrix, const SvmConfig& config = {});

// Same fit, keeping the per-training-row multipliers for KKT and dual
// objective checks.
struct SmoSolution {
    SvmModel model;
    std::vector<double> alpha; // one entry per training row
};
SmoSolution fit_svm_smo_detailed(const FeatureMatrix& matrix, const SvmConfig& config = {});

// sum_i coef_i K(sv_i, x) + bias
double svm_decision(const SvmModel& model, std::span<const double> x);
std::vector<double> svm_decision(const SvmModel& model, const FeatureMatrix& matrix);

} // namespace instaudit
