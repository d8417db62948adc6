#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

struct MlpConfig {
    std::size_t hidden_units = 32; // per hidden layer, two hidden layers
    double learning_rate = 0.001;
    std::size_t batch_size = 64;
    std::size_t epochs = 100;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 42;
};

// Two ReLU hidden layers into a 2-unit softmax. Parameters live in one flat
// vector, ordered W1,b1,W2,b2,W3,b3 with row-major weights, so the trainer,
// the serializer and the finite-difference check all see the same layout.
struct MlpModel {
    std::size_t input_dim = 0;
    std::size_t hidden_units = 0;
    std::vector<double> params;

    std::size_t param_count() const {
        const std::size_t d = input_dim, h = hidden_units;
        return d * h + h + h * h + h + h * 2 + 2;
    }
};

MlpModel mlp_init(std::size_t input_dim, const MlpConfig& config);

// Mean categorical cross-entropy over the batch.
double mlp_loss(const MlpModel& model, const FeatureMatrix& batch);

// Analytic gradient of mlp_loss with respect to every parameter, in the flat
// layout of MlpModel::params.
std::vector<double> mlp_gradient(const MlpModel& model, const FeatureMatrix& batch);

// Minibatch ADAM with per-epoch reshuffling. Deterministic per seed.
MlpModel fit_mlp_adam(const FeatureMatrix& matrix, const MlpConfig& config = {});

// Per-row (P(class 0), P(class 1)); each pair sums to 1.
std::vector<std::array<double, 2>> mlp_proba(const MlpModel& model, const FeatureMatrix& matrix);

} // namespace instaudit
