#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

// GA individual: bit i selects feature i.
struct FeatureMask {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    bool any() const {
        for (auto b : bits)
            if (b) return true;
        return false;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto b : bits) n += b;
        return n;
    }
    bool operator==(const FeatureMask&) const = default;
};

// Per-feature selection cost, aligned to the matrix column order.
struct CostTable {
    std::vector<int> costs;
};

// Cost table for the automated-account feature set, in column order.
CostTable automated_feature_costs();

struct GaConfig {
    std::size_t population_size = 20;
    std::size_t generations = 10;
    double mutation_rate = 0.05;
    std::size_t tournament_size = 3;
    double cost_weight = 2.0;
    std::uint64_t seed = 42;
};

struct GaTrace {
    std::vector<double> best_fitness;   // per generation, non-decreasing
    std::vector<FeatureMask> best_mask; // aligned with best_fitness
};

// Scores a reduced matrix on a 0-100 scale. The seed is derived from the run
// seed and the mask, so a given mask always scores identically within a run.
using FitnessEvaluator = std::function<double(const FeatureMatrix& reduced, std::uint64_t seed)>;

// Default evaluator: trains the production MLP on a 70/30 stratified split of
// the reduced matrix and returns the held-out F2 score as a percentage.
FitnessEvaluator mlp_f2_evaluator();

inline constexpr double kZeroMaskFitness = -std::numeric_limits<double>::infinity();

std::vector<FeatureMask> init_population(std::size_t feature_count, const GaConfig& config);

int total_cost(const FeatureMask& mask, const CostTable& costs);

// evaluator score minus cost_weight * total cost; all-zero masks score -inf.
double fitness(const FeatureMask& mask, const FeatureMatrix& matrix, const CostTable& costs,
               const GaConfig& config, const FitnessEvaluator& evaluator);

// population_size - 2 children; each parent is the fittest of a random
// tournament, each child bit comes uniformly from one of the two parents.
std::vector<FeatureMask> tournament_crossover(const std::vector<FeatureMask>& population,
                                              const std::vector<double>& fitnesses,
                                              const GaConfig& config, std::uint64_t seed);

// With probability rate, flips one uniformly chosen bit.
FeatureMask mutate(const FeatureMask& mask, double rate, std::uint64_t seed);

struct GaResult {
    FeatureMask best;
    GaTrace trace;
};

// Elitist generational loop: best individual carried over, one fresh random
// individual inserted, remainder via tournament crossover, one non-elite
// individual mutated. Fitness values are memoized per mask.
GaResult evolve(const FeatureMatrix& matrix, const CostTable& costs, const GaConfig& config,
                const FitnessEvaluator& evaluator);

// Keeps the selected columns, in order; labels unchanged.
FeatureMatrix reduce(const FeatureMatrix& matrix, const FeatureMask& mask);

std::string trace_to_json(const GaTrace& trace);

} // namespace instaudit
