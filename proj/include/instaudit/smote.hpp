#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

struct SmoteConfig {
    std::size_t k = 5;
    // Minority target; empty means match the majority class count.
    std::optional<std::size_t> target_per_class;
    std::uint64_t seed = 42;
};

// Median of the per-column sample standard deviations of the class's
// continuous features. This is the categorical-mismatch penalty of the
// SMOTE-NC metric. Errors if there is no continuous column.
double median_std(const FeatureMatrix& matrix, int class_label);

// sqrt( sum over continuous (a_i-b_i)^2 + sum over categorical med^2 * [a_i != b_i] )
double smotenc_distance(std::span<const double> a, std::span<const double> b,
                        std::span<const ColumnKind> kinds, double med);

// Origin of one synthetic row: the base minority row, the interpolation
// partner, and the k-neighbor set the categorical vote ran over (all indices
// into the input matrix).
struct SyntheticParentage {
    std::size_t base;
    std::size_t neighbor;
    std::vector<std::size_t> neighborhood;
};

struct SmoteResult {
    FeatureMatrix matrix;
    std::vector<SyntheticParentage> parentage; // one entry per appended row
};

// Appends synthetic minority rows until the minority class reaches the
// target. Each synthetic row interpolates the continuous coordinates of a
// random minority sample and one of its k nearest minority neighbors; each
// categorical coordinate takes the majority value among the k neighbors
// (ties keep the base row's value). Continuous columns whose observed values
// are all integral are rounded back to integers. Original rows are preserved
// verbatim. Deterministic per seed.
SmoteResult smotenc_oversample(const FeatureMatrix& matrix, const SmoteConfig& config);

FeatureMatrix smotenc_balance(const FeatureMatrix& matrix, const SmoteConfig& config);

} // namespace instaudit
