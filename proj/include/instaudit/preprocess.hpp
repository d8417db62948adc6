#pragma once

#include <cstdint>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

// Column-wise min/max of the continuous columns; binary columns pass through
// untouched. Always fit on the training portion only.
struct MinMaxScaler {
    std::vector<std::string> column_names;
    std::vector<ColumnKind> column_kinds;
    std::vector<double> col_min; // per column; unused entries for binary columns
    std::vector<double> col_max;
};

MinMaxScaler fit_minmax(const FeatureMatrix& matrix);

// Continuous x -> (x - min) / (max - min), clamped to [0, 1]. Columns that
// were constant during fitting map to 0.
FeatureMatrix apply_minmax(const MinMaxScaler& scaler, const FeatureMatrix& matrix);

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 42;
    bool stratified = true;
};

struct TrainTestSplit {
    FeatureMatrix train;
    FeatureMatrix test;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

// Disjoint partition of the rows; stratified puts round(fraction * class
// size) rows of each class in the training part. Deterministic per seed.
TrainTestSplit train_test_split(const FeatureMatrix& matrix, const SplitSpec& spec);

struct FoldIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

// k stratified folds; validation sets partition all rows and per-class fold
// sizes differ by at most one.
std::vector<FoldIndices> stratified_kfold(const FeatureMatrix& matrix, std::size_t k,
                                          std::uint64_t seed);

} // namespace instaudit
