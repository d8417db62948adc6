#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "instaudit/matrix.hpp"
#include "instaudit/model.hpp"

namespace instaudit {

// Positive class = 1 (fake / automated).
struct ConfusionMatrix {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::size_t total() const { return tp + fp + tn + fn; }
};

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predictions);

// precision, recall, F1 and F2 per the usual definitions, with F2 weighting
// recall four times as heavily as precision. Ratios with zero denominators
// are reported as 0 and flagged.
struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    bool zero_denominator = false;
};

Metrics metrics(const ConfusionMatrix& cm);

// Unweighted mean of the F1 scores obtained by treating each class as the
// positive one in turn. Both classes must appear in labels.
double macro_f1(std::span<const int> labels, std::span<const int> predictions);

struct EvalReport {
    ConfusionMatrix confusion;
    Metrics positive;
    double macro_f1 = 0.0;
    std::string classifier;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
    std::string dataset;
};

EvalReport evaluate(const TrainedModel& model, const FeatureMatrix& test,
                    const ClassifierSpec& spec, const std::string& dataset_note);

std::string report_to_json(const EvalReport& report);

// Hyperparameter candidates; cells iterate in lexicographic parameter-name
// order with values in their listed order, and ties resolve to the first cell.
struct ParamGrid {
    std::map<std::string, std::vector<double>> candidates;
};

struct GridCell {
    std::map<std::string, double> params;
    double mean_macro_f1 = 0.0;
    std::vector<double> fold_scores;
};

struct GridSearchResult {
    std::map<std::string, double> best_params;
    double best_score = 0.0;
    std::vector<GridCell> cells;
};

// Mean validation macro-F1 over k stratified folds per grid cell.
GridSearchResult grid_search(ClassifierKind kind, const ParamGrid& grid,
                             const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed);

} // namespace instaudit
