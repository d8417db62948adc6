#pragma once

#include <cstdint>
#include <string>

#include "instaudit/dataset.hpp"
#include "instaudit/genetic.hpp"
#include "instaudit/metrics.hpp"
#include "instaudit/smote.hpp"

namespace instaudit {

// Shared knobs for the train/evaluate pipelines. paper_mode reproduces the
// oversample-before-split order; the default oversamples the training
// portion only.
struct PipelineOptions {
    std::uint64_t seed = 42;
    bool oversample = false;
    bool paper_mode = false;
    std::size_t smote_k = 5;
    double train_fraction = 0.7;
};

// Full evaluation pipeline over an assembled matrix: split, optional
// SMOTE-NC, min-max scaling fit on the training portion, train, score.
EvalReport run_evaluation(const FeatureMatrix& matrix, const ClassifierSpec& spec,
                          const PipelineOptions& options, const std::string& dataset_note);

// Normalizes the full matrix and runs the cost-sensitive GA over it with the
// MLP evaluator.
GaResult run_feature_selection(const FeatureMatrix& matrix, const CostTable& costs,
                               const GaConfig& config);

enum class PaperTable { fake_table, automated_table };

struct ReproduceOptions {
    std::uint64_t seed = 42;
    bool paper_mode = false;
    GaConfig ga; // automated table only
};

// Runs the five classifiers with production hyperparameters and assembles a
// result table: the fake table with and without oversampling (macro F1), the
// automated table on GA-selected features (positive-class metrics).
// JSON first; the markdown rendering is a formatting of the same values.
std::string reproduce_table(PaperTable which, const Dataset& dataset,
                            const ReproduceOptions& options);

std::string reproduce_markdown(const std::string& reproduce_json);
std::string report_markdown(const EvalReport& report);

// Production classifier specs in the result-table row order.
std::vector<ClassifierSpec> production_classifiers(std::uint64_t seed);

} // namespace instaudit
