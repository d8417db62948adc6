#include "instaudit/metrics.hpp"

#include <algorithm>

#include "instaudit/preprocess.hpp"

#include <json.hpp>

namespace instaudit {

using nlohmann::ordered_json;

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predictions) {
    if (labels.size() != predictions.size() || labels.empty())
        throw DomainError("labels/predictions length mismatch");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1)
            (predictions[i] == 1 ? cm.tp : cm.fn)++;
        else
            (predictions[i] == 1 ? cm.fp : cm.tn)++;
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DomainError("empty confusion matrix");
    Metrics m;
    const double tp = static_cast<double>(cm.tp);
    const double fp = static_cast<double>(cm.fp);
    const double fn = static_cast<double>(cm.fn);

    if (cm.tp + cm.fp > 0)
        m.precision = tp / (tp + fp);
    else
        m.zero_denominator = true;
    if (cm.tp + cm.fn > 0)
        m.recall = tp / (tp + fn);
    else
        m.zero_denominator = true;

    const double p = m.precision, r = m.recall;
    if (p + r > 0.0)
        m.f1 = 2.0 * p * r / (p + r);
    else
        m.zero_denominator = true;
    if (4.0 * p + r > 0.0)
        m.f2 = 5.0 * p * r / (4.0 * p + r);
    else
        m.zero_denominator = true;
    return m;
}

double macro_f1(std::span<const int> labels, std::span<const int> predictions) {
    bool has0 = false, has1 = false;
    for (int y : labels) (y == 1 ? has1 : has0) = true;
    if (!has0 || !has1) throw DomainError("macro F1 needs both classes in labels");

    const Metrics pos = metrics(confusion(labels, predictions));

    // Same arithmetic with class 0 treated as positive.
    std::vector<int> flipped_labels(labels.size()), flipped_preds(predictions.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        flipped_labels[i] = 1 - labels[i];
        flipped_preds[i] = 1 - predictions[i];
    }
    const Metrics neg = metrics(confusion(flipped_labels, flipped_preds));
    return 0.5 * (pos.f1 + neg.f1);
}

EvalReport evaluate(const TrainedModel& model, const FeatureMatrix& test,
                    const ClassifierSpec& spec, const std::string& dataset_note) {
    const auto preds = predict(model, test);
    EvalReport report;
    report.confusion = confusion(test.labels, preds);
    report.positive = metrics(report.confusion);
    report.macro_f1 = macro_f1(test.labels, preds);
    report.classifier = classifier_name(spec.kind);
    report.params = spec.hyperparameters;
    report.seed = spec.seed;
    report.dataset = dataset_note;
    return report;
}

std::string report_to_json(const EvalReport& report) {
    ordered_json doc;
    doc["tp"] = report.confusion.tp;
    doc["fp"] = report.confusion.fp;
    doc["tn"] = report.confusion.tn;
    doc["fn"] = report.confusion.fn;
    doc["precision"] = report.positive.precision;
    doc["recall"] = report.positive.recall;
    doc["f1"] = report.positive.f1;
    doc["f2"] = report.positive.f2;
    doc["macro_f1"] = report.macro_f1;
    if (report.positive.zero_denominator) doc["zero_denominator"] = true;
    doc["classifier"] = report.classifier;
    doc["params"] = report.params;
    doc["seed"] = report.seed;
    doc["dataset"] = report.dataset;
    return doc.dump(2);
}

GridSearchResult grid_search(ClassifierKind kind, const ParamGrid& grid,
                             const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed) {
    if (grid.candidates.empty()) throw DomainError("empty parameter grid");
    for (const auto& [name, values] : grid.candidates)
        if (values.empty()) throw DomainError("no candidates for parameter '" + name + "'");

    // Odometer over parameters in name order.
    std::vector<std::string> names;
    for (const auto& [name, values] : grid.candidates) names.push_back(name);
    std::vector<std::size_t> pos(names.size(), 0);

    std::vector<GridCell> cells;
    bool done = false;
    while (!done) {
        GridCell cell;
        for (std::size_t i = 0; i < names.size(); ++i)
            cell.params[names[i]] = grid.candidates.at(names[i])[pos[i]];
        cells.push_back(std::move(cell));

        done = true; // last parameter varies fastest
        for (std::size_t i = names.size(); i-- > 0;) {
            if (++pos[i] < grid.candidates.at(names[i]).size()) {
                done = false;
                break;
            }
            pos[i] = 0;
        }
    }

    const auto folds = stratified_kfold(matrix, k, seed);
    for (auto& cell : cells) {
        ClassifierSpec spec;
        spec.kind = kind;
        spec.hyperparameters = cell.params;
        spec.seed = seed;
        for (const auto& fold : folds) {
            const FeatureMatrix train = matrix.take(fold.train);
            const FeatureMatrix val = matrix.take(fold.validation);
            const TrainedModel model = train_classifier(spec, train);
            const auto preds = predict(model, val);
            cell.fold_scores.push_back(macro_f1(val.labels, preds));
        }
        double sum = 0.0;
        for (double s : cell.fold_scores) sum += s;
        cell.mean_macro_f1 = sum / static_cast<double>(cell.fold_scores.size());
    }

    GridSearchResult result;
    result.cells = std::move(cells);
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.cells.size(); ++i)
        if (result.cells[i].mean_macro_f1 > result.cells[best].mean_macro_f1) best = i;
    result.best_params = result.cells[best].params;
    result.best_score = result.cells[best].mean_macro_f1;
    return result;
}

} // namespace instaudit
