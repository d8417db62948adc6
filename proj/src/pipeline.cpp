#include "instaudit/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "instaudit/preprocess.hpp"
#include "instaudit/rng.hpp"

#include <json.hpp>

namespace instaudit {

using nlohmann::ordered_json;

EvalReport run_evaluation(const FeatureMatrix& matrix, const ClassifierSpec& spec,
                          const PipelineOptions& options, const std::string& dataset_note) {
    SplitSpec split_spec;
    split_spec.train_fraction = options.train_fraction;
    split_spec.seed = options.seed;

    SmoteConfig smote_cfg;
    smote_cfg.k = options.smote_k;
    smote_cfg.seed = options.seed;

    FeatureMatrix train, test;
    if (options.oversample && options.paper_mode) {
        // The published order: balance the whole dataset, then split.
        const FeatureMatrix balanced = smotenc_balance(matrix, smote_cfg);
        auto split = train_test_split(balanced, split_spec);
        train = std::move(split.train);
        test = std::move(split.test);
    } else {
        auto split = train_test_split(matrix, split_spec);
        train = std::move(split.train);
        test = std::move(split.test);
        if (options.oversample) train = smotenc_balance(train, smote_cfg);
    }

    const MinMaxScaler scaler = fit_minmax(train);
    train = apply_minmax(scaler, train);
    test = apply_minmax(scaler, test);

    ClassifierSpec seeded = spec;
    seeded.seed = derive_seed(options.seed, seed_tag::train);
    const TrainedModel model = train_classifier(seeded, train);
    EvalReport report = evaluate(model, test, spec, dataset_note);
    report.seed = options.seed;
    return report;
}

GaResult run_feature_selection(const FeatureMatrix& matrix, const CostTable& costs,
                               const GaConfig& config) {
    const MinMaxScaler scaler = fit_minmax(matrix);
    const FeatureMatrix normalized = apply_minmax(scaler, matrix);
    return evolve(normalized, costs, config, mlp_f2_evaluator());
}

std::vector<ClassifierSpec> production_classifiers(std::uint64_t seed) {
    std::vector<ClassifierSpec> specs(5);
    specs[0].kind = ClassifierKind::svm_rbf;
    specs[0].hyperparameters = {{"C", 100.0}, {"gamma", 1.0}};
    specs[1].kind = ClassifierKind::bernoulli_nb;
    specs[2].kind = ClassifierKind::gaussian_nb;
    specs[3].kind = ClassifierKind::logreg;
    specs[3].hyperparameters = {{"C", 1000.0}, {"tol", 0.1}};
    specs[4].kind = ClassifierKind::mlp;
    for (auto& s : specs) s.seed = seed;
    return specs;
}

namespace {

const char* display_name(ClassifierKind kind) {
    switch (kind) {
    case ClassifierKind::svm_rbf: return "Support Vector Machine";
    case ClassifierKind::bernoulli_nb: return "Naive Bayes (Bernoulli Dist.)";
    case ClassifierKind::gaussian_nb: return "Naive Bayes (Gaussian Dist.)";
    case ClassifierKind::logreg: return "Logistic Regression";
    case ClassifierKind::mlp: return "Neural Network";
    }
    return "?";
}

std::string percent(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << 100.0 * x << "%";
    return os.str();
}

} // namespace

std::string reproduce_table(PaperTable which, const Dataset& dataset,
                            const ReproduceOptions& options) {
    const FeatureMatrix matrix = to_matrix(dataset);
    ordered_json doc;
    doc["seed"] = options.seed;
    doc["dataset"] = dataset.source.empty() ? std::string("unnamed") : dataset.source;

    if (which == PaperTable::fake_table) {
        doc["table"] = "fake";
        doc["paper_mode"] = options.paper_mode;
        ordered_json rows = ordered_json::array();
        for (const auto& spec : production_classifiers(options.seed)) {
            PipelineOptions plain;
            plain.seed = options.seed;
            PipelineOptions balanced = plain;
            balanced.oversample = true;
            balanced.paper_mode = options.paper_mode;

            const EvalReport without = run_evaluation(matrix, spec, plain, dataset.source);
            const EvalReport with = run_evaluation(matrix, spec, balanced, dataset.source);

            ordered_json row;
            row["classifier"] = classifier_name(spec.kind);
            row["display_name"] = display_name(spec.kind);
            row["macro_f1_without_oversampling"] = without.macro_f1;
            row["macro_f1_with_oversampling"] = with.macro_f1;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
    } else {
        doc["table"] = "automated";
        GaConfig ga = options.ga;
        ga.seed = options.seed;
        const GaResult selection = run_feature_selection(matrix, automated_feature_costs(), ga);

        std::vector<int> bits(selection.best.bits.begin(), selection.best.bits.end());
        ordered_json selected = ordered_json::array();
        for (std::size_t j = 0; j < matrix.cols(); ++j)
            if (selection.best.bits[j]) selected.push_back(matrix.column_names[j]);
        doc["selected_mask"] = bits;
        doc["selected_features"] = std::move(selected);
        doc["selected_cost"] = total_cost(selection.best, automated_feature_costs());
        doc["ga_best_fitness"] = selection.trace.best_fitness.back();

        const FeatureMatrix reduced = reduce(matrix, selection.best);
        ordered_json rows = ordered_json::array();
        for (const auto& spec : production_classifiers(options.seed)) {
            PipelineOptions plain;
            plain.seed = options.seed;
            const EvalReport report = run_evaluation(reduced, spec, plain, dataset.source);
            ordered_json row;
            row["classifier"] = classifier_name(spec.kind);
            row["display_name"] = display_name(spec.kind);
            row["precision"] = report.positive.precision;
            row["recall"] = report.positive.recall;
            row["f1"] = report.positive.f1;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
    }
    return doc.dump(2);
}

std::string reproduce_markdown(const std::string& reproduce_json) {
    const ordered_json doc = ordered_json::parse(reproduce_json);
    std::ostringstream os;
    if (doc.at("table") == "fake") {
        os << "| Classifier | F1 score without oversampling | F1 score with oversampling |\n";
        os << "|---|---|---|\n";
        for (const auto& row : doc.at("rows"))
            os << "| " << row.at("display_name").get<std::string>() << " | "
               << percent(row.at("macro_f1_without_oversampling").get<double>()) << " | "
               << percent(row.at("macro_f1_with_oversampling").get<double>()) << " |\n";
    } else {
        os << "Selected features:";
        for (const auto& f : doc.at("selected_features"))
            os << " " << f.get<std::string>();
        os << " (total cost " << doc.at("selected_cost").get<int>() << ")\n\n";
        os << "| Classifier | Precision | Recall | F1-Score |\n";
        os << "|---|---|---|---|\n";
        for (const auto& row : doc.at("rows"))
            os << "| " << row.at("display_name").get<std::string>() << " | "
               << percent(row.at("precision").get<double>()) << " | "
               << percent(row.at("recall").get<double>()) << " | "
               << percent(row.at("f1").get<double>()) << " |\n";
    }
    return os.str();
}

std::string report_markdown(const EvalReport& report) {
    std::ostringstream os;
    os << "| Metric | Value |\n|---|---|\n";
    os << "| Classifier | " << report.classifier << " |\n";
    os << "| Precision | " << percent(report.positive.precision) << " |\n";
    os << "| Recall | " << percent(report.positive.recall) << " |\n";
    os << "| F1 | " << percent(report.positive.f1) << " |\n";
    os << "| F2 | " << percent(report.positive.f2) << " |\n";
    os << "| Macro F1 | " << percent(report.macro_f1) << " |\n";
    return os.str();
}

} // namespace instaudit
