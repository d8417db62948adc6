#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "instaudit/dataset.hpp"
#include "instaudit/genetic.hpp"
#include "instaudit/metrics.hpp"
#include "instaudit/pipeline.hpp"
#include "instaudit/preprocess.hpp"
#include "instaudit/smote.hpp"

namespace py = pybind11;
using namespace instaudit;

namespace {

ColumnKind kind_from_name(const std::string& k) {
    if (k == "continuous") return ColumnKind::continuous;
    if (k == "binary") return ColumnKind::binary;
    throw DomainError("unknown column kind '" + k + "'");
}

FeatureMatrix make_matrix(std::vector<std::string> names, std::vector<std::string> kinds,
                          std::vector<std::vector<double>> rows, std::vector<int> labels) {
    if (names.size() != kinds.size()) throw DomainError("names/kinds length mismatch");
    if (rows.size() != labels.size()) throw DomainError("rows/labels length mismatch");
    FeatureMatrix m;
    m.column_names = std::move(names);
    for (const auto& k : kinds) m.column_kinds.push_back(kind_from_name(k));
    for (const auto& row : rows) {
        if (row.size() != m.column_names.size()) throw DomainError("ragged row");
        m.values.insert(m.values.end(), row.begin(), row.end());
    }
    m.labels = std::move(labels);
    return m;
}

std::vector<std::vector<double>> matrix_rows(const FeatureMatrix& m) {
    std::vector<std::vector<double>> out;
    out.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

ClassifierSpec make_spec(const std::string& kind, const std::map<std::string, double>& params,
                         std::uint64_t seed) {
    ClassifierSpec spec;
    spec.kind = classifier_from_name(kind);
    spec.hyperparameters = params;
    spec.seed = seed;
    return spec;
}

// stl.h converts std::variant automatically, which would bypass a class
// binding for TrainedModel; a holder struct keeps the model opaque.
struct ModelHandle {
    TrainedModel model;
};

} // namespace

PYBIND11_MODULE(_instaudit, m) {
    m.doc() = "Instagram fake/automated account classification pipeline";

    py::register_exception<DataError>(m, "DataError");

    py::enum_<Schema>(m, "Schema")
        .value("fake", Schema::fake)
        .value("automated", Schema::automated);

    py::class_<FeatureMatrix>(m, "FeatureMatrix")
        .def(py::init(&make_matrix), py::arg("column_names"), py::arg("column_kinds"),
             py::arg("rows"), py::arg("labels"))
        .def_readonly("column_names", &FeatureMatrix::column_names)
        .def_property_readonly("column_kinds",
                               [](const FeatureMatrix& m) {
                                   std::vector<std::string> out;
                                   for (auto k : m.column_kinds)
                                       out.push_back(k == ColumnKind::continuous ? "continuous"
                                                                                 : "binary");
                                   return out;
                               })
        .def_readonly("labels", &FeatureMatrix::labels)
        .def_property_readonly("rows", &matrix_rows)
        .def_property_readonly("n_rows", &FeatureMatrix::rows)
        .def_property_readonly("n_cols", &FeatureMatrix::cols);

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("schema", [](const Dataset& d) { return d.schema; })
        .def_readonly("source", &Dataset::source)
        .def("__len__", &Dataset::size)
        .def("count_label", &Dataset::count_label, py::arg("label"))
        .def("to_json", &dataset_to_json);

    m.def("load_dataset", py::overload_cast<const std::string&>(&load_dataset),
          py::arg("json_text"));
    m.def("load_dataset_file", py::overload_cast<const std::string&>(&load_dataset_file),
          py::arg("path"));
    m.def("generate_synthetic_dataset", &generate_synthetic_dataset, py::arg("schema"),
          py::arg("n_real"), py::arg("n_positive"), py::arg("seed"));
    m.def("to_matrix", &to_matrix, py::arg("dataset"));
    m.def("count_digits", &count_digits, py::arg("username"));
    m.def("class_histogram",
          [](const FeatureMatrix& matrix, const std::string& column, std::size_t bins) {
              const ClassHistogram h = class_histogram(matrix, column, bins);
              return py::make_tuple(h.edges, h.class0, h.class1);
          },
          py::arg("matrix"), py::arg("column"), py::arg("bins"));

    m.def("train_test_split",
          [](const FeatureMatrix& matrix, double train_fraction, std::uint64_t seed,
             bool stratified) {
              SplitSpec spec{train_fraction, seed, stratified};
              auto split = train_test_split(matrix, spec);
              return py::make_tuple(split.train, split.test);
          },
          py::arg("matrix"), py::arg("train_fraction") = 0.7, py::arg("seed") = 42,
          py::arg("stratified") = true);

    m.def("stratified_kfold",
          [](const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed) {
              py::list out;
              for (const auto& fold : stratified_kfold(matrix, k, seed))
                  out.append(py::make_tuple(fold.train, fold.validation));
              return out;
          },
          py::arg("matrix"), py::arg("k"), py::arg("seed") = 42);

    m.def("fit_minmax_bounds", [](const FeatureMatrix& matrix) {
        const MinMaxScaler s = fit_minmax(matrix);
        return py::make_tuple(s.col_min, s.col_max);
    });
    m.def("minmax_scale",
          [](const FeatureMatrix& fit_on, const FeatureMatrix& apply_to) {
              return apply_minmax(fit_minmax(fit_on), apply_to);
          },
          py::arg("fit_on"), py::arg("apply_to"));

    m.def("smotenc_balance",
          [](const FeatureMatrix& matrix, std::size_t k, std::optional<std::size_t> target,
             std::uint64_t seed) {
              SmoteConfig cfg{k, target, seed};
              return smotenc_balance(matrix, cfg);
          },
          py::arg("matrix"), py::arg("k") = 5, py::arg("target") = std::nullopt,
          py::arg("seed") = 42, py::call_guard<py::gil_scoped_release>());
    m.def("median_std", &median_std, py::arg("matrix"), py::arg("class_label"));
    m.def("smotenc_distance",
          [](const std::vector<double>& a, const std::vector<double>& b,
             const std::vector<std::string>& kinds, double med) {
              std::vector<ColumnKind> parsed;
              for (const auto& k : kinds) parsed.push_back(kind_from_name(k));
              return smotenc_distance(a, b, parsed, med);
          },
          py::arg("a"), py::arg("b"), py::arg("kinds"), py::arg("med"));

    m.def("automated_feature_costs", [] { return automated_feature_costs().costs; });
    m.def("total_cost", [](const std::vector<int>& bits, const std::vector<int>& costs) {
        FeatureMask mask;
        mask.bits.assign(bits.begin(), bits.end());
        CostTable table{costs};
        return total_cost(mask, table);
    });
    m.def("evolve",
          [](const FeatureMatrix& matrix, const std::vector<int>& costs, std::size_t population,
             std::size_t generations, double mutation_rate, double cost_weight,
             std::uint64_t seed, std::optional<FitnessEvaluator> evaluator) {
              GaConfig cfg;
              cfg.population_size = population;
              cfg.generations = generations;
              cfg.mutation_rate = mutation_rate;
              cfg.cost_weight = cost_weight;
              cfg.seed = seed;
              CostTable table{costs};
              GaResult result;
              {
                  // Python evaluators reacquire the GIL per call.
                  py::gil_scoped_release release;
                  result = evolve(matrix, table, cfg, evaluator ? *evaluator : mlp_f2_evaluator());
              }
              std::vector<int> best(result.best.bits.begin(), result.best.bits.end());
              std::vector<std::vector<int>> masks;
              for (const auto& mask : result.trace.best_mask)
                  masks.emplace_back(mask.bits.begin(), mask.bits.end());
              return py::make_tuple(best, result.trace.best_fitness, masks);
          },
          py::arg("matrix"), py::arg("costs"), py::arg("population") = 20,
          py::arg("generations") = 10, py::arg("mutation_rate") = 0.05,
          py::arg("cost_weight") = 2.0, py::arg("seed") = 42,
          py::arg("evaluator") = std::nullopt);
    m.def("reduce",
          [](const FeatureMatrix& matrix, const std::vector<int>& bits) {
              FeatureMask mask;
              mask.bits.assign(bits.begin(), bits.end());
              return reduce(matrix, mask);
          },
          py::arg("matrix"), py::arg("mask"));

    py::class_<ModelHandle>(m, "TrainedModel")
        .def_property_readonly(
            "kind", [](const ModelHandle& h) { return classifier_name(model_kind(h.model)); })
        .def("to_json", [](const ModelHandle& h) { return model_to_json(h.model); });

    m.def("train_classifier",
          [](const std::string& kind, const FeatureMatrix& matrix,
             const std::map<std::string, double>& params, std::uint64_t seed) {
              return ModelHandle{train_classifier(make_spec(kind, params, seed), matrix)};
          },
          py::arg("kind"), py::arg("matrix"),
          py::arg("params") = std::map<std::string, double>{}, py::arg("seed") = 42,
          py::call_guard<py::gil_scoped_release>());
    m.def("model_from_json",
          [](const std::string& text) { return ModelHandle{model_from_json(text)}; },
          py::arg("text"));
    m.def("predict",
          [](const ModelHandle& h, const FeatureMatrix& matrix) { return predict(h.model, matrix); },
          py::arg("model"), py::arg("matrix"));
    m.def("predict_proba",
          [](const ModelHandle& h, const FeatureMatrix& matrix) {
              const auto proba = predict_proba(h.model, matrix);
              std::vector<std::pair<double, double>> out;
              out.reserve(proba.size());
              for (const auto& p : proba) out.emplace_back(p[0], p[1]);
              return out;
          },
          py::arg("model"), py::arg("matrix"));

    m.def("confusion", [](const std::vector<int>& labels, const std::vector<int>& preds) {
        const ConfusionMatrix cm = confusion(labels, preds);
        return py::make_tuple(cm.tp, cm.fp, cm.tn, cm.fn);
    });
    m.def("metrics", [](std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
        const Metrics mt = metrics(ConfusionMatrix{tp, fp, tn, fn});
        py::dict out;
        out["precision"] = mt.precision;
        out["recall"] = mt.recall;
        out["f1"] = mt.f1;
        out["f2"] = mt.f2;
        return out;
    });
    m.def("macro_f1", [](const std::vector<int>& labels, const std::vector<int>& preds) {
        return macro_f1(labels, preds);
    });

    m.def("grid_search",
          [](const std::string& kind, const std::map<std::string, std::vector<double>>& grid,
             const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed) {
              ParamGrid param_grid;
              param_grid.candidates = grid;
              const GridSearchResult result =
                  grid_search(classifier_from_name(kind), param_grid, matrix, k, seed);
              py::list cells;
              for (const auto& cell : result.cells) {
                  py::dict c;
                  c["params"] = cell.params;
                  c["mean_macro_f1"] = cell.mean_macro_f1;
                  c["fold_scores"] = cell.fold_scores;
                  cells.append(c);
              }
              py::dict out;
              out["best_params"] = result.best_params;
              out["best_score"] = result.best_score;
              out["cells"] = cells;
              return out;
          },
          py::arg("classifier"), py::arg("grid"), py::arg("matrix"), py::arg("k") = 10,
          py::arg("seed") = 42);

    m.def("run_evaluation",
          [](const FeatureMatrix& matrix, const std::string& kind,
             const std::map<std::string, double>& params, std::uint64_t seed, bool oversample,
             bool paper_mode, const std::string& note) {
              PipelineOptions options;
              options.seed = seed;
              options.oversample = oversample;
              options.paper_mode = paper_mode;
              return report_to_json(
                  run_evaluation(matrix, make_spec(kind, params, seed), options, note));
          },
          py::arg("matrix"), py::arg("classifier"),
          py::arg("params") = std::map<std::string, double>{}, py::arg("seed") = 42,
          py::arg("oversample") = false, py::arg("paper_mode") = false,
          py::arg("note") = "unnamed", py::call_guard<py::gil_scoped_release>());

    m.def("reproduce_table",
          [](const std::string& which, const Dataset& dataset, std::uint64_t seed,
             bool paper_mode, std::size_t ga_generations, std::size_t ga_population) {
              ReproduceOptions options;
              options.seed = seed;
              options.paper_mode = paper_mode;
              options.ga.generations = ga_generations;
              options.ga.population_size = ga_population;
              const PaperTable table = which == "fake-table" ? PaperTable::fake_table
                                                             : PaperTable::automated_table;
              return reproduce_table(table, dataset, options);
          },
          py::arg("which"), py::arg("dataset"), py::arg("seed") = 42,
          py::arg("paper_mode") = false, py::arg("ga_generations") = 10,
          py::arg("ga_population") = 20, py::call_guard<py::gil_scoped_release>());

    m.attr("__version__") = "0.1.0";
}
