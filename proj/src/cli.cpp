#include "instaudit/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "instaudit/dataset.hpp"
#include "instaudit/pipeline.hpp"
#include "instaudit/preprocess.hpp"
#include "instaudit/smote.hpp"

#include <CLI11.hpp>
#include <json.hpp>

namespace instaudit::cli {

namespace {

using nlohmann::ordered_json;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    out << content;
    if (!out) throw DataError("failed writing output file: " + path);
}

Dataset load_input(const std::string& path, const std::optional<std::string>& schema) {
    if (schema) return load_dataset_file(path, schema_from_name(*schema));
    return load_dataset_file(path);
}

std::string matrix_to_json(const FeatureMatrix& m) {
    ordered_json doc;
    doc["column_names"] = m.column_names;
    std::vector<std::string> kinds;
    for (auto k : m.column_kinds)
        kinds.push_back(k == ColumnKind::continuous ? "continuous" : "binary");
    doc["column_kinds"] = kinds;
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["rows"] = std::move(rows);
    doc["labels"] = m.labels;
    return doc.dump(2);
}

struct CommonArgs {
    std::string dataset_path;
    std::optional<std::string> schema;
    std::uint64_t seed = 42;
    std::string out_path;
    std::string format = "json";
};

void add_seed_out(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--seed", args.seed, "Master seed (default 42)")->capture_default_str();
    cmd->add_option("--out", args.out_path, "Output file path");
}

const auto kSchemaChoice = CLI::IsMember({"fake", "automated"});
const auto kClassifierChoice =
    CLI::IsMember({"gaussian-nb", "bernoulli-nb", "logreg", "svm", "mlp"});
const auto kFormatChoice = CLI::IsMember({"json", "md"});

int dispatch(CLI::App& app, const std::vector<std::string>& args) {
    // CLI11 wants argv reversed, without the program name.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    return -1; // parsed; caller runs the selected subcommand
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Instagram fake/automated account classification pipeline"};
    app.require_subcommand(0, 1);

    // ingest
    CommonArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "Validate a dataset file and report class counts");
    ingest->add_option("--dataset", ingest_args.dataset_path, "Dataset JSON path")->required();
    ingest->add_option("--schema", ingest_args.schema, "Expected schema: fake|automated")
        ->check(kSchemaChoice);
    add_seed_out(ingest, ingest_args);

    // synthesize
    CommonArgs synth_args;
    std::size_t n_real = 700, n_positive = 700;
    auto* synth = app.add_subcommand("synthesize", "Generate a synthetic dataset");
    synth->add_option("--schema", synth_args.schema, "fake|automated")
        ->required()
        ->check(kSchemaChoice);
    synth->add_option("--n-real", n_real, "Real-class record count")->capture_default_str();
    synth->add_option("--n-positive", n_positive, "Positive-class record count")
        ->capture_default_str();
    add_seed_out(synth, synth_args);

    // oversample
    CommonArgs over_args;
    std::size_t smote_k = 5;
    std::optional<std::size_t> smote_target;
    auto* over = app.add_subcommand("oversample",
                                    "SMOTE-NC balance a dataset; writes a feature-matrix JSON");
    over->add_option("--dataset", over_args.dataset_path, "Dataset JSON path")->required();
    over->add_option("--schema", over_args.schema, "Expected schema")->check(kSchemaChoice);
    over->add_option("--k", smote_k, "Neighbor count")->capture_default_str();
    over->add_option("--target", smote_target, "Minority target (default: match majority)");
    add_seed_out(over, over_args);

    // select-features
    CommonArgs sel_args;
    GaConfig ga;
    auto* sel = app.add_subcommand("select-features",
                                   "Cost-sensitive genetic feature selection (automated schema)");
    sel->add_option("--dataset", sel_args.dataset_path, "Dataset JSON path")->required();
    sel->add_option("--schema", sel_args.schema, "Expected schema")->check(kSchemaChoice);
    sel->add_option("--generations", ga.generations, "GA generations")->capture_default_str();
    sel->add_option("--population", ga.population_size, "GA population size")
        ->capture_default_str();
    sel->add_option("--mutation-rate", ga.mutation_rate, "GA mutation probability")
        ->capture_default_str();
    sel->add_option("--cost-weight", ga.cost_weight, "Fitness cost weight")
        ->capture_default_str();
    add_seed_out(sel, sel_args);

    // train
    CommonArgs train_args;
    std::string train_classifier_name = "svm";
    bool train_oversample = false;
    auto* train = app.add_subcommand("train", "Fit a classifier on a full dataset");
    train->add_option("--dataset", train_args.dataset_path, "Dataset JSON path")->required();
    train->add_option("--schema", train_args.schema, "Expected schema")->check(kSchemaChoice);
    train->add_option("--classifier", train_classifier_name,
                      "gaussian-nb|bernoulli-nb|logreg|svm|mlp")
        ->capture_default_str()
        ->check(kClassifierChoice);
    train->add_flag("--oversample", train_oversample, "SMOTE-NC balance before fitting");
    add_seed_out(train, train_args);

    // evaluate
    CommonArgs eval_args;
    std::string eval_classifier_name = "svm";
    bool eval_oversample = false, eval_paper_mode = false;
    auto* eval = app.add_subcommand("evaluate", "Train/test split evaluation with a report");
    eval->add_option("--dataset", eval_args.dataset_path, "Dataset JSON path")->required();
    eval->add_option("--schema", eval_args.schema, "Expected schema")->check(kSchemaChoice);
    eval->add_option("--classifier", eval_classifier_name,
                     "gaussian-nb|bernoulli-nb|logreg|svm|mlp")
        ->capture_default_str()
        ->check(kClassifierChoice);
    eval->add_flag("--oversample", eval_oversample, "SMOTE-NC balance the training portion");
    eval->add_flag("--paper-mode", eval_paper_mode, "Oversample before splitting");
    eval->add_option("--format", eval_args.format, "json|md")
        ->capture_default_str()
        ->check(kFormatChoice);
    add_seed_out(eval, eval_args);

    // reproduce
    CommonArgs rep_args;
    std::string which;
    bool rep_paper_mode = false, rep_synthetic = false;
    GaConfig rep_ga;
    auto* rep = app.add_subcommand("reproduce", "Rebuild a full result table");
    rep->add_option("which", which, "fake-table|automated-table")
        ->required()
        ->check(CLI::IsMember({"fake-table", "automated-table"}));
    rep->add_option("--dataset", rep_args.dataset_path, "Dataset JSON path");
    rep->add_flag("--synthetic", rep_synthetic, "Use the synthetic generator instead of a file");
    rep->add_flag("--paper-mode", rep_paper_mode, "Oversample before splitting (fake table)");
    rep->add_option("--generations", rep_ga.generations, "GA generations")
        ->capture_default_str();
    rep->add_option("--population", rep_ga.population_size, "GA population size")
        ->capture_default_str();
    rep->add_option("--mutation-rate", rep_ga.mutation_rate, "GA mutation probability")
        ->capture_default_str();
    rep->add_option("--format", rep_args.format, "json|md")
        ->capture_default_str()
        ->check(kFormatChoice);
    add_seed_out(rep, rep_args);

    if (const int code = dispatch(app, args); code >= 0) return code;

    try {
        if (ingest->parsed()) {
            const Dataset d = load_input(ingest_args.dataset_path, ingest_args.schema);
            if (!ingest_args.out_path.empty()) write_file(ingest_args.out_path, dataset_to_json(d));
            std::cout << schema_name(d.schema) << " dataset: " << d.size() << " records ("
                      << d.count_label(0) << " real, " << d.count_label(1) << " positive)\n";
            return 0;
        }
        if (synth->parsed()) {
            const Dataset d = generate_synthetic_dataset(schema_from_name(*synth_args.schema),
                                                         n_real, n_positive, synth_args.seed);
            const std::string payload = dataset_to_json(d);
            if (!synth_args.out_path.empty()) write_file(synth_args.out_path, payload);
            else std::cout << payload << "\n";
            std::cout << "synthesized " << schema_name(d.schema) << " dataset: " << d.size()
                      << " records\n";
            return 0;
        }
        if (over->parsed()) {
            const Dataset d = load_input(over_args.dataset_path, over_args.schema);
            SmoteConfig cfg;
            cfg.k = smote_k;
            cfg.target_per_class = smote_target;
            cfg.seed = over_args.seed;
            const FeatureMatrix balanced = smotenc_balance(to_matrix(d), cfg);
            const std::string payload = matrix_to_json(balanced);
            if (!over_args.out_path.empty()) write_file(over_args.out_path, payload);
            else std::cout << payload << "\n";
            std::cout << "balanced matrix: " << balanced.count_label(0) << " real, "
                      << balanced.count_label(1) << " positive\n";
            return 0;
        }
        if (sel->parsed()) {
            const Dataset d = load_input(sel_args.dataset_path, sel_args.schema);
            if (d.schema != Schema::automated)
                throw SchemaError("select-features needs the automated schema");
            ga.seed = sel_args.seed;
            const GaResult result =
                run_feature_selection(to_matrix(d), automated_feature_costs(), ga);
            const std::string payload = trace_to_json(result.trace);
            if (!sel_args.out_path.empty()) write_file(sel_args.out_path, payload);
            else std::cout << payload << "\n";
            std::cout << "selected " << result.best.count() << " features, best fitness "
                      << result.trace.best_fitness.back() << "\n";
            return 0;
        }
        if (train->parsed()) {
            const Dataset d = load_input(train_args.dataset_path, train_args.schema);
            FeatureMatrix matrix = to_matrix(d);
            if (train_oversample) {
                SmoteConfig cfg;
                cfg.seed = train_args.seed;
                matrix = smotenc_balance(matrix, cfg);
            }
            const MinMaxScaler scaler = fit_minmax(matrix);
            const FeatureMatrix scaled = apply_minmax(scaler, matrix);
            ClassifierSpec spec;
            spec.kind = classifier_from_name(train_classifier_name);
            spec.seed = train_args.seed;
            const TrainedModel model = train_classifier(spec, scaled);

            // Model document plus the scaler needed to feed it raw features.
            ordered_json doc = ordered_json::parse(model_to_json(model));
            ordered_json sc;
            sc["column_names"] = scaler.column_names;
            sc["min"] = scaler.col_min;
            sc["max"] = scaler.col_max;
            doc["scaler"] = std::move(sc);
            const std::string payload = doc.dump(2);
            if (!train_args.out_path.empty()) write_file(train_args.out_path, payload);
            else std::cout << payload << "\n";
            std::cout << "trained " << train_classifier_name << " on " << scaled.rows()
                      << " rows\n";
            return 0;
        }
        if (eval->parsed()) {
            const Dataset d = load_input(eval_args.dataset_path, eval_args.schema);
            ClassifierSpec spec;
            spec.kind = classifier_from_name(eval_classifier_name);
            spec.seed = eval_args.seed;
            PipelineOptions options;
            options.seed = eval_args.seed;
            options.oversample = eval_oversample;
            options.paper_mode = eval_paper_mode;
            const EvalReport report = run_evaluation(to_matrix(d), spec, options, d.source);
            const std::string payload =
                eval_args.format == "md" ? report_markdown(report) : report_to_json(report);
            if (!eval_args.out_path.empty()) write_file(eval_args.out_path, payload);
            else std::cout << payload << "\n";
            std::cout << "macro_f1=" << report.macro_f1 << " f1=" << report.positive.f1 << "\n";
            return 0;
        }
        if (rep->parsed()) {
            PaperTable table;
            if (which == "fake-table") table = PaperTable::fake_table;
            else if (which == "automated-table") table = PaperTable::automated_table;
            else throw DataError("unknown table '" + which + "'");

            Dataset d;
            const Schema wanted =
                table == PaperTable::fake_table ? Schema::fake : Schema::automated;
            if (rep_synthetic || rep_args.dataset_path.empty()) {
                d = table == PaperTable::fake_table
                        ? generate_synthetic_dataset(Schema::fake, 1002, 201, rep_args.seed)
                        : generate_synthetic_dataset(Schema::automated, 700, 700, rep_args.seed);
            } else {
                d = load_input(rep_args.dataset_path, rep_args.schema);
                if (d.schema != wanted)
                    throw SchemaError("the " + which + " needs a " + schema_name(wanted) +
                                      "-schema dataset");
            }

            ReproduceOptions options;
            options.seed = rep_args.seed;
            options.paper_mode = rep_paper_mode;
            options.ga = rep_ga;
            const std::string payload = reproduce_table(table, d, options);
            const std::string rendered =
                rep_args.format == "md" ? reproduce_markdown(payload) : payload;
            if (!rep_args.out_path.empty()) write_file(rep_args.out_path, rendered);
            else std::cout << rendered << "\n";
            std::cout << "reproduced " << which << " over " << d.size() << " records\n";
            return 0;
        }
        std::cout << app.help();
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace instaudit::cli
