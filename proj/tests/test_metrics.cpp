#include "doctest_main.hpp"

#include <algorithm>
#include <cmath>

#include "instaudit/dataset.hpp"
#include "instaudit/metrics.hpp"
#include "instaudit/preprocess.hpp"
#include "instaudit/rng.hpp"

using namespace instaudit;

TEST_CASE("confusion counts by hand") {
    const std::vector<int> labels = {1, 0, 1}, preds = {1, 1, 1};
    const ConfusionMatrix cm = confusion(labels, preds);
    CHECK(cm.tp == 2);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 0);
    CHECK(cm.fn == 0);

    const std::vector<int> y = {0, 1, 0, 1};
    const ConfusionMatrix perfect = confusion(y, y);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);

    const std::vector<int> wrong = {1, 0, 1, 0};
    const ConfusionMatrix all_wrong = confusion(y, wrong);
    CHECK(all_wrong.tp == 0);
    CHECK(all_wrong.tn == 0);
    CHECK(all_wrong.fp == 2);
    CHECK(all_wrong.fn == 2);

    CHECK_THROWS_AS(confusion(labels, y), DomainError);
}

TEST_CASE("metrics reproduce the published svm row arithmetic") {
    // tp=3731, fp=369, fn=819 give precision 0.91 and recall 0.82 exactly
    const ConfusionMatrix cm{3731, 369, 5081, 819};
    const Metrics m = metrics(cm);
    CHECK(m.precision == doctest::Approx(0.91).epsilon(1e-12));
    CHECK(m.recall == doctest::Approx(0.82).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(2.0 * 0.91 * 0.82 / (0.91 + 0.82)).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(0.8627).epsilon(1e-4));
    CHECK(std::round(m.f1 * 100.0) == 86.0);
    // Eq. 2 by hand: 5 * 0.7462 / 4.46
    CHECK(m.f2 == doctest::Approx(5.0 * 0.7462 / 4.46).epsilon(1e-12));
    CHECK(m.f2 == doctest::Approx(0.8366).epsilon(1e-4));
}

TEST_CASE("precision equal to recall collapses the f-scores") {
    const ConfusionMatrix cm{30, 10, 50, 10}; // p = r = 0.75
    const Metrics m = metrics(cm);
    CHECK(m.precision == m.recall);
    CHECK(m.f1 == doctest::Approx(m.precision).epsilon(1e-12));
    CHECK(m.f2 == doctest::Approx(m.precision).epsilon(1e-12));
}

TEST_CASE("zero denominators report zero with a flag") {
    const ConfusionMatrix no_positive_preds{0, 0, 5, 5};
    const Metrics m = metrics(no_positive_preds);
    CHECK(m.precision == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK(m.zero_denominator);

    const ConfusionMatrix no_positive_labels{0, 3, 7, 0};
    const Metrics r = metrics(no_positive_labels);
    CHECK(r.recall == 0.0);
    CHECK(r.zero_denominator);
}

TEST_CASE("macro f1 hand computations") {
    const std::vector<int> y = {0, 0, 1, 1};
    CHECK(macro_f1(y, y) == 1.0);

    // everything predicted positive: F1(pos)=2/3, F1(neg)=0 -> 1/3
    const std::vector<int> all_one = {1, 1, 1, 1};
    CHECK(macro_f1(y, all_one) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // symmetric confusion: per-class F1s coincide with the macro value
    const std::vector<int> sym_y = {1, 1, 0, 0}, sym_p = {1, 0, 0, 1};
    const Metrics pos = metrics(confusion(sym_y, sym_p));
    CHECK(macro_f1(sym_y, sym_p) == doctest::Approx(pos.f1).epsilon(1e-12));

    CHECK_THROWS_AS(macro_f1(all_one, y), DomainError);
}

TEST_CASE("f-score order and swap invariance over random confusion matrices") {
    Rng rng(47);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 4 + rng.next_below(40);
        std::vector<int> labels(n), preds(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = int(rng.next_bool());
            preds[i] = int(rng.next_bool());
        }
        if (std::count(labels.begin(), labels.end(), 1) == 0) labels[0] = 1;
        if (std::count(labels.begin(), labels.end(), 0) == 0) labels[1] = 0;

        const Metrics m = metrics(confusion(labels, preds));
        const double lo = std::min(m.precision, m.recall);
        const double hi = std::max(m.precision, m.recall);
        CHECK(m.f1 >= lo - 1e-12);
        CHECK(m.f1 <= hi + 1e-12);
        CHECK(m.f2 >= lo - 1e-12);
        CHECK(m.f2 <= hi + 1e-12);
        if (m.recall > m.precision) CHECK(m.f2 > m.f1);
        if (m.recall < m.precision && m.recall > 0.0) CHECK(m.f2 < m.f1);

        // relabeling both sides leaves the macro average unchanged
        std::vector<int> flipped_labels(n), flipped_preds(n);
        for (std::size_t i = 0; i < n; ++i) {
            flipped_labels[i] = 1 - labels[i];
            flipped_preds[i] = 1 - preds[i];
        }
        CHECK(macro_f1(labels, preds) == macro_f1(flipped_labels, flipped_preds));

        // perfect predictions always score 1 everywhere
        const Metrics id = metrics(confusion(labels, labels));
        CHECK(id.precision == 1.0);
        CHECK(id.recall == 1.0);
        CHECK(id.f1 == 1.0);
        CHECK(id.f2 == 1.0);
    }
}

TEST_CASE("evaluate assembles a full report") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 40, 20, 5);
    const FeatureMatrix m = to_matrix(d);
    ClassifierSpec spec;
    spec.kind = ClassifierKind::gaussian_nb;
    const TrainedModel model = train_classifier(spec, m);
    const EvalReport report = evaluate(model, m, spec, "unit");
    CHECK(report.confusion.total() == m.rows());
    CHECK(report.positive.f1 >= 0.0);
    CHECK(report.positive.f1 <= 1.0);
    CHECK(report.macro_f1 >= 0.0);
    CHECK(report.macro_f1 <= 1.0);
    CHECK(report.classifier == "gaussian-nb");
    CHECK(report.dataset == "unit");

    const std::string json = report_to_json(report);
    for (const char* field : {"\"tp\"", "\"fp\"", "\"tn\"", "\"fn\"", "\"precision\"",
                              "\"recall\"", "\"f1\"", "\"f2\"", "\"macro_f1\"", "\"classifier\"",
                              "\"params\"", "\"seed\"", "\"dataset\""})
        CHECK(json.find(field) != std::string::npos);
}

TEST_CASE("a majority-class model has zero positive recall on imbalanced data") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 100, 20, 61);
    const FeatureMatrix m = to_matrix(d);
    std::vector<int> all_zero(m.rows(), 0);
    const ConfusionMatrix cm = confusion(m.labels, all_zero);
    const Metrics met = metrics(cm);
    CHECK(met.recall == 0.0);
    CHECK(cm.tp == 0);
}

TEST_CASE("grid_search returns the single cell of a trivial grid") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 40, 40, 91);
    FeatureMatrix m = to_matrix(d);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = std::tanh(m.at(r, j) / 300.0);

    ParamGrid grid;
    grid.candidates["C"] = {100.0};
    grid.candidates["gamma"] = {1.0};
    const GridSearchResult result = grid_search(ClassifierKind::svm_rbf, grid, m, 4, 3);
    REQUIRE(result.cells.size() == 1);
    CHECK(result.best_params.at("C") == 100.0);
    CHECK(result.best_params.at("gamma") == 1.0);
    CHECK(result.best_score >= 0.0);
    CHECK(result.best_score <= 1.0);
}

TEST_CASE("grid_search scores duplicate cells identically and is reproducible") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 30, 30, 15);
    FeatureMatrix m = to_matrix(d);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = std::tanh(m.at(r, j) / 300.0);

    ParamGrid grid;
    grid.candidates["C"] = {10.0, 10.0}; // duplicate candidate values
    const GridSearchResult result = grid_search(ClassifierKind::logreg, grid, m, 3, 8);
    REQUIRE(result.cells.size() == 2);
    CHECK(result.cells[0].mean_macro_f1 == result.cells[1].mean_macro_f1);
    CHECK(result.cells[0].fold_scores == result.cells[1].fold_scores);
    // ties resolve to the first cell in deterministic order
    CHECK(result.best_params == result.cells[0].params);
}

TEST_CASE("grid_search means equal an independent recomputation from the folds") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 36, 24, 29);
    FeatureMatrix m = to_matrix(d);
    ParamGrid grid;
    grid.candidates["alpha"] = {1.0, 2.0};
    const std::size_t k = 4;
    const std::uint64_t seed = 17;
    const GridSearchResult result = grid_search(ClassifierKind::bernoulli_nb, grid, m, k, seed);

    // brute-force equivalence: refold, retrain, rescore
    const auto folds = stratified_kfold(m, k, seed);
    for (const auto& cell : result.cells) {
        double sum = 0.0;
        std::size_t i = 0;
        for (const auto& fold : folds) {
            ClassifierSpec spec;
            spec.kind = ClassifierKind::bernoulli_nb;
            spec.hyperparameters = cell.params;
            spec.seed = seed;
            const TrainedModel model = train_classifier(spec, m.take(fold.train));
            const auto preds = predict(model, m.take(fold.validation));
            const double score = macro_f1(m.take(fold.validation).labels, preds);
            CHECK(score == cell.fold_scores[i++]);
            sum += score;
        }
        CHECK(cell.mean_macro_f1 == doctest::Approx(sum / double(k)).epsilon(1e-15));
    }

    const GridSearchResult again = grid_search(ClassifierKind::bernoulli_nb, grid, m, k, seed);
    CHECK(again.best_params == result.best_params);
    CHECK(again.best_score == result.best_score);
}

TEST_CASE("grid_search walks cells in lexicographic parameter order") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 20, 20, 37);
    const FeatureMatrix m = to_matrix(d);
    ParamGrid grid;
    grid.candidates["beta"] = {1.0, 2.0};
    grid.candidates["alpha"] = {0.5};
    const GridSearchResult result = grid_search(ClassifierKind::gaussian_nb, grid, m, 2, 1);
    REQUIRE(result.cells.size() == 2);
    // "alpha" sorts before "beta"; beta varies fastest
    CHECK(result.cells[0].params.at("beta") == 1.0);
    CHECK(result.cells[1].params.at("beta") == 2.0);
    CHECK(result.cells[0].params.at("alpha") == 0.5);
}

TEST_CASE("grid_search rejects an empty grid") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 10, 10, 2);
    CHECK_THROWS_AS(grid_search(ClassifierKind::gaussian_nb, ParamGrid{}, to_matrix(d), 2, 1),
                    DomainError);
}
