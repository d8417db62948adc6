#include "doctest_main.hpp"

#include <algorithm>
#include <cmath>

#include "instaudit/dataset.hpp"
#include "instaudit/model.hpp"
#include "instaudit/rng.hpp"

using namespace instaudit;

namespace {

FeatureMatrix points(std::vector<std::vector<double>> rows, std::vector<int> labels) {
    FeatureMatrix m;
    for (std::size_t j = 0; j < rows[0].size(); ++j)
        m.column_names.push_back("x" + std::to_string(j));
    m.column_kinds.assign(rows[0].size(), ColumnKind::continuous);
    for (const auto& row : rows) m.values.insert(m.values.end(), row.begin(), row.end());
    m.labels = std::move(labels);
    return m;
}

// Dual objective of the soft-margin SVM at the model's multipliers.
double dual_objective(const FeatureMatrix& m, const std::vector<double>& alpha, double gamma) {
    std::vector<double> y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) y[i] = m.labels[i] == 1 ? 1.0 : -1.0;
    double obj = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) obj += alpha[i];
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            obj -= 0.5 * alpha[i] * alpha[j] * y[i] * y[j] *
                   rbf_kernel(m.row(i), m.row(j), gamma);
    return obj;
}

// Multipliers per training row, recovered from the support-vector coefficients.
std::vector<double> alphas_of(const SvmModel& model, const FeatureMatrix& m) {
    std::vector<double> alpha(m.rows(), 0.0);
    std::vector<bool> used(model.n_support(), false);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t s = 0; s < model.n_support(); ++s) {
            if (used[s]) continue;
            const auto sv = model.support_vector(s);
            bool same = true;
            for (std::size_t j = 0; j < sv.size(); ++j)
                if (sv[j] != m.at(i, j)) same = false;
            if (same) {
                alpha[i] = std::abs(model.coef[s]);
                used[s] = true;
                break;
            }
        }
    }
    return alpha;
}

void check_kkt(const SvmModel& model, const FeatureMatrix& m, double C, double tol) {
    const auto alpha = alphas_of(model, m);
    const auto dec = svm_decision(model, m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double y = m.labels[i] == 1 ? 1.0 : -1.0;
        const double margin = y * dec[i];
        if (alpha[i] <= 1e-12) CHECK(margin >= 1.0 - tol - 1e-9);
        else if (alpha[i] >= C - 1e-12) CHECK(margin <= 1.0 + tol + 1e-9);
        else CHECK(std::abs(margin - 1.0) <= tol + 1e-9);
    }
}

} // namespace

TEST_CASE("rbf_kernel") {
    const std::vector<double> x = {0.3, -0.7}, y = {1.3, -0.7};
    CHECK(rbf_kernel(x, x, 1.0) == 1.0);
    // gamma=1, squared distance 1 -> 1/e
    CHECK(rbf_kernel(x, y, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(rbf_kernel(x, y, 1.0) == doctest::Approx(0.367879).epsilon(1e-5));
    CHECK_THROWS_AS(rbf_kernel(x, std::vector<double>{1.0}, 1.0), DomainError);
}

TEST_CASE("smo solves the two-point problem to its closed form") {
    const auto m = points({{0.0, 0.0}, {1.0, 0.0}}, {1, 0});
    SvmConfig cfg;
    cfg.C = 100.0;
    cfg.gamma = 1.0;
    const SvmModel model = fit_svm_smo(m, cfg);

    // With one point per class the dual reduces to a scalar problem:
    // max 2a - a^2 (K11 + K22 - 2 K12) / 2 -> a* = 2 / (2 - 2 K12)
    const double k12 = rbf_kernel(m.row(0), m.row(1), 1.0);
    const double a_star = std::min(cfg.C, 2.0 / (2.0 - 2.0 * k12));
    const double expected_obj = 2.0 * a_star - a_star * a_star * (1.0 - k12);

    REQUIRE(model.n_support() == 2);
    const auto alpha = alphas_of(model, m);
    CHECK(alpha[0] == doctest::Approx(a_star).epsilon(1e-6));
    CHECK(alpha[1] == doctest::Approx(a_star).epsilon(1e-6));
    CHECK(dual_objective(m, alpha, 1.0) == doctest::Approx(expected_obj).epsilon(1e-9));

    // classification by proximity
    const auto test = points({{-0.2, 0.1}, {1.2, -0.1}}, {1, 0});
    CHECK(predict(TrainedModel{model}, test) == std::vector<int>{1, 0});
    check_kkt(model, m, cfg.C, cfg.tol);
}

TEST_CASE("smo clips conflicting duplicate labels at C") {
    // same point with both labels: eta = 0, both multipliers pushed to the box
    const auto m = points({{0.5, 0.5}, {0.5, 0.5}}, {1, 0});
    SvmConfig cfg;
    cfg.C = 100.0;
    const SvmModel model = fit_svm_smo(m, cfg);
    const auto alpha = alphas_of(model, m);
    CHECK(alpha[0] == doctest::Approx(cfg.C));
    CHECK(alpha[1] == doctest::Approx(cfg.C));
}

TEST_CASE("smo separates the xor pattern with an rbf kernel") {
    const auto m = points({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {1, 1, 0, 0});
    SvmConfig cfg;
    cfg.C = 100.0;
    cfg.gamma = 1.0;
    const SvmModel model = fit_svm_smo(m, cfg);
    CHECK(predict(TrainedModel{model}, m) == m.labels);
    check_kkt(model, m, cfg.C, cfg.tol);
}

TEST_CASE("smo satisfies its constraints on a synthetic problem") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 60, 30, 19);
    FeatureMatrix m = to_matrix(d);
    // scale into kernel-friendly range
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = std::tanh(m.at(r, j) / 500.0);

    SvmConfig cfg;
    cfg.C = 10.0;
    const SvmModel model = fit_svm_smo(m, cfg);

    const auto alpha = alphas_of(model, m);
    double balance = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        CHECK(alpha[i] >= 0.0);
        CHECK(alpha[i] <= cfg.C + 1e-12);
        balance += alpha[i] * (m.labels[i] == 1 ? 1.0 : -1.0);
    }
    CHECK(std::abs(balance) <= 1e-8);
    CHECK(dual_objective(m, alpha, cfg.gamma) >= 0.0); // alpha=0 scores 0
    check_kkt(model, m, cfg.C, cfg.tol);
}

TEST_CASE("svm rejects single-class input and mismatched dimensions") {
    const auto m = points({{0, 0}, {1, 1}}, {1, 1});
    CHECK_THROWS_AS(fit_svm_smo(m, SvmConfig{}), DomainError);

    const auto ok = points({{0, 0}, {1, 1}}, {1, 0});
    const SvmModel model = fit_svm_smo(ok, SvmConfig{});
    CHECK_THROWS_AS(svm_decision(model, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("logreg gradient matches central finite differences") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 4 + rng.next_below(5), d = 1 + rng.next_below(4);
        std::vector<std::vector<double>> rows(n);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) rows[i].push_back(rng.next_range(-2, 2));
            labels[i] = int(rng.next_bool());
        }
        if (std::count(labels.begin(), labels.end(), 1) == 0) labels[0] = 1;
        if (std::count(labels.begin(), labels.end(), 0) == 0) labels[1] = 0;
        const auto m = points(rows, labels);

        std::vector<double> w(d);
        for (auto& wi : w) wi = rng.next_range(-1, 1);
        double b = rng.next_range(-1, 1);
        const double C = 10.0;

        std::vector<double> grad(d);
        double grad_b = 0.0;
        logreg_gradient(m, w, b, C, grad, grad_b);

        const double h = 1e-5;
        for (std::size_t j = 0; j < d; ++j) {
            auto wp = w, wm = w;
            wp[j] += h;
            wm[j] -= h;
            const double fd = (logreg_loss(m, wp, b, C) - logreg_loss(m, wm, b, C)) / (2 * h);
            const double rel = std::abs(fd - grad[j]) / std::max({1.0, std::abs(fd), std::abs(grad[j])});
            CHECK(rel <= 1e-4);
        }
        const double fdb = (logreg_loss(m, w, b + h, C) - logreg_loss(m, w, b - h, C)) / (2 * h);
        CHECK(std::abs(fdb - grad_b) / std::max(1.0, std::abs(fdb)) <= 1e-4);
    }
}

TEST_CASE("logreg learns signs and symmetry") {
    // symmetric data: x and -x with opposite labels -> bias ~ 0
    const auto sym = points({{1.0}, {-1.0}, {2.0}, {-2.0}}, {1, 0, 1, 0});
    LogRegConfig cfg;
    cfg.C = 1000.0;
    cfg.tol = 0.01;
    const LogRegModel model = fit_logreg_ncg(sym, cfg);
    CHECK(std::abs(model.bias) <= 0.05);
    CHECK(model.weights[0] > 0.0); // separated classes at -1/+1 pull the weight positive

    // production defaults drive a clean one-dimensional separation
    const auto easy =
        points({{-1.2}, {-1.0}, {-0.8}, {0.8}, {1.0}, {1.2}}, {0, 0, 0, 1, 1, 1});
    const LogRegModel prod = fit_logreg_ncg(easy);
    CHECK(prod.C == 1000.0);
    CHECK(prod.tol == 0.1);
    CHECK(prod.weights[0] > 0.0);
    CHECK(predict(TrainedModel{prod}, easy) == easy.labels);
}

TEST_CASE("logreg label swap flips its decision exactly") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 40, 30, 33);
    FeatureMatrix m = to_matrix(d);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = std::tanh(m.at(r, j) / 300.0);

    FeatureMatrix swapped = m;
    for (auto& y : swapped.labels) y = 1 - y;

    LogRegConfig cfg;
    cfg.C = 5.0;
    cfg.tol = 1e-6;
    const LogRegModel a = fit_logreg_ncg(m, cfg);
    const LogRegModel b = fit_logreg_ncg(swapped, cfg);
    const auto pa = logreg_prob(a, m);
    const auto pb = logreg_prob(b, m);
    for (std::size_t r = 0; r < m.rows(); ++r)
        CHECK(pa[r] == doctest::Approx(1.0 - pb[r]).epsilon(1e-4));

    // the hard labels swap one for one
    const auto preds_a = predict(TrainedModel{a}, m);
    const auto preds_b = predict(TrainedModel{b}, m);
    for (std::size_t r = 0; r < m.rows(); ++r) CHECK(preds_a[r] == 1 - preds_b[r]);
}

TEST_CASE("gaussian nb recovers an obvious posterior") {
    // class 0 centered at 10, class 1 centered at 0, unit-ish variance
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (double off : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        rows.push_back({10.0 + off});
        labels.push_back(0);
        rows.push_back({0.0 + off});
        labels.push_back(1);
    }
    const auto m = points(rows, labels);
    const GaussianNbModel model = fit_gaussian_nb(m);

    const auto test = points({{0.0}}, {1});
    const auto proba = predict_proba(TrainedModel{model}, test);
    CHECK(proba[0][1] > 0.99);
    CHECK(predict(TrainedModel{model}, test) == std::vector<int>{1});
}

TEST_CASE("gaussian nb on identical class distributions sits at the prior") {
    const auto m = points({{1.0}, {2.0}, {3.0}, {1.0}, {2.0}, {3.0}},
                          {0, 0, 0, 1, 1, 1});
    const GaussianNbModel model = fit_gaussian_nb(m);
    const auto proba = predict_proba(TrainedModel{model}, points({{2.0}}, {0}));
    CHECK(proba[0][0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(proba[0][1] == doctest::Approx(0.5).epsilon(1e-9));
    // exact tie breaks toward class 0
    CHECK(predict(TrainedModel{model}, points({{2.0}}, {0})) == std::vector<int>{0});
}

TEST_CASE("gaussian nb priors come from the class counts") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 1002, 201, 2);
    const GaussianNbModel model = fit_gaussian_nb(to_matrix(d));
    CHECK(std::exp(model.log_prior[0]) == doctest::Approx(1002.0 / 1203.0).epsilon(1e-12));
    CHECK(std::exp(model.log_prior[1]) == doctest::Approx(201.0 / 1203.0).epsilon(1e-12));
    CHECK(std::exp(model.log_prior[0]) == doctest::Approx(0.833).epsilon(1e-3));
    CHECK(std::exp(model.log_prior[1]) == doctest::Approx(0.167).epsilon(2e-3));
}

TEST_CASE("gaussian nb log-space equals direct probability where representable") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 30, 20, 41);
    const FeatureMatrix m = to_matrix(d);
    const GaussianNbModel model = fit_gaussian_nb(m);
    const auto joint = gaussian_nb_log_joint(model, m);
    const auto proba = predict_proba(TrainedModel{model}, m);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        // direct-probability oracle
        const double p0 = std::exp(joint[r][0]);
        const double p1 = std::exp(joint[r][1]);
        if (p0 > 0.0 || p1 > 0.0) {
            CHECK(proba[r][0] == doctest::Approx(p0 / (p0 + p1)).epsilon(1e-9));
            CHECK(proba[r][1] == doctest::Approx(p1 / (p0 + p1)).epsilon(1e-9));
        }
        CHECK(proba[r][0] + proba[r][1] == doctest::Approx(1.0).epsilon(1e-9));
    }

    // far outliers saturate without NaN
    const auto far = points({{1e9, 1e9, 1e9, 1e9, 1e9}}, {0});
    const auto fp = predict_proba(TrainedModel{model}, far);
    CHECK(std::isfinite(fp[0][0]));
    CHECK(std::isfinite(fp[0][1]));
    CHECK(fp[0][0] + fp[0][1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gaussian nb label swap mirrors posteriors exactly") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 25, 25, 55);
    const FeatureMatrix m = to_matrix(d);
    FeatureMatrix swapped = m;
    for (auto& y : swapped.labels) y = 1 - y;
    const auto pa = predict_proba(TrainedModel{fit_gaussian_nb(m)}, m);
    const auto pb = predict_proba(TrainedModel{fit_gaussian_nb(swapped)}, m);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        CHECK(pa[r][0] == pb[r][1]);
        CHECK(pa[r][1] == pb[r][0]);
    }
    const auto preds_a = predict(TrainedModel{fit_gaussian_nb(m)}, m);
    const auto preds_b = predict(TrainedModel{fit_gaussian_nb(swapped)}, m);
    for (std::size_t r = 0; r < m.rows(); ++r) CHECK(preds_a[r] == 1 - preds_b[r]);

    const auto bn_a = predict(TrainedModel{fit_bernoulli_nb(m)}, m);
    const auto bn_b = predict(TrainedModel{fit_bernoulli_nb(swapped)}, m);
    for (std::size_t r = 0; r < m.rows(); ++r) CHECK(bn_a[r] == 1 - bn_b[r]);
}

TEST_CASE("bernoulli nb two-line posterior") {
    // P(x=1|class1) = 0.9, P(x=1|class0) = 0.1 after smoothing-free arithmetic;
    // build counts that keep the smoothed thetas on the same side
    FeatureMatrix m;
    m.column_names = {"flag"};
    m.column_kinds = {ColumnKind::binary};
    for (int i = 0; i < 9; ++i) { m.values.push_back(1.0); m.labels.push_back(1); }
    m.values.push_back(0.0); m.labels.push_back(1);
    for (int i = 0; i < 9; ++i) { m.values.push_back(0.0); m.labels.push_back(0); }
    m.values.push_back(1.0); m.labels.push_back(0);

    const BernoulliNbModel model = fit_bernoulli_nb(m);
    CHECK(model.theta_at(1, 0) == doctest::Approx(10.0 / 12.0).epsilon(1e-12)); // (9+1)/(10+2)
    CHECK(model.theta_at(0, 0) == doctest::Approx(2.0 / 12.0).epsilon(1e-12));

    const auto on = predict_proba(TrainedModel{model}, points({{1.0}}, {1}));
    CHECK(on[0][1] > on[0][0]);
}

TEST_CASE("bernoulli nb constant feature contributes equally") {
    FeatureMatrix m;
    m.column_names = {"always"};
    m.column_kinds = {ColumnKind::binary};
    for (int i = 0; i < 4; ++i) { m.values.push_back(1.0); m.labels.push_back(i < 2 ? 0 : 1); }
    const BernoulliNbModel model = fit_bernoulli_nb(m);
    // smoothing keeps theta strictly inside (0,1)
    for (int c = 0; c < 2; ++c) {
        CHECK(model.theta_at(c, 0) > 0.0);
        CHECK(model.theta_at(c, 0) < 1.0);
    }
    const auto proba = predict_proba(TrainedModel{model}, points({{1.0}}, {0}));
    CHECK(proba[0][0] == doctest::Approx(0.5).epsilon(1e-12)); // posterior = priors
}

TEST_CASE("bernoulli nb thresholds continuous columns at the training median") {
    const auto m = points({{1.0}, {2.0}, {3.0}, {10.0}, {20.0}, {30.0}}, {0, 0, 0, 1, 1, 1});
    const BernoulliNbModel model = fit_bernoulli_nb(m);
    CHECK(model.threshold[0] == doctest::Approx(6.5)); // median of {1,2,3,10,20,30}
    CHECK(predict(TrainedModel{model}, points({{2.5}}, {0}))[0] == 0);
    CHECK(predict(TrainedModel{model}, points({{25.0}}, {0}))[0] == 1);
}

TEST_CASE("mlp output probabilities sum to one") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 20, 20, 77);
    const FeatureMatrix m = to_matrix(d);
    MlpConfig cfg;
    cfg.epochs = 3;
    const MlpModel model = fit_mlp_adam(m, cfg);
    for (const auto& p : mlp_proba(model, m)) {
        CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(p[0] >= 0.0);
        CHECK(p[1] >= 0.0);
    }
}

TEST_CASE("mlp fits linearly separable blobs to full training accuracy") {
    Rng rng(13);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 60; ++i) {
        const bool pos = i % 2 == 0;
        rows.push_back({(pos ? 1.0 : -1.0) + rng.next_range(-0.4, 0.4),
                        (pos ? 1.0 : -1.0) + rng.next_range(-0.4, 0.4)});
        labels.push_back(pos ? 1 : 0);
    }
    const auto m = points(rows, labels);
    MlpConfig cfg;
    cfg.seed = 4;
    const MlpModel model = fit_mlp_adam(m, cfg);
    CHECK(predict(TrainedModel{model}, m) == m.labels);
}

TEST_CASE("mlp analytic gradient matches central finite differences") {
    Rng rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t d = 2 + rng.next_below(3);
        std::vector<std::vector<double>> rows;
        std::vector<int> labels;
        for (int i = 0; i < 3; ++i) {
            std::vector<double> row;
            for (std::size_t j = 0; j < d; ++j) row.push_back(rng.next_range(-1, 1));
            rows.push_back(std::move(row));
            labels.push_back(int(rng.next_bool()));
        }
        const auto batch = points(rows, labels);

        MlpConfig cfg;
        cfg.seed = 100 + trial;
        MlpModel model = mlp_init(d, cfg);
        const auto grad = mlp_gradient(model, batch);

        const double h = 1e-5;
        double max_rel = 0.0;
        for (std::size_t i = 0; i < model.params.size(); ++i) {
            const double keep = model.params[i];
            model.params[i] = keep + h;
            const double up = mlp_loss(model, batch);
            model.params[i] = keep - h;
            const double down = mlp_loss(model, batch);
            model.params[i] = keep;
            const double fd = (up - down) / (2 * h);
            max_rel = std::max(max_rel, std::abs(fd - grad[i]) /
                                            std::max({1.0, std::abs(fd), std::abs(grad[i])}));
        }
        CHECK(max_rel <= 1e-4);
    }
}

TEST_CASE("mlp training is bit-deterministic per seed") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 30, 30, 3);
    const FeatureMatrix m = to_matrix(d);
    MlpConfig cfg;
    cfg.epochs = 5;
    cfg.seed = 9;
    const MlpModel a = fit_mlp_adam(m, cfg);
    const MlpModel b = fit_mlp_adam(m, cfg);
    CHECK(a.params == b.params);
    cfg.seed = 10;
    const MlpModel c = fit_mlp_adam(m, cfg);
    CHECK(a.params != c.params);
}

TEST_CASE("predict_proba is unsupported for svm models") {
    const auto m = points({{0, 0}, {1, 1}}, {1, 0});
    const TrainedModel model{fit_svm_smo(m, SvmConfig{})};
    CHECK_THROWS_AS(predict_proba(model, m), DomainError);
    CHECK(predict(model, m).size() == 2);
}

TEST_CASE("svm decision value of exactly zero goes to the positive class") {
    SvmModel degenerate;
    degenerate.dim = 1;
    degenerate.bias = 0.0; // no support vectors: decision is identically 0
    degenerate.gamma = 1.0;
    const auto preds = predict(TrainedModel{degenerate}, points({{0.3}}, {0}));
    CHECK(preds == std::vector<int>{1});
}

TEST_CASE("model json round trip is parameter-exact") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 25, 20, 12);
    FeatureMatrix m = to_matrix(d);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = std::tanh(m.at(r, j) / 100.0);

    for (const ClassifierKind kind :
         {ClassifierKind::gaussian_nb, ClassifierKind::bernoulli_nb, ClassifierKind::logreg,
          ClassifierKind::svm_rbf, ClassifierKind::mlp}) {
        ClassifierSpec spec;
        spec.kind = kind;
        spec.seed = 3;
        if (kind == ClassifierKind::mlp) spec.hyperparameters["epochs"] = 3;
        const TrainedModel model = train_classifier(spec, m);
        const TrainedModel back = model_from_json(model_to_json(model));
        CHECK(model_kind(back) == kind);
        // shortest-round-trip doubles reparse exactly, so predictions agree bit for bit
        CHECK(predict(back, m) == predict(model, m));
        if (kind == ClassifierKind::mlp) {
            const auto& a = std::get<MlpModel>(model).params;
            const auto& b = std::get<MlpModel>(back).params;
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
        }
        if (kind == ClassifierKind::logreg) {
            CHECK(std::get<LogRegModel>(back).weights == std::get<LogRegModel>(model).weights);
            CHECK(std::get<LogRegModel>(back).bias == std::get<LogRegModel>(model).bias);
        }
        if (kind == ClassifierKind::svm_rbf) {
            CHECK(std::get<SvmModel>(back).coef == std::get<SvmModel>(model).coef);
            CHECK(std::get<SvmModel>(back).bias == std::get<SvmModel>(model).bias);
        }
        if (kind != ClassifierKind::svm_rbf) {
            const auto pa = predict_proba(model, m);
            const auto pb = predict_proba(back, m);
            for (std::size_t r = 0; r < m.rows(); ++r) {
                CHECK(std::abs(pa[r][0] - pb[r][0]) <= 1e-12);
                CHECK(std::abs(pa[r][1] - pb[r][1]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("training is deterministic for every classifier kind") {
    const Dataset d = generate_synthetic_dataset(Schema::fake, 30, 25, 21);
    FeatureMatrix m = to_matrix(d);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = std::tanh(m.at(r, j) / 100.0);

    for (const ClassifierKind kind :
         {ClassifierKind::gaussian_nb, ClassifierKind::bernoulli_nb, ClassifierKind::logreg,
          ClassifierKind::svm_rbf, ClassifierKind::mlp}) {
        ClassifierSpec spec;
        spec.kind = kind;
        spec.seed = 77;
        if (kind == ClassifierKind::mlp) spec.hyperparameters["epochs"] = 4;
        const TrainedModel a = train_classifier(spec, m);
        const TrainedModel b = train_classifier(spec, m);
        CHECK(model_to_json(a) == model_to_json(b));
        CHECK(predict(a, m) == predict(b, m));
    }
}
