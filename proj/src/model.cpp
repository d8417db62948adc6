#include "instaudit/model.hpp"

#include <cmath>

#include <json.hpp>

namespace instaudit {

using nlohmann::ordered_json;

std::string classifier_name(ClassifierKind kind) {
    switch (kind) {
    case ClassifierKind::gaussian_nb: return "gaussian-nb";
    case ClassifierKind::bernoulli_nb: return "bernoulli-nb";
    case ClassifierKind::logreg: return "logreg";
    case ClassifierKind::svm_rbf: return "svm";
    case ClassifierKind::mlp: return "mlp";
    }
    throw DomainError("unreachable classifier kind");
}

ClassifierKind classifier_from_name(const std::string& name) {
    if (name == "gaussian-nb") return ClassifierKind::gaussian_nb;
    if (name == "bernoulli-nb") return ClassifierKind::bernoulli_nb;
    if (name == "logreg") return ClassifierKind::logreg;
    if (name == "svm" || name == "svm-rbf") return ClassifierKind::svm_rbf;
    if (name == "mlp") return ClassifierKind::mlp;
    throw DomainError("unknown classifier '" + name + "'");
}

ClassifierKind model_kind(const TrainedModel& model) {
    return static_cast<ClassifierKind>(model.index());
}

TrainedModel train_classifier(const ClassifierSpec& spec, const FeatureMatrix& matrix) {
    switch (spec.kind) {
    case ClassifierKind::gaussian_nb:
        return fit_gaussian_nb(matrix);
    case ClassifierKind::bernoulli_nb:
        return fit_bernoulli_nb(matrix, spec.get("alpha", 1.0));
    case ClassifierKind::logreg: {
        LogRegConfig cfg;
        cfg.C = spec.get("C", 1000.0);
        cfg.tol = spec.get("tol", 0.1);
        return fit_logreg_ncg(matrix, cfg);
    }
    case ClassifierKind::svm_rbf: {
        SvmConfig cfg;
        cfg.C = spec.get("C", 100.0);
        cfg.gamma = spec.get("gamma", 1.0);
        cfg.tol = spec.get("tol", 1e-3);
        cfg.seed = spec.seed;
        return fit_svm_smo(matrix, cfg);
    }
    case ClassifierKind::mlp: {
        MlpConfig cfg;
        cfg.hidden_units = static_cast<std::size_t>(spec.get("hidden_units", 32));
        cfg.learning_rate = spec.get("learning_rate", 0.001);
        cfg.batch_size = static_cast<std::size_t>(spec.get("batch_size", 64));
        cfg.epochs = static_cast<std::size_t>(spec.get("epochs", 100));
        cfg.seed = spec.seed;
        return fit_mlp_adam(matrix, cfg);
    }
    }
    throw DomainError("unreachable classifier kind");
}

namespace {

// argmax with ties toward class 0
int argmax2(double p0, double p1) { return p1 > p0 ? 1 : 0; }

} // namespace

std::vector<int> predict(const TrainedModel& model, const FeatureMatrix& matrix) {
    if (const auto* svm = std::get_if<SvmModel>(&model)) {
        const auto dec = svm_decision(*svm, matrix);
        std::vector<int> out(dec.size());
        for (std::size_t r = 0; r < dec.size(); ++r) out[r] = dec[r] >= 0.0 ? 1 : 0;
        return out;
    }
    const auto proba = predict_proba(model, matrix);
    std::vector<int> out(proba.size());
    for (std::size_t r = 0; r < proba.size(); ++r) out[r] = argmax2(proba[r][0], proba[r][1]);
    return out;
}

std::vector<std::array<double, 2>> predict_proba(const TrainedModel& model,
                                                 const FeatureMatrix& matrix) {
    return std::visit(
        [&](const auto& m) -> std::vector<std::array<double, 2>> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianNbModel>) {
                auto joint = gaussian_nb_log_joint(m, matrix);
                std::vector<std::array<double, 2>> out(joint.size());
                for (std::size_t r = 0; r < joint.size(); ++r) {
                    // log-sum-exp normalization
                    const double mx = std::max(joint[r][0], joint[r][1]);
                    const double e0 = std::exp(joint[r][0] - mx);
                    const double e1 = std::exp(joint[r][1] - mx);
                    out[r] = {e0 / (e0 + e1), e1 / (e0 + e1)};
                }
                return out;
            } else if constexpr (std::is_same_v<T, BernoulliNbModel>) {
                auto joint = bernoulli_nb_log_joint(m, matrix);
                std::vector<std::array<double, 2>> out(joint.size());
                for (std::size_t r = 0; r < joint.size(); ++r) {
                    const double mx = std::max(joint[r][0], joint[r][1]);
                    const double e0 = std::exp(joint[r][0] - mx);
                    const double e1 = std::exp(joint[r][1] - mx);
                    out[r] = {e0 / (e0 + e1), e1 / (e0 + e1)};
                }
                return out;
            } else if constexpr (std::is_same_v<T, LogRegModel>) {
                auto p = logreg_prob(m, matrix);
                std::vector<std::array<double, 2>> out(p.size());
                for (std::size_t r = 0; r < p.size(); ++r) out[r] = {1.0 - p[r], p[r]};
                return out;
            } else if constexpr (std::is_same_v<T, MlpModel>) {
                return mlp_proba(m, matrix);
            } else {
                throw DomainError("probabilities unsupported for svm models");
            }
        },
        model);
}

namespace {

ordered_json to_json_array(const std::vector<double>& v) { return ordered_json(v); }

std::vector<double> doubles_from(const ordered_json& j) {
    return j.get<std::vector<double>>();
}

} // namespace

std::string model_to_json(const TrainedModel& model) {
    ordered_json doc;
    doc["kind"] = classifier_name(model_kind(model));
    ordered_json hp = ordered_json::object();
    ordered_json params = ordered_json::object();

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianNbModel>) {
                params["log_prior"] = std::vector<double>{m.log_prior[0], m.log_prior[1]};
                params["mean"] = to_json_array(m.mean);
                params["var"] = to_json_array(m.var);
                params["dim"] = m.dim;
            } else if constexpr (std::is_same_v<T, BernoulliNbModel>) {
                params["log_prior"] = std::vector<double>{m.log_prior[0], m.log_prior[1]};
                params["theta"] = to_json_array(m.theta);
                params["threshold"] = to_json_array(m.threshold);
                params["dim"] = m.dim;
            } else if constexpr (std::is_same_v<T, LogRegModel>) {
                hp["C"] = m.C;
                hp["tol"] = m.tol;
                params["weights"] = to_json_array(m.weights);
                params["bias"] = m.bias;
            } else if constexpr (std::is_same_v<T, SvmModel>) {
                hp["C"] = m.C;
                hp["gamma"] = m.gamma;
                params["support_vectors"] = to_json_array(m.support_vectors);
                params["coef"] = to_json_array(m.coef);
                params["bias"] = m.bias;
                params["dim"] = m.dim;
            } else if constexpr (std::is_same_v<T, MlpModel>) {
                hp["hidden_units"] = m.hidden_units;
                params["input_dim"] = m.input_dim;
                params["params"] = to_json_array(m.params);
            }
        },
        model);

    doc["hyperparameters"] = std::move(hp);
    doc["parameters"] = std::move(params);
    return doc.dump(2);
}

TrainedModel model_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.contains("kind") || !doc.contains("parameters"))
        throw SchemaError("model document needs 'kind' and 'parameters'");
    const auto kind = classifier_from_name(doc["kind"].get<std::string>());
    const auto& hp = doc.value("hyperparameters", ordered_json::object());
    const auto& params = doc["parameters"];

    switch (kind) {
    case ClassifierKind::gaussian_nb: {
        GaussianNbModel m;
        const auto prior = doubles_from(params.at("log_prior"));
        m.log_prior = {prior.at(0), prior.at(1)};
        m.mean = doubles_from(params.at("mean"));
        m.var = doubles_from(params.at("var"));
        m.dim = params.at("dim").get<std::size_t>();
        return m;
    }
    case ClassifierKind::bernoulli_nb: {
        BernoulliNbModel m;
        const auto prior = doubles_from(params.at("log_prior"));
        m.log_prior = {prior.at(0), prior.at(1)};
        m.theta = doubles_from(params.at("theta"));
        m.threshold = doubles_from(params.at("threshold"));
        m.dim = params.at("dim").get<std::size_t>();
        return m;
    }
    case ClassifierKind::logreg: {
        LogRegModel m;
        m.weights = doubles_from(params.at("weights"));
        m.bias = params.at("bias").get<double>();
        m.C = hp.value("C", 1000.0);
        m.tol = hp.value("tol", 0.1);
        return m;
    }
    case ClassifierKind::svm_rbf: {
        SvmModel m;
        m.support_vectors = doubles_from(params.at("support_vectors"));
        m.coef = doubles_from(params.at("coef"));
        m.bias = params.at("bias").get<double>();
        m.dim = params.at("dim").get<std::size_t>();
        m.C = hp.value("C", 100.0);
        m.gamma = hp.value("gamma", 1.0);
        return m;
    }
    case ClassifierKind::mlp: {
        MlpModel m;
        m.input_dim = params.at("input_dim").get<std::size_t>();
        m.hidden_units = hp.value("hidden_units", std::size_t{32});
        m.params = doubles_from(params.at("params"));
        return m;
    }
    }
    throw DomainError("unreachable classifier kind");
}

} // namespace instaudit
