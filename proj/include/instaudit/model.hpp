#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "instaudit/logistic.hpp"
#include "instaudit/matrix.hpp"
#include "instaudit/mlp.hpp"
#include "instaudit/naive_bayes.hpp"
#include "instaudit/svm.hpp"

namespace instaudit {

enum class ClassifierKind { gaussian_nb, bernoulli_nb, logreg, svm_rbf, mlp };

std::string classifier_name(ClassifierKind kind);
ClassifierKind classifier_from_name(const std::string& name);

// Classifier selection plus hyperparameters. Defaults are the production
// settings: SVM C=100 gamma=1, logreg C=1000 tol=0.1, MLP 2x32 ADAM.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::svm_rbf;
    std::map<std::string, double> hyperparameters;
    std::uint64_t seed = 42;

    double get(const std::string& name, double fallback) const {
        auto it = hyperparameters.find(name);
        return it == hyperparameters.end() ? fallback : it->second;
    }
};

using TrainedModel =
    std::variant<GaussianNbModel, BernoulliNbModel, LogRegModel, SvmModel, MlpModel>;

ClassifierKind model_kind(const TrainedModel& model);

TrainedModel train_classifier(const ClassifierSpec& spec, const FeatureMatrix& matrix);

// Hard 0/1 labels. Probability models break ties toward class 0; an SVM
// decision value of exactly 0 goes to class 1.
std::vector<int> predict(const TrainedModel& model, const FeatureMatrix& matrix);

// (P(class 0), P(class 1)) per row; throws for SVM models.
std::vector<std::array<double, 2>> predict_proba(const TrainedModel& model,
                                                 const FeatureMatrix& matrix);

// JSON round trip: kind tag, hyperparameters and parameter arrays.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

} // namespace instaudit
