#include "instaudit/naive_bayes.hpp"

#include <algorithm>
#include <cmath>

namespace instaudit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::array<std::vector<std::size_t>, 2> class_members(const FeatureMatrix& m) {
    std::array<std::vector<std::size_t>, 2> members;
    for (std::size_t r = 0; r < m.rows(); ++r) members[m.labels[r] == 1].push_back(r);
    return members;
}
} // namespace

GaussianNbModel fit_gaussian_nb(const FeatureMatrix& matrix) {
    const auto members = class_members(matrix);
    if (members[0].size() < 2 || members[1].size() < 2)
        throw DomainError("each class needs >= 2 rows to fit gaussian naive bayes");

    const std::size_t d = matrix.cols();
    const std::size_t n = matrix.rows();
    GaussianNbModel model;
    model.dim = d;
    model.mean.assign(2 * d, 0.0);
    model.var.assign(2 * d, 0.0);
    for (int c = 0; c < 2; ++c)
        model.log_prior[c] =
            std::log(static_cast<double>(members[c].size()) / static_cast<double>(n));

    // Overall per-feature variance sets the floor scale.
    double max_var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += matrix.at(r, j);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dv = matrix.at(r, j) - mean;
            ss += dv * dv;
        }
        max_var = std::max(max_var, ss / static_cast<double>(n));
    }
    const double floor = std::max(1e-9 * max_var, 1e-12);

    for (int c = 0; c < 2; ++c) {
        const auto& rows = members[c];
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (std::size_t r : rows) mean += matrix.at(r, j);
            mean /= static_cast<double>(rows.size());
            double ss = 0.0;
            for (std::size_t r : rows) {
                const double dv = matrix.at(r, j) - mean;
                ss += dv * dv;
            }
            model.mean[c * d + j] = mean;
            model.var[c * d + j] = std::max(ss / static_cast<double>(rows.size()), floor);
        }
    }
    return model;
}

std::vector<std::array<double, 2>> gaussian_nb_log_joint(const GaussianNbModel& model,
                                                         const FeatureMatrix& matrix) {
    if (matrix.cols() != model.dim) throw DomainError("feature dimension mismatch");
    std::vector<std::array<double, 2>> out(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        for (int c = 0; c < 2; ++c) {
            double lp = model.log_prior[c];
            for (std::size_t j = 0; j < model.dim; ++j) {
                const double v = model.var_at(c, j);
                const double dv = matrix.at(r, j) - model.mean_at(c, j);
                lp += -0.5 * std::log(kTwoPi * v) - 0.5 * dv * dv / v;
            }
            out[r][c] = lp;
        }
    }
    return out;
}

BernoulliNbModel fit_bernoulli_nb(const FeatureMatrix& matrix, double alpha) {
    const auto members = class_members(matrix);
    if (members[0].empty() || members[1].empty())
        throw DomainError("both classes required to fit bernoulli naive bayes");

    const std::size_t d = matrix.cols();
    BernoulliNbModel model;
    model.dim = d;
    model.theta.assign(2 * d, 0.0);
    model.threshold.assign(d, 0.5);
    for (int c = 0; c < 2; ++c)
        model.log_prior[c] = std::log(static_cast<double>(members[c].size()) /
                                      static_cast<double>(matrix.rows()));

    // Continuous columns binarize at the training median.
    std::vector<double> colvals(matrix.rows());
    for (std::size_t j = 0; j < d; ++j) {
        if (matrix.column_kinds[j] != ColumnKind::continuous) continue;
        for (std::size_t r = 0; r < matrix.rows(); ++r) colvals[r] = matrix.at(r, j);
        std::sort(colvals.begin(), colvals.end());
        const std::size_t n = colvals.size();
        model.threshold[j] =
            n % 2 == 1 ? colvals[n / 2] : 0.5 * (colvals[n / 2 - 1] + colvals[n / 2]);
    }

    for (int c = 0; c < 2; ++c) {
        const auto& rows = members[c];
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t ones = 0;
            for (std::size_t r : rows) ones += (matrix.at(r, j) > model.threshold[j]);
            model.theta[c * d + j] = (static_cast<double>(ones) + alpha) /
                                     (static_cast<double>(rows.size()) + 2.0 * alpha);
        }
    }
    return model;
}

std::vector<std::array<double, 2>> bernoulli_nb_log_joint(const BernoulliNbModel& model,
                                                          const FeatureMatrix& matrix) {
    if (matrix.cols() != model.dim) throw DomainError("feature dimension mismatch");
    std::vector<std::array<double, 2>> out(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        for (int c = 0; c < 2; ++c) {
            double lp = model.log_prior[c];
            for (std::size_t j = 0; j < model.dim; ++j) {
                const bool on = matrix.at(r, j) > model.threshold[j];
                const double th = model.theta_at(c, j);
                lp += on ? std::log(th) : std::log1p(-th);
            }
            out[r][c] = lp;
        }
    }
    return out;
}

} // namespace instaudit
