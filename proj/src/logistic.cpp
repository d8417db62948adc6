#include "instaudit/logistic.hpp"

#include <algorithm>
#include <cmath>

namespace instaudit {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

std::vector<double> margins(const FeatureMatrix& m, std::span<const double> w, double b) {
    std::vector<double> z(m.rows(), b);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto x = m.row(r);
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += w[j] * x[j];
        z[r] += acc;
    }
    return z;
}

} // namespace

double logreg_loss(const FeatureMatrix& matrix, std::span<const double> weights, double bias,
                   double C) {
    const auto z = margins(matrix, weights, bias);
    double loss = 0.0;
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        // -log p(y|x) = softplus(z) - y*z
        loss += softplus(z[r]) - (matrix.labels[r] == 1 ? z[r] : 0.0);
    }
    double penalty = 0.0;
    for (double w : weights) penalty += w * w;
    return loss + penalty / (2.0 * C);
}

void logreg_gradient(const FeatureMatrix& matrix, std::span<const double> weights, double bias,
                     double C, std::span<double> grad_w, double& grad_b) {
    const auto z = margins(matrix, weights, bias);
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    grad_b = 0.0;
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const double resid = sigmoid(z[r]) - (matrix.labels[r] == 1 ? 1.0 : 0.0);
        const auto x = matrix.row(r);
        for (std::size_t j = 0; j < x.size(); ++j) grad_w[j] += resid * x[j];
        grad_b += resid;
    }
    for (std::size_t j = 0; j < weights.size(); ++j) grad_w[j] += weights[j] / C;
}

LogRegModel fit_logreg_ncg(const FeatureMatrix& matrix, const LogRegConfig& config) {
    if (matrix.count_label(0) == 0 || matrix.count_label(1) == 0)
        throw DomainError("both classes required to fit logistic regression");
    for (double v : matrix.values)
        if (!std::isfinite(v)) throw DomainError("non-finite feature value");

    const std::size_t d = matrix.cols();
    const std::size_t dim = d + 1; // weights + bias as the last coordinate
    std::vector<double> theta(dim, 0.0);

    auto grad_at = [&](const std::vector<double>& t) {
        std::vector<double> g(dim, 0.0);
        double gb = 0.0;
        logreg_gradient(matrix, std::span<const double>(t.data(), d), t[d], config.C,
                        std::span<double>(g.data(), d), gb);
        g[d] = gb;
        return g;
    };
    auto loss_at = [&](const std::vector<double>& t) {
        return logreg_loss(matrix, std::span<const double>(t.data(), d), t[d], config.C);
    };
    // Hessian-vector product: H v = X^T diag(s(1-s)) X v + [v_w / C, 0]
    auto hess_vec = [&](const std::vector<double>& t, const std::vector<double>& v) {
        const auto z = margins(matrix, std::span<const double>(t.data(), d), t[d]);
        std::vector<double> hv(dim, 0.0);
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            const auto x = matrix.row(r);
            double xv = v[d];
            for (std::size_t j = 0; j < d; ++j) xv += x[j] * v[j];
            const double s = sigmoid(z[r]);
            const double w = s * (1.0 - s) * xv;
            for (std::size_t j = 0; j < d; ++j) hv[j] += w * x[j];
            hv[d] += w;
        }
        for (std::size_t j = 0; j < d; ++j) hv[j] += v[j] / config.C;
        return hv;
    };

    for (std::size_t iter = 0; iter < config.max_newton_iter; ++iter) {
        const auto g = grad_at(theta);
        double gmax = 0.0;
        for (double gi : g) gmax = std::max(gmax, std::abs(gi));
        if (gmax <= config.tol) break;

        // CG on H s = -g with a norm-based forcing term.
        std::vector<double> step(dim, 0.0), resid(dim), dir(dim);
        for (std::size_t i = 0; i < dim; ++i) resid[i] = -g[i];
        dir = resid;
        double rr = 0.0;
        for (double ri : resid) rr += ri * ri;
        const double target = std::min(0.5, std::sqrt(std::sqrt(rr))) * std::sqrt(rr);
        for (std::size_t cg = 0; cg < 2 * dim + 10 && std::sqrt(rr) > target; ++cg) {
            const auto hd = hess_vec(theta, dir);
            double dhd = 0.0;
            for (std::size_t i = 0; i < dim; ++i) dhd += dir[i] * hd[i];
            if (dhd <= 0.0) break; // numerically flat direction
            const double alpha = rr / dhd;
            for (std::size_t i = 0; i < dim; ++i) {
                step[i] += alpha * dir[i];
                resid[i] -= alpha * hd[i];
            }
            double rr_new = 0.0;
            for (double ri : resid) rr_new += ri * ri;
            const double beta = rr_new / rr;
            rr = rr_new;
            for (std::size_t i = 0; i < dim; ++i) dir[i] = resid[i] + beta * dir[i];
        }

        bool moved = false;
        for (double si : step)
            if (si != 0.0) moved = true;
        if (!moved) { // fall back to steepest descent
            for (std::size_t i = 0; i < dim; ++i) step[i] = -g[i];
        }

        // Backtracking keeps the plain Newton step from overshooting.
        const double f0 = loss_at(theta);
        double scale = 1.0;
        std::vector<double> trial(dim);
        for (int bt = 0; bt < 30; ++bt) {
            for (std::size_t i = 0; i < dim; ++i) trial[i] = theta[i] + scale * step[i];
            if (loss_at(trial) <= f0) break;
            scale *= 0.5;
        }
        theta = trial;
    }

    LogRegModel model;
    model.weights.assign(theta.begin(), theta.begin() + d);
    model.bias = theta[d];
    model.C = config.C;
    model.tol = config.tol;
    return model;
}

std::vector<double> logreg_prob(const LogRegModel& model, const FeatureMatrix& matrix) {
    if (matrix.cols() != model.weights.size()) throw DomainError("feature dimension mismatch");
    const auto z =
        margins(matrix, std::span<const double>(model.weights.data(), model.weights.size()),
                model.bias);
    std::vector<double> p(z.size());
    for (std::size_t r = 0; r < z.size(); ++r) p[r] = sigmoid(z[r]);
    return p;
}

} // namespace instaudit
