#include "instaudit/svm.hpp"

#include <algorithm>
#include <cmath>

#include "instaudit/rng.hpp"

namespace instaudit {

double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma) {
    if (x.size() != y.size()) throw DomainError("kernel dimension mismatch");
    double sq = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - y[j];
        sq += d * d;
    }
    return std::exp(-gamma * sq);
}

namespace {

// Platt-style SMO working state over a precomputed kernel matrix.
class SmoSolver {
public:
    SmoSolver(const FeatureMatrix& m, const SvmConfig& cfg)
        : m_(m), cfg_(cfg), n_(m.rows()), rng_(derive_seed(cfg.seed, seed_tag::train)) {
        y_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) y_[i] = m.labels[i] == 1 ? 1.0 : -1.0;
        kernel_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            kernel_[i * n_ + i] = 1.0;
            for (std::size_t j = i + 1; j < n_; ++j) {
                const double k = rbf_kernel(m.row(i), m.row(j), cfg.gamma);
                kernel_[i * n_ + j] = k;
                kernel_[j * n_ + i] = k;
            }
        }
        alpha_.assign(n_, 0.0);
        // f(x_i) - y_i with all alphas at zero is just b - y_i = -y_i.
        error_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];
    }

    void solve() {
        bool examine_all = true;
        std::size_t full_sweeps = 0;
        for (;;) {
            std::size_t changed = 0;
            if (examine_all) {
                ++full_sweeps;
                for (std::size_t i = 0; i < n_; ++i) changed += examine(i);
            } else {
                for (std::size_t i = 0; i < n_; ++i)
                    if (alpha_[i] > 0.0 && alpha_[i] < cfg_.C) changed += examine(i);
            }
            if (examine_all) {
                if (changed == 0 || full_sweeps >= cfg_.max_passes) break;
                examine_all = false;
            } else if (changed == 0) {
                examine_all = true;
            }
        }
    }

    SvmModel build_model() const {
        SvmModel model;
        model.gamma = cfg_.gamma;
        model.C = cfg_.C;
        model.dim = m_.cols();
        model.bias = b_;
        for (std::size_t i = 0; i < n_; ++i) {
            if (alpha_[i] <= 0.0) continue;
            const auto x = m_.row(i);
            model.support_vectors.insert(model.support_vectors.end(), x.begin(), x.end());
            model.coef.push_back(alpha_[i] * y_[i]);
        }
        return model;
    }

    const std::vector<double>& multipliers() const { return alpha_; }

private:
    double k(std::size_t i, std::size_t j) const { return kernel_[i * n_ + j]; }

    std::size_t examine(std::size_t i2) {
        const double y2 = y_[i2];
        const double a2 = alpha_[i2];
        const double r2 = error_[i2] * y2; // y2*f(x2) - 1
        const bool violates = (r2 < -cfg_.tol && a2 < cfg_.C) || (r2 > cfg_.tol && a2 > 0.0);
        if (!violates) return 0;

        // Second-choice heuristic: largest |E1 - E2| among non-bound points.
        std::ptrdiff_t best = -1;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (alpha_[i] <= 0.0 || alpha_[i] >= cfg_.C) continue;
            const double gap = std::abs(error_[i] - error_[i2]);
            if (gap > best_gap) {
                best_gap = gap;
                best = static_cast<std::ptrdiff_t>(i);
            }
        }
        if (best >= 0 && take_step(static_cast<std::size_t>(best), i2)) return 1;

        // Fall back to scanning non-bound points, then everything, from a
        // random start so no point is systematically starved.
        const std::size_t start = rng_.next_below(n_);
        for (std::size_t t = 0; t < n_; ++t) {
            const std::size_t i1 = (start + t) % n_;
            if (alpha_[i1] > 0.0 && alpha_[i1] < cfg_.C && take_step(i1, i2)) return 1;
        }
        for (std::size_t t = 0; t < n_; ++t) {
            const std::size_t i1 = (start + t) % n_;
            if (take_step(i1, i2)) return 1;
        }
        return 0;
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const double y1 = y_[i1], y2 = y_[i2];
        const double e1 = error_[i1], e2 = error_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(cfg_.C, cfg_.C + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - cfg_.C);
            hi = std::min(cfg_.C, a1 + a2);
        }
        if (lo >= hi) return false;

        const double k11 = k(i1, i1), k12 = k(i1, i2), k22 = k(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double a2_new;
        if (eta > 0.0) {
            a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // Flat direction: the dual restricted to the constraint line is
            // linear, so the optimum sits at an end. Evaluate both.
            const double v1 = (e1 + y1 - b_) - a1 * y1 * k11 - a2 * y2 * k12;
            const double v2 = (e2 + y2 - b_) - a1 * y1 * k12 - a2 * y2 * k22;
            auto dual_at = [&](double a2c) {
                const double a1c = a1 + s * (a2 - a2c);
                return a1c + a2c - 0.5 * a1c * a1c * k11 - 0.5 * a2c * a2c * k22 -
                       s * a1c * a2c * k12 - y1 * a1c * v1 - y2 * a2c * v2;
            };
            const double w_lo = dual_at(lo), w_hi = dual_at(hi), w_cur = dual_at(a2);
            if (w_lo > w_cur + 1e-12 && w_lo >= w_hi)
                a2_new = lo;
            else if (w_hi > w_cur + 1e-12)
                a2_new = hi;
            else
                return false;
        }
        if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12)) return false;

        const double a1_new = a1 + s * (a2 - a2_new);
        const double d1 = y1 * (a1_new - a1), d2 = y2 * (a2_new - a2);

        // Bias chosen so an unbound multiplier lands exactly on its margin.
        const double b1 = b_ - e1 - d1 * k11 - d2 * k12;
        const double b2 = b_ - e2 - d1 * k12 - d2 * k22;
        double b_new;
        if (a1_new > 0.0 && a1_new < cfg_.C)
            b_new = b1;
        else if (a2_new > 0.0 && a2_new < cfg_.C)
            b_new = b2;
        else
            b_new = 0.5 * (b1 + b2);

        const double db = b_new - b_;
        for (std::size_t i = 0; i < n_; ++i)
            error_[i] += d1 * k(i1, i) + d2 * k(i2, i) + db;
        alpha_[i1] = a1_new;
        alpha_[i2] = a2_new;
        b_ = b_new;
        return true;
    }

    const FeatureMatrix& m_;
    SvmConfig cfg_;
    std::size_t n_;
    Rng rng_;
    std::vector<double> y_;
    std::vector<double> kernel_;
    std::vector<double> alpha_;
    std::vector<double> error_;
    double b_ = 0.0;
};

} // namespace

SvmModel fit_svm_smo(const FeatureMatrix& matrix, const SvmConfig& config) {
    return fit_svm_smo_detailed(matrix, config).model;
}

SmoSolution fit_svm_smo_detailed(const FeatureMatrix& matrix, const SvmConfig& config) {
    if (matrix.count_label(0) == 0 || matrix.count_label(1) == 0)
        throw DomainError("degenerate training set: both classes required");
    SmoSolver solver(matrix, config);
    solver.solve();
    return {solver.build_model(), solver.multipliers()};
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
    if (x.size() != model.dim) throw DomainError("feature dimension mismatch");
    double f = model.bias;
    for (std::size_t i = 0; i < model.n_support(); ++i)
        f += model.coef[i] * rbf_kernel(model.support_vector(i), x, model.gamma);
    return f;
}

std::vector<double> svm_decision(const SvmModel& model, const FeatureMatrix& matrix) {
    std::vector<double> out(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r) out[r] = svm_decision(model, matrix.row(r));
    return out;
}

} // namespace instaudit
