#include "instaudit/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "instaudit/rng.hpp"

namespace instaudit {

namespace {

struct Layout {
    std::size_t d, h;
    std::size_t w1, b1, w2, b2, w3, b3, total;

    explicit Layout(const MlpModel& m) : d(m.input_dim), h(m.hidden_units) {
        w1 = 0;
        b1 = w1 + d * h;
        w2 = b1 + h;
        b2 = w2 + h * h;
        w3 = b2 + h;
        b3 = w3 + h * 2;
        total = b3 + 2;
    }
};

// out(B x cols) = in(B x rows_in) * W(rows_in x cols) + bias(cols)
void affine(std::span<const double> in, std::size_t batch, std::size_t rows_in,
            const double* w, const double* bias, std::size_t cols, std::vector<double>& out) {
    out.assign(batch * cols, 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
        double* o = out.data() + b * cols;
        const double* x = in.data() + b * rows_in;
        for (std::size_t j = 0; j < cols; ++j) o[j] = bias[j];
        for (std::size_t i = 0; i < rows_in; ++i) {
            const double xi = x[i];
            if (xi == 0.0) continue;
            const double* wrow = w + i * cols;
            for (std::size_t j = 0; j < cols; ++j) o[j] += xi * wrow[j];
        }
    }
}

void relu_inplace(std::vector<double>& v) {
    for (double& x : v)
        if (x < 0.0) x = 0.0;
}

// Row-wise softmax of logits(B x 2), in place.
void softmax2_inplace(std::vector<double>& logits, std::size_t batch) {
    for (std::size_t b = 0; b < batch; ++b) {
        double* z = logits.data() + b * 2;
        const double m = std::max(z[0], z[1]);
        const double e0 = std::exp(z[0] - m), e1 = std::exp(z[1] - m);
        const double s = e0 + e1;
        z[0] = e0 / s;
        z[1] = e1 / s;
    }
}

struct Forward {
    std::vector<double> a1, a2, probs; // post-activation values
};

void forward_pass(const MlpModel& model, std::span<const double> x, std::size_t batch,
                  Forward& f) {
    const Layout L(model);
    const double* p = model.params.data();
    affine(x, batch, L.d, p + L.w1, p + L.b1, L.h, f.a1);
    relu_inplace(f.a1);
    affine(f.a1, batch, L.h, p + L.w2, p + L.b2, L.h, f.a2);
    relu_inplace(f.a2);
    affine(f.a2, batch, L.h, p + L.w3, p + L.b3, 2, f.probs);
    softmax2_inplace(f.probs, batch);
}

// grad(rows_in x cols) += in^T * delta; also accumulates the bias gradient.
void accumulate_grads(std::span<const double> in, std::size_t batch, std::size_t rows_in,
                      std::span<const double> delta, std::size_t cols, double* grad_w,
                      double* grad_b) {
    for (std::size_t b = 0; b < batch; ++b) {
        const double* x = in.data() + b * rows_in;
        const double* dz = delta.data() + b * cols;
        for (std::size_t j = 0; j < cols; ++j) grad_b[j] += dz[j];
        for (std::size_t i = 0; i < rows_in; ++i) {
            const double xi = x[i];
            if (xi == 0.0) continue;
            double* grow = grad_w + i * cols;
            for (std::size_t j = 0; j < cols; ++j) grow[j] += xi * dz[j];
        }
    }
}

// delta_prev(B x rows_in) = delta(B x cols) * W^T, masked by the ReLU input.
void backprop_delta(std::span<const double> delta, std::size_t batch, std::size_t cols,
                    const double* w, std::size_t rows_in, std::span<const double> act,
                    std::vector<double>& delta_prev) {
    delta_prev.assign(batch * rows_in, 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
        const double* dz = delta.data() + b * cols;
        const double* a = act.data() + b * rows_in;
        double* dp = delta_prev.data() + b * rows_in;
        for (std::size_t i = 0; i < rows_in; ++i) {
            if (a[i] <= 0.0) continue; // ReLU gate
            const double* wrow = w + i * cols;
            double acc = 0.0;
            for (std::size_t j = 0; j < cols; ++j) acc += wrow[j] * dz[j];
            dp[i] = acc;
        }
    }
}

void gradient_into(const MlpModel& model, std::span<const double> x, std::span<const int> y,
                   std::size_t batch, Forward& f, std::vector<double>& grad) {
    const Layout L(model);
    forward_pass(model, x, batch, f);

    grad.assign(L.total, 0.0);
    std::vector<double> delta3(f.probs);
    const double inv_b = 1.0 / static_cast<double>(batch);
    for (std::size_t b = 0; b < batch; ++b) {
        delta3[b * 2 + (y[b] == 1 ? 1 : 0)] -= 1.0;
        delta3[b * 2] *= inv_b;
        delta3[b * 2 + 1] *= inv_b;
    }

    double* g = grad.data();
    const double* p = model.params.data();
    accumulate_grads(f.a2, batch, L.h, delta3, 2, g + L.w3, g + L.b3);
    std::vector<double> delta2;
    backprop_delta(delta3, batch, 2, p + L.w3, L.h, f.a2, delta2);
    accumulate_grads(f.a1, batch, L.h, delta2, L.h, g + L.w2, g + L.b2);
    std::vector<double> delta1;
    backprop_delta(delta2, batch, L.h, p + L.w2, L.h, f.a1, delta1);
    accumulate_grads(x, batch, L.d, delta1, L.h, g + L.w1, g + L.b1);
}

} // namespace

MlpModel mlp_init(std::size_t input_dim, const MlpConfig& config) {
    if (input_dim < 1) throw DomainError("mlp needs at least one input feature");
    MlpModel model;
    model.input_dim = input_dim;
    model.hidden_units = config.hidden_units;
    const Layout L(model);
    model.params.assign(L.total, 0.0);

    Rng rng(derive_seed(config.seed, seed_tag::train));
    auto init_weights = [&](std::size_t offset, std::size_t fan_in, std::size_t count) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (std::size_t i = 0; i < count; ++i)
            model.params[offset + i] = rng.next_range(-scale, scale);
    };
    init_weights(L.w1, L.d, L.d * L.h);
    init_weights(L.w2, L.h, L.h * L.h);
    init_weights(L.w3, L.h, L.h * 2);
    return model;
}

double mlp_loss(const MlpModel& model, const FeatureMatrix& batch) {
    if (batch.cols() != model.input_dim) throw DomainError("feature dimension mismatch");
    Forward f;
    forward_pass(model, batch.values, batch.rows(), f);
    double loss = 0.0;
    for (std::size_t b = 0; b < batch.rows(); ++b) {
        const double p = f.probs[b * 2 + (batch.labels[b] == 1 ? 1 : 0)];
        loss -= std::log(std::max(p, 1e-300));
    }
    return loss / static_cast<double>(batch.rows());
}

std::vector<double> mlp_gradient(const MlpModel& model, const FeatureMatrix& batch) {
    if (batch.cols() != model.input_dim) throw DomainError("feature dimension mismatch");
    Forward f;
    std::vector<double> grad;
    gradient_into(model, batch.values, batch.labels, batch.rows(), f, grad);
    return grad;
}

MlpModel fit_mlp_adam(const FeatureMatrix& matrix, const MlpConfig& config) {
    if (matrix.rows() == 0) throw DomainError("empty training matrix");
    MlpModel model = mlp_init(matrix.cols(), config);
    const Layout L(model);

    std::vector<double> m(L.total, 0.0), v(L.total, 0.0), grad;
    std::vector<std::size_t> order(matrix.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    Rng shuffle_rng(derive_seed(config.seed, seed_tag::train) ^ 0x5bd1e995u);
    Forward f;
    std::vector<double> xbatch;
    std::vector<int> ybatch;
    std::size_t step = 0;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffle_rng.next_below(i)]);

        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t bsz = std::min(config.batch_size, order.size() - start);
            xbatch.resize(bsz * L.d);
            ybatch.resize(bsz);
            for (std::size_t b = 0; b < bsz; ++b) {
                const auto row = matrix.row(order[start + b]);
                std::copy(row.begin(), row.end(), xbatch.begin() + b * L.d);
                ybatch[b] = matrix.labels[order[start + b]];
            }

            gradient_into(model, xbatch, ybatch, bsz, f, grad);

            ++step;
            const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
            for (std::size_t i = 0; i < L.total; ++i) {
                m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * grad[i];
                v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
                const double mhat = m[i] / bc1;
                const double vhat = v[i] / bc2;
                model.params[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.adam_eps);
            }
        }
    }
    return model;
}

std::vector<std::array<double, 2>> mlp_proba(const MlpModel& model, const FeatureMatrix& matrix) {
    if (matrix.cols() != model.input_dim) throw DomainError("feature dimension mismatch");
    Forward f;
    forward_pass(model, matrix.values, matrix.rows(), f);
    std::vector<std::array<double, 2>> out(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r)
        out[r] = {f.probs[r * 2], f.probs[r * 2 + 1]};
    return out;
}

} // namespace instaudit
