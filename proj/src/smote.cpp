#include "instaudit/smote.hpp"

#include <algorithm>
#include <cmath>

#include "instaudit/rng.hpp"

namespace instaudit {

double median_std(const FeatureMatrix& matrix, int class_label) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < matrix.rows(); ++r)
        if (matrix.labels[r] == class_label) members.push_back(r);
    if (members.size() < 2) throw DomainError("class needs >= 2 rows for median_std");

    std::vector<double> stds;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        if (matrix.column_kinds[j] != ColumnKind::continuous) continue;
        double mean = 0.0;
        for (std::size_t r : members) mean += matrix.at(r, j);
        mean /= static_cast<double>(members.size());
        double ss = 0.0;
        for (std::size_t r : members) {
            const double d = matrix.at(r, j) - mean;
            ss += d * d;
        }
        stds.push_back(std::sqrt(ss / static_cast<double>(members.size() - 1)));
    }
    if (stds.empty()) throw DomainError("metric undefined: no continuous columns");

    std::sort(stds.begin(), stds.end());
    const std::size_t n = stds.size();
    return n % 2 == 1 ? stds[n / 2] : 0.5 * (stds[n / 2 - 1] + stds[n / 2]);
}

double smotenc_distance(std::span<const double> a, std::span<const double> b,
                        std::span<const ColumnKind> kinds, double med) {
    if (a.size() != b.size() || a.size() != kinds.size())
        throw DomainError("row layout mismatch in smotenc_distance");
    double sum = 0.0;
    const double med2 = med * med;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (kinds[j] == ColumnKind::continuous) {
            const double d = a[j] - b[j];
            sum += d * d;
        } else if (a[j] != b[j]) {
            sum += med2;
        }
    }
    return std::sqrt(sum);
}

namespace {

// Columns that look integer-valued get their synthetic values rounded so
// counts stay counts.
std::vector<bool> integral_columns(const FeatureMatrix& m) {
    std::vector<bool> integral(m.cols(), true);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.column_kinds[j] != ColumnKind::continuous) {
            integral[j] = false;
            continue;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const double x = m.at(r, j);
            if (x != std::floor(x)) {
                integral[j] = false;
                break;
            }
        }
    }
    return integral;
}

} // namespace

SmoteResult smotenc_oversample(const FeatureMatrix& matrix, const SmoteConfig& config) {
    if (config.k < 1) throw DomainError("k must be >= 1");

    const std::size_t n0 = matrix.count_label(0);
    const std::size_t n1 = matrix.count_label(1);
    const int minority_label = n1 <= n0 ? 1 : 0;
    const std::size_t minority_count = std::min(n0, n1);
    const std::size_t majority_count = std::max(n0, n1);
    const std::size_t target = config.target_per_class.value_or(majority_count);
    if (target < minority_count)
        throw DomainError("target is below the current minority count");

    SmoteResult out;
    out.matrix = matrix;
    if (target == minority_count) return out; // nothing to add

    if (minority_count <= config.k)
        throw DomainError("too few minority samples: need more than k=" +
                          std::to_string(config.k));

    std::vector<std::size_t> minority;
    for (std::size_t r = 0; r < matrix.rows(); ++r)
        if (matrix.labels[r] == minority_label) minority.push_back(r);

    const double med = median_std(matrix, minority_label);
    const bool has_categorical =
        std::find(matrix.column_kinds.begin(), matrix.column_kinds.end(), ColumnKind::binary) !=
        matrix.column_kinds.end();
    // med = 0 would make categorical mismatches free; without categorical
    // columns it never enters the metric.
    if (med <= 0.0 && has_categorical)
        throw DomainError("metric undefined: continuous features of the minority class are constant");

    // k nearest minority neighbors of every original minority row (exhaustive;
    // the datasets are small enough that an index would be overkill).
    const auto kinds = std::span<const ColumnKind>(matrix.column_kinds);
    std::vector<std::vector<std::size_t>> neighbors(minority.size());
    {
        std::vector<std::pair<double, std::size_t>> dist;
        for (std::size_t i = 0; i < minority.size(); ++i) {
            dist.clear();
            for (std::size_t j = 0; j < minority.size(); ++j) {
                if (i == j) continue;
                dist.emplace_back(
                    smotenc_distance(matrix.row(minority[i]), matrix.row(minority[j]), kinds, med),
                    minority[j]);
            }
            std::partial_sort(dist.begin(), dist.begin() + config.k, dist.end());
            neighbors[i].reserve(config.k);
            for (std::size_t t = 0; t < config.k; ++t) neighbors[i].push_back(dist[t].second);
        }
    }

    const std::vector<bool> integral = integral_columns(matrix);
    Rng rng(derive_seed(config.seed, seed_tag::smote));
    std::vector<double> synth(matrix.cols());

    for (std::size_t produced = minority_count; produced < target; ++produced) {
        const std::size_t bi = rng.next_below(minority.size());
        const std::size_t base = minority[bi];
        const auto& hood = neighbors[bi];
        const std::size_t neighbor = hood[rng.next_below(hood.size())];
        const double gap = rng.next_double();

        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            const double xb = matrix.at(base, j);
            if (matrix.column_kinds[j] == ColumnKind::continuous) {
                const double xn = matrix.at(neighbor, j);
                double v = xb + gap * (xn - xb);
                if (integral[j]) v = std::round(v);
                synth[j] = std::clamp(v, std::min(xb, xn), std::max(xb, xn));
            } else {
                // Majority vote over the k neighbors; a tie keeps the base value.
                std::size_t ones = 0;
                for (std::size_t h : hood) ones += (matrix.at(h, j) != 0.0);
                const std::size_t zeros = hood.size() - ones;
                synth[j] = ones > zeros ? 1.0 : (zeros > ones ? 0.0 : xb);
            }
        }
        out.matrix.append_row(synth, minority_label);
        out.parentage.push_back({base, neighbor, hood});
    }
    return out;
}

FeatureMatrix smotenc_balance(const FeatureMatrix& matrix, const SmoteConfig& config) {
    return smotenc_oversample(matrix, config).matrix;
}

} // namespace instaudit
