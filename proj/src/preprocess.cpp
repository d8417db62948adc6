#include "instaudit/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "instaudit/rng.hpp"

namespace instaudit {

MinMaxScaler fit_minmax(const FeatureMatrix& matrix) {
    if (matrix.rows() == 0) throw DomainError("cannot fit scaler on empty matrix");
    MinMaxScaler s;
    s.column_names = matrix.column_names;
    s.column_kinds = matrix.column_kinds;
    s.col_min.assign(matrix.cols(), 0.0);
    s.col_max.assign(matrix.cols(), 0.0);
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        if (matrix.column_kinds[j] != ColumnKind::continuous) continue;
        double lo = matrix.at(0, j), hi = matrix.at(0, j);
        for (std::size_t r = 1; r < matrix.rows(); ++r) {
            lo = std::min(lo, matrix.at(r, j));
            hi = std::max(hi, matrix.at(r, j));
        }
        s.col_min[j] = lo;
        s.col_max[j] = hi;
    }
    return s;
}

FeatureMatrix apply_minmax(const MinMaxScaler& scaler, const FeatureMatrix& matrix) {
    if (scaler.column_names != matrix.column_names || scaler.column_kinds != matrix.column_kinds)
        throw DomainError("scaler/matrix incompatible");
    FeatureMatrix out = matrix;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        if (matrix.column_kinds[j] != ColumnKind::continuous) continue;
        const double lo = scaler.col_min[j];
        const double range = scaler.col_max[j] - lo;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            double& x = out.at(r, j);
            x = range > 0.0 ? std::clamp((x - lo) / range, 0.0, 1.0) : 0.0;
        }
    }
    return out;
}

namespace {

// Row indices of each class, shuffled with the given stream.
std::array<std::vector<std::size_t>, 2> shuffled_class_indices(const FeatureMatrix& matrix,
                                                               Rng& rng) {
    std::array<std::vector<std::size_t>, 2> idx;
    for (std::size_t r = 0; r < matrix.rows(); ++r) idx[matrix.labels[r] == 1].push_back(r);
    for (auto& v : idx) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[rng.next_below(i)]);
    }
    return idx;
}

} // namespace

TrainTestSplit train_test_split(const FeatureMatrix& matrix, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw DomainError("train_fraction must be in (0,1)");
    if (matrix.count_label(0) < 2 || matrix.count_label(1) < 2)
        throw DomainError("insufficient class support: each class needs >= 2 rows");

    Rng rng(derive_seed(spec.seed, seed_tag::split));
    TrainTestSplit out;

    if (spec.stratified) {
        auto idx = shuffled_class_indices(matrix, rng);
        for (const auto& v : idx) {
            const auto n_train = static_cast<std::size_t>(
                std::llround(spec.train_fraction * static_cast<double>(v.size())));
            out.train_indices.insert(out.train_indices.end(), v.begin(), v.begin() + n_train);
            out.test_indices.insert(out.test_indices.end(), v.begin() + n_train, v.end());
        }
    } else {
        std::vector<std::size_t> all(matrix.rows());
        for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
        for (std::size_t i = all.size(); i > 1; --i)
            std::swap(all[i - 1], all[rng.next_below(i)]);
        const auto n_train = static_cast<std::size_t>(
            std::llround(spec.train_fraction * static_cast<double>(all.size())));
        out.train_indices.assign(all.begin(), all.begin() + n_train);
        out.test_indices.assign(all.begin() + n_train, all.end());
    }

    std::sort(out.train_indices.begin(), out.train_indices.end());
    std::sort(out.test_indices.begin(), out.test_indices.end());
    out.train = matrix.take(out.train_indices);
    out.test = matrix.take(out.test_indices);
    return out;
}

std::vector<FoldIndices> stratified_kfold(const FeatureMatrix& matrix, std::size_t k,
                                          std::uint64_t seed) {
    if (k < 2) throw DomainError("k must be >= 2");
    if (matrix.count_label(0) < k || matrix.count_label(1) < k)
        throw DomainError("insufficient class support: each class needs >= k rows");

    Rng rng(derive_seed(seed, seed_tag::fold));
    auto idx = shuffled_class_indices(matrix, rng);

    // Deal each class round-robin, rotating the starting fold between classes
    // so the remainder rows spread out and total fold sizes stay balanced.
    std::vector<std::vector<std::size_t>> validation(k);
    std::size_t offset = 0;
    for (const auto& v : idx) {
        for (std::size_t i = 0; i < v.size(); ++i) validation[(offset + i) % k].push_back(v[i]);
        offset = (offset + v.size()) % k;
    }

    std::vector<FoldIndices> folds(k);
    for (std::size_t f = 0; f < k; ++f) {
        std::sort(validation[f].begin(), validation[f].end());
        folds[f].validation = validation[f];
        for (std::size_t r = 0; r < matrix.rows(); ++r)
            if (!std::binary_search(validation[f].begin(), validation[f].end(), r))
                folds[f].train.push_back(r);
    }
    return folds;
}

} // namespace instaudit
