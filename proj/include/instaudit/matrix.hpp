#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "instaudit/errors.hpp"

namespace instaudit {

enum class ColumnKind { continuous, binary };

// Numeric design matrix with per-column kind and an aligned 0/1 label vector
// (1 = fake / automated class). Row-major storage.
struct FeatureMatrix {
    std::vector<std::string> column_names;
    std::vector<ColumnKind> column_kinds;
    std::vector<double> values; // rows() x cols(), row-major
    std::vector<int> labels;    // length rows()

    std::size_t rows() const { return labels.size(); }
    std::size_t cols() const { return column_names.size(); }

    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }

    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * cols(), cols()};
    }
    std::span<double> row(std::size_t r) {
        return {values.data() + r * cols(), cols()};
    }

    std::size_t column_index(const std::string& name) const {
        for (std::size_t j = 0; j < column_names.size(); ++j)
            if (column_names[j] == name) return j;
        throw DomainError("no such feature: " + name);
    }

    bool same_layout(const FeatureMatrix& other) const {
        return column_names == other.column_names && column_kinds == other.column_kinds;
    }

    std::size_t count_label(int label) const {
        std::size_t n = 0;
        for (int y : labels) n += (y == label);
        return n;
    }

    // Row subset, preserving order of `indices`.
    FeatureMatrix take(std::span<const std::size_t> indices) const {
        FeatureMatrix out;
        out.column_names = column_names;
        out.column_kinds = column_kinds;
        out.values.reserve(indices.size() * cols());
        out.labels.reserve(indices.size());
        for (std::size_t r : indices) {
            auto src = row(r);
            out.values.insert(out.values.end(), src.begin(), src.end());
            out.labels.push_back(labels[r]);
        }
        return out;
    }

    void append_row(std::span<const double> vals, int label) {
        values.insert(values.end(), vals.begin(), vals.end());
        labels.push_back(label);
    }
};

} // namespace instaudit
