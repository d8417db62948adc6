#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "instaudit/matrix.hpp"

namespace instaudit {

enum class Schema { fake, automated };

std::string schema_name(Schema s);
Schema schema_from_name(const std::string& name);

// One account from the fake-account dataset. label: 0 = real, 1 = fake.
struct FakeAccountRecord {
    std::int64_t media_count = 0;
    std::int64_t follower_count = 0;
    std::int64_t following_count = 0;
    std::int64_t username_digit_count = 0;
    bool is_private = false;
    int label = 0;
};

// One account from the automated-account dataset. label: 0 = real, 1 = automated.
// The recent averages cover media posted in the last 18 months; an account
// with no media carries 0 for all of them.
struct AutomatedAccountRecord {
    std::int64_t media_count = 0;
    std::int64_t follower_count = 0;
    std::int64_t following_count = 0;
    bool has_highlight_reel = false;
    bool has_external_url = false;
    std::int64_t tagged_photo_count = 0;
    double avg_recent_hashtag_count = 0.0;
    double avg_recent_like_count = 0.0;
    double avg_recent_comment_count = 0.0;
    int label = 0;
};

// Features derived from an AutomatedAccountRecord.
struct DerivedAutomatedFeatures {
    double lcr = 0.0;         // like-to-comment ratio
    double ffr = 0.0;         // follower-to-following ratio
    bool has_no_media = false;
};

struct Dataset {
    Schema schema = Schema::fake;
    std::variant<std::vector<FakeAccountRecord>, std::vector<AutomatedAccountRecord>> records;
    std::string source; // file path or synthetic seed note

    const std::vector<FakeAccountRecord>& fake_records() const {
        return std::get<std::vector<FakeAccountRecord>>(records);
    }
    const std::vector<AutomatedAccountRecord>& automated_records() const {
        return std::get<std::vector<AutomatedAccountRecord>>(records);
    }
    std::size_t size() const {
        return schema == Schema::fake ? fake_records().size() : automated_records().size();
    }
    std::size_t count_label(int label) const;
};

// Parses the canonical dataset JSON document:
//   {"schema": "fake"|"automated", "records": [ {field: value, ...} ]}
// Labels are the strings "real" / "fake" / "automated". Unknown record fields
// are rejected; negative counts are domain violations.
Dataset load_dataset(const std::string& json_text);
Dataset load_dataset(const std::string& json_text, Schema expected);
Dataset load_dataset_file(const std::string& path);
Dataset load_dataset_file(const std::string& path, Schema expected);

std::string dataset_to_json(const Dataset& dataset);

// Number of decimal digit characters in a raw username. Datasets store the
// count directly; this is for callers ingesting raw usernames.
std::size_t count_digits(const std::string& username);

// lcr = likes / max(comments, 1), ffr = follower / max(following, 1).
// Denominators are clamped so the ratios stay finite.
DerivedAutomatedFeatures derive_automated_features(const AutomatedAccountRecord& record);

// Fixed column orders. The automated order matches the feature cost table so
// masks and cost vectors align by index.
const std::vector<std::string>& fake_column_names();
const std::vector<std::string>& automated_column_names();

// Assembles the design matrix. Requires a valid dataset: at least two records
// with both labels present. Labels map {real -> 0, fake/automated -> 1}.
FeatureMatrix to_matrix(const Dataset& dataset);

// Draws a synthetic dataset whose per-class marginals follow the published
// distributions (digit-count table, highlight-reel and external-URL tables)
// and whose continuous features are log-uniform with class-dependent ranges.
// Deterministic for a fixed seed.
Dataset generate_synthetic_dataset(Schema schema, std::size_t n_real, std::size_t n_positive,
                                   std::uint64_t seed);

// Per-class histogram of one column over `bins` equal-width bins spanning the
// column's min..max. edges has bins+1 entries; the last bin is closed.
struct ClassHistogram {
    std::vector<double> edges;
    std::vector<std::size_t> class0;
    std::vector<std::size_t> class1;
};

ClassHistogram class_histogram(const FeatureMatrix& matrix, const std::string& column,
                               std::size_t bins);

std::string histogram_to_json(const ClassHistogram& hist);

} // namespace instaudit
