#include "instaudit/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "instaudit/rng.hpp"

#include <json.hpp>

namespace instaudit {

using nlohmann::ordered_json;

std::string schema_name(Schema s) {
    return s == Schema::fake ? "fake" : "automated";
}

Schema schema_from_name(const std::string& name) {
    if (name == "fake") return Schema::fake;
    if (name == "automated") return Schema::automated;
    throw SchemaError("unknown schema '" + name + "'");
}

std::size_t Dataset::count_label(int label) const {
    std::size_t n = 0;
    if (schema == Schema::fake) {
        for (const auto& r : fake_records()) n += (r.label == label);
    } else {
        for (const auto& r : automated_records()) n += (r.label == label);
    }
    return n;
}

namespace {

int parse_label(const ordered_json& v, Schema schema, std::size_t index) {
    if (!v.is_string())
        throw SchemaError("record " + std::to_string(index) + ": label must be a string");
    const std::string s = v.get<std::string>();
    if (s == "real") return 0;
    if (schema == Schema::fake && s == "fake") return 1;
    if (schema == Schema::automated && s == "automated") return 1;
    throw SchemaError("record " + std::to_string(index) + ": label '" + s +
                      "' not valid for " + schema_name(schema) + " schema");
}

std::int64_t parse_count(const ordered_json& v, const char* field, std::size_t index) {
    if (!v.is_number_integer())
        throw SchemaError("record " + std::to_string(index) + ": field '" + field +
                          "' must be an integer");
    const std::int64_t n = v.get<std::int64_t>();
    if (n < 0)
        throw DomainError("record " + std::to_string(index) + ": field '" + field +
                          "' is negative (" + std::to_string(n) + ")");
    return n;
}

double parse_nonneg_real(const ordered_json& v, const char* field, std::size_t index) {
    if (!v.is_number())
        throw SchemaError("record " + std::to_string(index) + ": field '" + field +
                          "' must be a number");
    const double x = v.get<double>();
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("record " + std::to_string(index) + ": field '" + field +
                          "' must be finite and >= 0");
    return x;
}

bool parse_flag(const ordered_json& v, const char* field, std::size_t index) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) {
        const std::int64_t n = v.get<std::int64_t>();
        if (n == 0 || n == 1) return n == 1;
    }
    throw SchemaError("record " + std::to_string(index) + ": field '" + field +
                      "' must be a boolean or 0/1");
}

template <typename Fields>
void reject_unknown_fields(const ordered_json& obj, const Fields& known, std::size_t index) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw SchemaError("record " + std::to_string(index) + ": unknown field '" +
                              it.key() + "'");
    }
}

const ordered_json& require_field(const ordered_json& obj, const char* field, std::size_t index) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw SchemaError("record " + std::to_string(index) + ": missing field '" +
                          std::string(field) + "'");
    return *it;
}

FakeAccountRecord parse_fake_record(const ordered_json& obj, std::size_t index) {
    static const std::vector<std::string> known = {
        "media_count", "follower_count", "following_count",
        "username_digit_count", "is_private", "label"};
    if (!obj.is_object())
        throw SchemaError("record " + std::to_string(index) + ": must be an object");
    reject_unknown_fields(obj, known, index);
    FakeAccountRecord r;
    r.media_count = parse_count(require_field(obj, "media_count", index), "media_count", index);
    r.follower_count =
        parse_count(require_field(obj, "follower_count", index), "follower_count", index);
    r.following_count =
        parse_count(require_field(obj, "following_count", index), "following_count", index);
    r.username_digit_count = parse_count(require_field(obj, "username_digit_count", index),
                                         "username_digit_count", index);
    r.is_private = parse_flag(require_field(obj, "is_private", index), "is_private", index);
    r.label = parse_label(require_field(obj, "label", index), Schema::fake, index);
    return r;
}

AutomatedAccountRecord parse_automated_record(const ordered_json& obj, std::size_t index) {
    static const std::vector<std::string> known = {
        "media_count", "follower_count", "following_count",
        "has_highlight_reel", "has_external_url", "tagged_photo_count",
        "avg_recent_hashtag_count", "avg_recent_like_count", "avg_recent_comment_count",
        "label"};
    if (!obj.is_object())
        throw SchemaError("record " + std::to_string(index) + ": must be an object");
    reject_unknown_fields(obj, known, index);
    AutomatedAccountRecord r;
    r.media_count = parse_count(require_field(obj, "media_count", index), "media_count", index);
    r.follower_count =
        parse_count(require_field(obj, "follower_count", index), "follower_count", index);
    r.following_count =
        parse_count(require_field(obj, "following_count", index), "following_count", index);
    r.has_highlight_reel = parse_flag(require_field(obj, "has_highlight_reel", index),
                                      "has_highlight_reel", index);
    r.has_external_url =
        parse_flag(require_field(obj, "has_external_url", index), "has_external_url", index);
    r.tagged_photo_count = parse_count(require_field(obj, "tagged_photo_count", index),
                                       "tagged_photo_count", index);
    r.avg_recent_hashtag_count =
        parse_nonneg_real(require_field(obj, "avg_recent_hashtag_count", index),
                          "avg_recent_hashtag_count", index);
    r.avg_recent_like_count =
        parse_nonneg_real(require_field(obj, "avg_recent_like_count", index),
                          "avg_recent_like_count", index);
    r.avg_recent_comment_count =
        parse_nonneg_real(require_field(obj, "avg_recent_comment_count", index),
                          "avg_recent_comment_count", index);
    r.label = parse_label(require_field(obj, "label", index), Schema::automated, index);
    if (r.media_count == 0 &&
        (r.avg_recent_hashtag_count != 0.0 || r.avg_recent_like_count != 0.0 ||
         r.avg_recent_comment_count != 0.0))
        throw DomainError("record " + std::to_string(index) +
                          ": media_count is 0 but recent-media averages are nonzero");
    return r;
}

} // namespace

Dataset load_dataset(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw SchemaError("top level must be an object");
    auto schema_it = doc.find("schema");
    if (schema_it == doc.end() || !schema_it->is_string())
        throw SchemaError("missing or non-string 'schema'");
    auto records_it = doc.find("records");
    if (records_it == doc.end() || !records_it->is_array())
        throw SchemaError("missing or non-array 'records'");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "schema" && it.key() != "records" && it.key() != "source")
            throw SchemaError("unknown top-level field '" + it.key() + "'");

    Dataset out;
    out.schema = schema_from_name(schema_it->get<std::string>());
    if (auto src = doc.find("source"); src != doc.end() && src->is_string())
        out.source = src->get<std::string>();

    if (out.schema == Schema::fake) {
        std::vector<FakeAccountRecord> records;
        records.reserve(records_it->size());
        for (std::size_t i = 0; i < records_it->size(); ++i)
            records.push_back(parse_fake_record((*records_it)[i], i));
        out.records = std::move(records);
    } else {
        std::vector<AutomatedAccountRecord> records;
        records.reserve(records_it->size());
        for (std::size_t i = 0; i < records_it->size(); ++i)
            records.push_back(parse_automated_record((*records_it)[i], i));
        out.records = std::move(records);
    }
    return out;
}

Dataset load_dataset(const std::string& json_text, Schema expected) {
    Dataset d = load_dataset(json_text);
    if (d.schema != expected)
        throw SchemaError("document schema '" + schema_name(d.schema) + "' does not match requested '" +
                          schema_name(expected) + "'");
    return d;
}

Dataset load_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Dataset d = load_dataset(buf.str());
    if (d.source.empty()) d.source = path;
    return d;
}

Dataset load_dataset_file(const std::string& path, Schema expected) {
    Dataset d = load_dataset_file(path);
    if (d.schema != expected)
        throw SchemaError("document schema '" + schema_name(d.schema) + "' does not match requested '" +
                          schema_name(expected) + "'");
    return d;
}

std::string dataset_to_json(const Dataset& dataset) {
    ordered_json doc;
    doc["schema"] = schema_name(dataset.schema);
    if (!dataset.source.empty()) doc["source"] = dataset.source;
    ordered_json records = ordered_json::array();
    if (dataset.schema == Schema::fake) {
        for (const auto& r : dataset.fake_records()) {
            ordered_json o;
            o["media_count"] = r.media_count;
            o["follower_count"] = r.follower_count;
            o["following_count"] = r.following_count;
            o["username_digit_count"] = r.username_digit_count;
            o["is_private"] = r.is_private;
            o["label"] = r.label ? "fake" : "real";
            records.push_back(std::move(o));
        }
    } else {
        for (const auto& r : dataset.automated_records()) {
            ordered_json o;
            o["media_count"] = r.media_count;
            o["follower_count"] = r.follower_count;
            o["following_count"] = r.following_count;
            o["has_highlight_reel"] = r.has_highlight_reel;
            o["has_external_url"] = r.has_external_url;
            o["tagged_photo_count"] = r.tagged_photo_count;
            o["avg_recent_hashtag_count"] = r.avg_recent_hashtag_count;
            o["avg_recent_like_count"] = r.avg_recent_like_count;
            o["avg_recent_comment_count"] = r.avg_recent_comment_count;
            o["label"] = r.label ? "automated" : "real";
            records.push_back(std::move(o));
        }
    }
    doc["records"] = std::move(records);
    return doc.dump(2);
}

std::size_t count_digits(const std::string& username) {
    std::size_t n = 0;
    for (unsigned char c : username)
        if (std::isdigit(c)) ++n;
    return n;
}

DerivedAutomatedFeatures derive_automated_features(const AutomatedAccountRecord& record) {
    DerivedAutomatedFeatures d;
    d.lcr = record.avg_recent_like_count / std::max(record.avg_recent_comment_count, 1.0);
    d.ffr = static_cast<double>(record.follower_count) /
            static_cast<double>(std::max<std::int64_t>(record.following_count, 1));
    d.has_no_media = (record.media_count == 0);
    return d;
}

const std::vector<std::string>& fake_column_names() {
    static const std::vector<std::string> names = {
        "media_count", "follower_count", "following_count", "username_digit_count",
        "is_private"};
    return names;
}

// Order matches the feature cost table: media, follower, following, highlight
// reel, external url, tag number, average hashtag number, has-0-media, LCR, FFR.
const std::vector<std::string>& automated_column_names() {
    static const std::vector<std::string> names = {
        "media_count", "follower_count", "following_count", "has_highlight_reel",
        "has_external_url", "tagged_photo_count", "avg_recent_hashtag_count",
        "has_no_media", "lcr", "ffr"};
    return names;
}

FeatureMatrix to_matrix(const Dataset& dataset) {
    const std::size_t n = dataset.size();
    if (n < 2) throw DomainError("dataset must contain at least 2 records");
    if (dataset.count_label(0) == 0 || dataset.count_label(1) == 0)
        throw DomainError("dataset must contain both labels");

    FeatureMatrix m;
    if (dataset.schema == Schema::fake) {
        m.column_names = fake_column_names();
        m.column_kinds = {ColumnKind::continuous, ColumnKind::continuous, ColumnKind::continuous,
                          ColumnKind::continuous, ColumnKind::binary};
        m.values.reserve(n * 5);
        for (const auto& r : dataset.fake_records()) {
            m.values.insert(m.values.end(),
                            {static_cast<double>(r.media_count),
                             static_cast<double>(r.follower_count),
                             static_cast<double>(r.following_count),
                             static_cast<double>(r.username_digit_count),
                             r.is_private ? 1.0 : 0.0});
            m.labels.push_back(r.label);
        }
    } else {
        m.column_names = automated_column_names();
        m.column_kinds = {ColumnKind::continuous, ColumnKind::continuous, ColumnKind::continuous,
                          ColumnKind::binary,     ColumnKind::binary,     ColumnKind::continuous,
                          ColumnKind::continuous, ColumnKind::binary,     ColumnKind::continuous,
                          ColumnKind::continuous};
        m.values.reserve(n * 10);
        for (const auto& r : dataset.automated_records()) {
            const DerivedAutomatedFeatures d = derive_automated_features(r);
            m.values.insert(m.values.end(),
                            {static_cast<double>(r.media_count),
                             static_cast<double>(r.follower_count),
                             static_cast<double>(r.following_count),
                             r.has_highlight_reel ? 1.0 : 0.0,
                             r.has_external_url ? 1.0 : 0.0,
                             static_cast<double>(r.tagged_photo_count),
                             r.avg_recent_hashtag_count,
                             d.has_no_media ? 1.0 : 0.0,
                             d.lcr,
                             d.ffr});
            m.labels.push_back(r.label);
        }
    }
    return m;
}

namespace {

// Synthetic marginal constants. Binary frequencies come straight from the
// published per-class tables; continuous ranges are implementation constants
// chosen to keep the published separation directions (fake accounts follow
// many and are followed by few; automated accounts use markedly more hashtags
// and carry external URLs far more often).
struct DigitClassTable {
    // P(digit-count class) for classes 0,1,2,3,3+
    double p[5];
};
constexpr DigitClassTable kRealDigits{{0.889, 0.025, 0.053, 0.007, 0.026}};
constexpr DigitClassTable kFakeDigits{{0.468, 0.100, 0.139, 0.114, 0.179}};

constexpr double kRealPrivateRate = 0.38;
constexpr double kFakePrivateRate = 0.16;

constexpr double kAutoHighlightRate = 440.0 / 700.0;
constexpr double kRealHighlightRate = 232.0 / 700.0;
constexpr double kAutoUrlRate = 383.0 / 700.0;
constexpr double kRealUrlRate = 46.0 / 700.0;

std::int64_t sample_digit_count(Rng& rng, const DigitClassTable& table) {
    const double u = rng.next_double();
    double acc = 0.0;
    for (int cls = 0; cls < 4; ++cls) {
        acc += table.p[cls];
        if (u < acc) return cls;
    }
    return rng.next_int(4, 8); // the 3+ bucket
}

std::int64_t log_uniform_count(Rng& rng, double lo, double hi) {
    return static_cast<std::int64_t>(std::llround(rng.next_log_uniform(lo + 1.0, hi + 1.0) - 1.0));
}

FakeAccountRecord synth_fake_record(Rng& rng, int label) {
    FakeAccountRecord r;
    r.label = label;
    if (label == 0) {
        r.media_count = rng.next_bool(0.08) ? 0 : log_uniform_count(rng, 1, 400);
        r.follower_count = log_uniform_count(rng, 10, 3000);
        r.following_count = log_uniform_count(rng, 30, 2500);
        r.username_digit_count = sample_digit_count(rng, kRealDigits);
        r.is_private = rng.next_bool(kRealPrivateRate);
    } else {
        r.media_count = rng.next_bool(0.35) ? 0 : log_uniform_count(rng, 1, 60);
        r.follower_count = rng.next_bool(0.08) ? 0 : log_uniform_count(rng, 1, 400);
        r.following_count = log_uniform_count(rng, 100, 6000);
        r.username_digit_count = sample_digit_count(rng, kFakeDigits);
        r.is_private = rng.next_bool(kFakePrivateRate);
    }
    return r;
}

AutomatedAccountRecord synth_automated_record(Rng& rng, int label) {
    AutomatedAccountRecord r;
    r.label = label;
    if (label == 0) {
        r.media_count = rng.next_bool(0.06) ? 0 : log_uniform_count(rng, 2, 600);
        r.follower_count = log_uniform_count(rng, 30, 2500);
        r.following_count = log_uniform_count(rng, 30, 1200);
        r.has_highlight_reel = rng.next_bool(kRealHighlightRate);
        r.has_external_url = rng.next_bool(kRealUrlRate);
        r.tagged_photo_count = log_uniform_count(rng, 0, 150);
        if (r.media_count > 0) {
            r.avg_recent_hashtag_count = rng.next_range(0.0, 6.0);
            r.avg_recent_like_count = rng.next_log_uniform(20.0, 1500.0);
            r.avg_recent_comment_count = rng.next_log_uniform(2.0, 80.0);
        }
    } else {
        r.media_count = rng.next_bool(0.03) ? 0 : log_uniform_count(rng, 2, 350);
        r.follower_count = log_uniform_count(rng, 100, 8000);
        r.following_count = log_uniform_count(rng, 300, 7000);
        r.has_highlight_reel = rng.next_bool(kAutoHighlightRate);
        r.has_external_url = rng.next_bool(kAutoUrlRate);
        r.tagged_photo_count = log_uniform_count(rng, 0, 40);
        if (r.media_count > 0) {
            r.avg_recent_hashtag_count = rng.next_range(7.0, 28.0);
            r.avg_recent_like_count = rng.next_log_uniform(50.0, 2500.0);
            r.avg_recent_comment_count = rng.next_log_uniform(0.5, 6.0);
        }
    }
    return r;
}

} // namespace

Dataset generate_synthetic_dataset(Schema schema, std::size_t n_real, std::size_t n_positive,
                                   std::uint64_t seed) {
    if (n_real < 1 || n_positive < 1)
        throw DomainError("synthetic class counts must be >= 1");
    Rng rng(derive_seed(seed, seed_tag::synth));
    Dataset out;
    out.schema = schema;
    out.source = "synthetic(schema=" + schema_name(schema) + ",seed=" + std::to_string(seed) + ")";
    if (schema == Schema::fake) {
        std::vector<FakeAccountRecord> records;
        records.reserve(n_real + n_positive);
        for (std::size_t i = 0; i < n_real; ++i) records.push_back(synth_fake_record(rng, 0));
        for (std::size_t i = 0; i < n_positive; ++i) records.push_back(synth_fake_record(rng, 1));
        out.records = std::move(records);
    } else {
        std::vector<AutomatedAccountRecord> records;
        records.reserve(n_real + n_positive);
        for (std::size_t i = 0; i < n_real; ++i) records.push_back(synth_automated_record(rng, 0));
        for (std::size_t i = 0; i < n_positive; ++i)
            records.push_back(synth_automated_record(rng, 1));
        out.records = std::move(records);
    }
    return out;
}

ClassHistogram class_histogram(const FeatureMatrix& matrix, const std::string& column,
                               std::size_t bins) {
    if (bins < 1) throw DomainError("bins must be >= 1");
    const std::size_t j = matrix.column_index(column);
    if (matrix.rows() == 0) throw DomainError("empty matrix");

    double lo = matrix.at(0, j), hi = matrix.at(0, j);
    for (std::size_t r = 1; r < matrix.rows(); ++r) {
        lo = std::min(lo, matrix.at(r, j));
        hi = std::max(hi, matrix.at(r, j));
    }

    ClassHistogram h;
    h.edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b)
        h.edges[b] = lo + width * static_cast<double>(b);
    h.edges.back() = hi;
    h.class0.assign(bins, 0);
    h.class1.assign(bins, 0);

    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const double x = matrix.at(r, j);
        std::size_t b = 0;
        if (width > 0.0) {
            b = static_cast<std::size_t>((x - lo) / width);
            if (b >= bins) b = bins - 1; // hi lands in the last (closed) bin
        }
        (matrix.labels[r] == 0 ? h.class0 : h.class1)[b]++;
    }
    return h;
}

std::string histogram_to_json(const ClassHistogram& hist) {
    ordered_json doc;
    doc["edges"] = hist.edges;
    doc["class0"] = hist.class0;
    doc["class1"] = hist.class1;
    return doc.dump(2);
}

} // namespace instaudit
