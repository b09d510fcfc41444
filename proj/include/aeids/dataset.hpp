#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aeids/matrix.hpp"

namespace aeids {

// Raw CSV contents before any numeric conversion. Cells are nullable; the
// label column is identified at load time and carried along.
struct RawTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<std::optional<std::string>>> cells;  // rows
    std::size_t label_col = 0;

    std::size_t n_rows() const { return cells.size(); }
    std::size_t n_cols() const { return column_names.size(); }
};

RawTable load_csv(const std::string& path, const std::string& label_column);

// Removes the listed columns; names that are absent (or that name the label
// column) are skipped with a warning appended to *warnings.
RawTable drop_columns(const RawTable& t, const std::vector<std::string>& names,
                      std::vector<std::string>* warnings = nullptr);

// How one raw column became numeric: either parsed directly or label-encoded
// by first appearance. Needed to replay the pipeline on new data.
struct ColumnCodec {
    bool categorical = false;
    std::vector<std::string> categories;  // code = position
};

struct ImputeParams {
    Vector fill_value;                    // per feature column
    std::vector<std::size_t> null_count;  // nulls observed while fitting
};

// Numeric features plus the still-raw label strings.
struct NumericTable {
    Matrix features;
    std::vector<std::string> feature_names;
    std::vector<std::string> raw_labels;
};

struct ImputeResult {
    NumericTable table;
    ImputeParams params;
    std::vector<ColumnCodec> codecs;
};

// Integer-codes categorical columns (first-appearance order), then replaces
// nulls with the per-column median. Throws SchemaError when a column is
// entirely null or a label cell is empty.
ImputeResult impute_fit_apply(const RawTable& t);

// Same transformation with frozen parameters, for replaying the pipeline on
// unseen data. Unknown category strings map to the fill value.
NumericTable impute_apply(const RawTable& t, const ImputeParams& params,
                          const std::vector<ColumnCodec>& codecs);

enum class LabelMode { binary, multiclass };

struct LabelEncoding {
    std::vector<int> ids;
    std::vector<std::string> class_names;
};

// Canonical class spelling after case folding and aliasing
// (DoS -> De-Authentication, False Data Injection -> FDI).
// Throws SchemaError for anything outside the known class set.
std::string canonical_label(const std::string& raw);

// binary: Benign = 0, every attack = 1; multiclass: alphabetical ids over
// the classes present.
LabelEncoding encode_labels(const std::vector<std::string>& raw_labels, LabelMode mode);

// Fully numeric dataset: feature matrix plus encoded labels.
struct FeatureTable {
    Matrix features;
    std::vector<std::string> feature_names;
    std::vector<int> labels;
    std::vector<std::string> class_names;

    std::size_t n_rows() const { return features.rows; }
    FeatureTable subset(const std::vector<std::size_t>& row_idx) const;
};

FeatureTable make_feature_table(const NumericTable& numeric, const LabelEncoding& encoding);

// Min-max scaling to [0,1], fit on the training partition only.
struct ScalerParams {
    Vector feature_min;
    Vector feature_max;
};

ScalerParams fit_scaler(const FeatureTable& train);

// (x - min) / (max - min), constant features map to 0, output clamped to
// [0,1] so unseen out-of-range values cannot blow up downstream.
FeatureTable apply_scaler(const ScalerParams& params, const FeatureTable& t);

struct DatasetSplit {
    FeatureTable train;
    FeatureTable test;
    std::uint64_t seed = 0;
    double ratio = 0.8;
};

// Per-class seeded shuffle; round(ratio * count) rows of every class go to
// train (clamped so both partitions keep at least one row per class).
// Throws DataError when a class has fewer than 2 records.
DatasetSplit stratified_split(const FeatureTable& t, double ratio, std::uint64_t seed);

std::map<int, double> class_proportions(const std::vector<int>& labels);

// FeatureTable CSV: feature columns with their names, then a final integer
// "label" column. Values are shortest round-trip decimals, so a write/read
// cycle is bit-exact.
void write_feature_csv(const std::string& path, const FeatureTable& t);
FeatureTable read_feature_csv(const std::string& path, std::vector<std::string> class_names);

// Everything needed to replay preprocessing on new data, serialized as the
// sidecar JSON next to the preprocessed tables.
struct PreprocessParams {
    std::vector<std::string> feature_names;
    std::vector<ColumnCodec> codecs;
    ImputeParams impute;
    ScalerParams scaler;
    std::vector<std::string> class_names;  // multiclass encoding
    std::string label_column;

    std::string to_json() const;
    static PreprocessParams from_json(const std::string& text);
};

void write_preprocess_params(const std::string& path, const PreprocessParams& params);
PreprocessParams read_preprocess_params(const std::string& path);

}  // namespace aeids
