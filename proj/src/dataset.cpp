#include "aeids/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "aeids/csv.hpp"
#include "aeids/error.hpp"
#include "aeids/rng.hpp"

namespace aeids {

RawTable load_csv(const std::string& path, const std::string& label_column) {
    CsvFile csv = read_csv_file(path);
    RawTable t;
    t.column_names = csv.header;
    t.cells = std::move(csv.rows);

    auto it = std::find(t.column_names.begin(), t.column_names.end(), label_column);
    if (it == t.column_names.end())
        throw SchemaError("label column '" + label_column + "' not found in '" + path + "'");
    t.label_col = static_cast<std::size_t>(it - t.column_names.begin());
    return t;
}

RawTable drop_columns(const RawTable& t, const std::vector<std::string>& names,
                      std::vector<std::string>* warnings) {
    std::vector<bool> keep(t.n_cols(), true);
    for (const std::string& name : names) {
        auto it = std::find(t.column_names.begin(), t.column_names.end(), name);
        if (it == t.column_names.end()) {
            if (warnings) warnings->push_back("drop_columns: column '" + name + "' not present");
            continue;
        }
        std::size_t idx = static_cast<std::size_t>(it - t.column_names.begin());
        if (idx == t.label_col) {
            if (warnings)
                warnings->push_back("drop_columns: refusing to drop label column '" + name + "'");
            continue;
        }
        keep[idx] = false;
    }

    RawTable out;
    for (std::size_t c = 0; c < t.n_cols(); ++c) {
        if (!keep[c]) continue;
        if (c == t.label_col) out.label_col = out.column_names.size();
        out.column_names.push_back(t.column_names[c]);
    }
    out.cells.reserve(t.n_rows());
    for (const auto& row : t.cells) {
        std::vector<std::optional<std::string>> kept;
        kept.reserve(out.n_cols());
        for (std::size_t c = 0; c < t.n_cols(); ++c)
            if (keep[c]) kept.push_back(row[c]);
        out.cells.push_back(std::move(kept));
    }
    return out;
}

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// a cell counts as missing when it is empty or parses to a non-finite
// number; FeatureTable entries must stay finite
bool numeric_cell(const std::optional<std::string>& cell, double& out) {
    return cell.has_value() && parse_double(*cell, out) && std::isfinite(out);
}

std::vector<std::string> collect_labels(const RawTable& t) {
    std::vector<std::string> labels;
    labels.reserve(t.n_rows());
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        const auto& cell = t.cells[r][t.label_col];
        if (!cell.has_value())
            throw SchemaError("row " + std::to_string(r + 1) + " has an empty label");
        labels.push_back(*cell);
    }
    return labels;
}

std::vector<std::size_t> feature_columns(const RawTable& t) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < t.n_cols(); ++c)
        if (c != t.label_col) cols.push_back(c);
    return cols;
}

// true when every present cell parses as a finite number
bool column_is_numeric(const RawTable& t, std::size_t c) {
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        const auto& cell = t.cells[r][c];
        double value;
        if (cell.has_value() && !numeric_cell(cell, value)) {
            // non-numeric text makes the column categorical; a bare
            // "nan"/"inf" cell is treated as missing instead
            if (!parse_double(*cell, value)) return false;
        }
    }
    return true;
}

}  // namespace

ImputeResult impute_fit_apply(const RawTable& t) {
    ImputeResult result;
    const std::size_t n_rows = t.n_rows();
    const std::vector<std::size_t> cols = feature_columns(t);

    result.table.features = Matrix(n_rows, cols.size());
    result.table.feature_names.reserve(cols.size());
    result.codecs.resize(cols.size());
    result.params.fill_value.assign(cols.size(), 0.0);
    result.params.null_count.assign(cols.size(), 0);

    for (std::size_t fi = 0; fi < cols.size(); ++fi) {
        const std::size_t c = cols[fi];
        result.table.feature_names.push_back(t.column_names[c]);

        ColumnCodec& codec = result.codecs[fi];
        codec.categorical = !column_is_numeric(t, c);

        std::vector<double> observed;
        observed.reserve(n_rows);
        std::unordered_map<std::string, double> codes;
        std::size_t nulls = 0;
        for (std::size_t r = 0; r < n_rows; ++r) {
            const auto& cell = t.cells[r][c];
            double value;
            bool present;
            if (codec.categorical) {
                present = cell.has_value();
                if (present) {
                    auto it = codes.find(*cell);
                    if (it == codes.end()) {
                        value = static_cast<double>(codec.categories.size());
                        codes.emplace(*cell, value);
                        codec.categories.push_back(*cell);
                    } else {
                        value = it->second;
                    }
                }
            } else {
                present = numeric_cell(cell, value);
            }
            if (present) {
                result.table.features(r, fi) = value;
                observed.push_back(value);
            } else {
                result.table.features(r, fi) = std::nan("");
                ++nulls;
            }
        }
        if (observed.empty())
            throw SchemaError("column '" + t.column_names[c] + "' is entirely null");

        double fill = median_of(std::move(observed));
        result.params.fill_value[fi] = fill;
        result.params.null_count[fi] = nulls;
        for (std::size_t r = 0; r < n_rows; ++r)
            if (std::isnan(result.table.features(r, fi))) result.table.features(r, fi) = fill;
    }

    result.table.raw_labels = collect_labels(t);
    return result;
}

NumericTable impute_apply(const RawTable& t, const ImputeParams& params,
                          const std::vector<ColumnCodec>& codecs) {
    const std::vector<std::size_t> cols = feature_columns(t);
    if (cols.size() != codecs.size())
        throw ShapeError("impute_apply: table has " + std::to_string(cols.size()) +
                         " feature columns, parameters expect " + std::to_string(codecs.size()));

    NumericTable out;
    out.features = Matrix(t.n_rows(), cols.size());
    for (std::size_t fi = 0; fi < cols.size(); ++fi) {
        const std::size_t c = cols[fi];
        out.feature_names.push_back(t.column_names[c]);
        for (std::size_t r = 0; r < t.n_rows(); ++r) {
            const auto& cell = t.cells[r][c];
            double value = params.fill_value[fi];
            if (codecs[fi].categorical) {
                if (cell.has_value()) {
                    auto it = std::find(codecs[fi].categories.begin(),
                                        codecs[fi].categories.end(), *cell);
                    if (it != codecs[fi].categories.end())
                        value = static_cast<double>(it - codecs[fi].categories.begin());
                }
            } else {
                double parsed;
                if (numeric_cell(cell, parsed)) value = parsed;
            }
            out.features(r, fi) = value;
        }
    }
    out.raw_labels = collect_labels(t);
    return out;
}

std::string canonical_label(const std::string& raw) {
    std::string key = to_lower(trim(raw));
    std::replace(key.begin(), key.end(), '_', ' ');
    if (key == "benign" || key == "normal") return "Benign";
    if (key == "de-authentication" || key == "deauthentication" || key == "dos" ||
        key == "de-authentication (dos)" || key == "de-auth")
        return "De-Authentication";
    if (key == "replay") return "Replay";
    if (key == "evil twin" || key == "eviltwin") return "Evil Twin";
    if (key == "fdi" || key == "false data injection") return "FDI";
    throw SchemaError("unknown class label '" + raw + "'");
}

LabelEncoding encode_labels(const std::vector<std::string>& raw_labels, LabelMode mode) {
    LabelEncoding enc;
    enc.ids.reserve(raw_labels.size());

    if (mode == LabelMode::binary) {
        enc.class_names = {"Benign", "Attack"};
        for (const std::string& raw : raw_labels)
            enc.ids.push_back(canonical_label(raw) == "Benign" ? 0 : 1);
        return enc;
    }

    std::vector<std::string> canon;
    canon.reserve(raw_labels.size());
    for (const std::string& raw : raw_labels) canon.push_back(canonical_label(raw));

    std::vector<std::string> names = canon;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    enc.class_names = names;

    for (const std::string& c : canon) {
        auto it = std::lower_bound(names.begin(), names.end(), c);
        enc.ids.push_back(static_cast<int>(it - names.begin()));
    }
    return enc;
}

FeatureTable make_feature_table(const NumericTable& numeric, const LabelEncoding& encoding) {
    require_shape(numeric.features.rows == encoding.ids.size(),
                  "make_feature_table: row/label count mismatch");
    FeatureTable t;
    t.features = numeric.features;
    t.feature_names = numeric.feature_names;
    t.labels = encoding.ids;
    t.class_names = encoding.class_names;
    return t;
}

FeatureTable FeatureTable::subset(const std::vector<std::size_t>& row_idx) const {
    FeatureTable out;
    out.feature_names = feature_names;
    out.class_names = class_names;
    out.features = Matrix(row_idx.size(), features.cols);
    out.labels.reserve(row_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        const double* src = features.row(row_idx[i]);
        std::copy(src, src + features.cols, out.features.row(i));
        out.labels.push_back(labels[row_idx[i]]);
    }
    return out;
}

ScalerParams fit_scaler(const FeatureTable& train) {
    if (train.n_rows() == 0) throw DataError("fit_scaler: empty table");
    ScalerParams p;
    p.feature_min.assign(train.features.cols, 0.0);
    p.feature_max.assign(train.features.cols, 0.0);
    for (std::size_t c = 0; c < train.features.cols; ++c) {
        double lo = train.features(0, c), hi = train.features(0, c);
        for (std::size_t r = 1; r < train.features.rows; ++r) {
            lo = std::min(lo, train.features(r, c));
            hi = std::max(hi, train.features(r, c));
        }
        p.feature_min[c] = lo;
        p.feature_max[c] = hi;
    }
    return p;
}

FeatureTable apply_scaler(const ScalerParams& params, const FeatureTable& t) {
    require_shape(params.feature_min.size() == t.features.cols,
                  "apply_scaler: parameter/feature count mismatch");
    FeatureTable out = t;
    for (std::size_t c = 0; c < t.features.cols; ++c) {
        double lo = params.feature_min[c];
        double range = params.feature_max[c] - lo;
        for (std::size_t r = 0; r < t.features.rows; ++r) {
            double v = range > 0.0 ? (t.features(r, c) - lo) / range : 0.0;
            out.features(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

DatasetSplit stratified_split(const FeatureTable& t, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ConfigError("stratified_split: ratio must lie in (0,1)");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t r = 0; r < t.n_rows(); ++r) by_class[t.labels[r]].push_back(r);

    std::vector<std::size_t> train_idx, test_idx;
    for (auto& [label, rows] : by_class) {
        if (rows.size() < 2)
            throw DataError("stratified_split: class id " + std::to_string(label) +
                            " has fewer than 2 records");
        SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(label)));
        rng.shuffle(rows);
        auto want = static_cast<std::size_t>(
            std::llround(ratio * static_cast<double>(rows.size())));
        std::size_t take = std::clamp<std::size_t>(want, 1, rows.size() - 1);
        train_idx.insert(train_idx.end(), rows.begin(), rows.begin() + take);
        test_idx.insert(test_idx.end(), rows.begin() + take, rows.end());
    }
    // partitions keep the original row order
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    DatasetSplit split;
    split.train = t.subset(train_idx);
    split.test = t.subset(test_idx);
    split.seed = seed;
    split.ratio = ratio;
    return split;
}

std::map<int, double> class_proportions(const std::vector<int>& labels) {
    if (labels.empty()) throw DataError("class_proportions: empty label vector");
    std::map<int, double> out;
    for (int label : labels) out[label] += 1.0;
    for (auto& [label, count] : out) count /= static_cast<double>(labels.size());
    return out;
}

void write_feature_csv(const std::string& path, const FeatureTable& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");
    std::vector<std::string> header = t.feature_names;
    header.push_back("label");
    out << csv_join(header) << '\n';
    std::vector<std::string> fields(header.size());
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        for (std::size_t c = 0; c < t.features.cols; ++c)
            fields[c] = format_double(t.features(r, c));
        fields.back() = std::to_string(t.labels[r]);
        out << csv_join(fields) << '\n';
    }
    if (!out) throw FileError("write to '" + path + "' failed");
}

FeatureTable read_feature_csv(const std::string& path, std::vector<std::string> class_names) {
    CsvFile csv = read_csv_file(path);
    if (csv.header.empty() || csv.header.back() != "label")
        throw SchemaError("'" + path + "': last column must be 'label'");

    FeatureTable t;
    t.class_names = std::move(class_names);
    t.feature_names.assign(csv.header.begin(), csv.header.end() - 1);
    t.features = Matrix(csv.rows.size(), t.feature_names.size());
    t.labels.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        for (std::size_t c = 0; c < t.feature_names.size(); ++c) {
            const auto& cell = csv.rows[r][c];
            double value;
            if (!cell.has_value() || !parse_double(*cell, value))
                throw ParseError("'" + path + "' row " + std::to_string(r + 2) +
                                 ": non-numeric feature cell");
            t.features(r, c) = value;
        }
        const auto& label_cell = csv.rows[r].back();
        double label;
        if (!label_cell.has_value() || !parse_double(*label_cell, label))
            throw ParseError("'" + path + "' row " + std::to_string(r + 2) + ": bad label cell");
        t.labels.push_back(static_cast<int>(label));
    }
    return t;
}

namespace {

using nlohmann::json;

json codec_to_json(const ColumnCodec& codec) {
    json j;
    j["categorical"] = codec.categorical;
    j["categories"] = codec.categories;
    return j;
}

ColumnCodec codec_from_json(const json& j) {
    ColumnCodec codec;
    codec.categorical = j.at("categorical").get<bool>();
    codec.categories = j.at("categories").get<std::vector<std::string>>();
    return codec;
}

}  // namespace

std::string PreprocessParams::to_json() const {
    json j;
    j["format"] = "aeids-preprocess";
    j["version"] = 1;
    j["label_column"] = label_column;
    j["feature_names"] = feature_names;
    j["class_names"] = class_names;
    json codec_list = json::array();
    for (const auto& codec : codecs) codec_list.push_back(codec_to_json(codec));
    j["codecs"] = codec_list;
    j["impute"] = {{"fill_value", impute.fill_value}, {"null_count", impute.null_count}};
    j["scaler"] = {{"min", scaler.feature_min}, {"max", scaler.feature_max}};
    return j.dump(2) + "\n";
}

PreprocessParams PreprocessParams::from_json(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("preprocess sidecar: invalid JSON");
    try {
        if (j.at("format").get<std::string>() != "aeids-preprocess")
            throw ParseError("preprocess sidecar: unexpected format tag");
        PreprocessParams p;
        p.label_column = j.at("label_column").get<std::string>();
        p.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        p.class_names = j.at("class_names").get<std::vector<std::string>>();
        for (const auto& cj : j.at("codecs")) p.codecs.push_back(codec_from_json(cj));
        p.impute.fill_value = j.at("impute").at("fill_value").get<Vector>();
        p.impute.null_count = j.at("impute").at("null_count").get<std::vector<std::size_t>>();
        p.scaler.feature_min = j.at("scaler").at("min").get<Vector>();
        p.scaler.feature_max = j.at("scaler").at("max").get<Vector>();
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("preprocess sidecar: ") + e.what());
    }
}

void write_preprocess_params(const std::string& path, const PreprocessParams& params) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << params.to_json();
}

PreprocessParams read_preprocess_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return PreprocessParams::from_json(text);
}

}  // namespace aeids
