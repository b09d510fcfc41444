#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "aeids/dataset.hpp"
#include "aeids/error.hpp"
#include "aeids/rng.hpp"
#include "support/tempdir.hpp"

using namespace aeids;
using aeids::testsupport::TempDir;

TEST_CASE("load_csv parses a small file") {
    TempDir dir("aeids-csv");
    std::string path = dir.write("small.csv", "a,b,label\n1,2,Benign\n3,,Replay\n");
    RawTable t = load_csv(path, "label");
    CHECK(t.n_rows() == 2);
    CHECK(t.n_cols() == 3);
    CHECK(t.label_col == 2);
    CHECK(t.cells[0][0].value() == "1");
    CHECK_FALSE(t.cells[1][1].has_value());  // empty cell is a null marker
}

TEST_CASE("load_csv error variants") {
    TempDir dir("aeids-csv");
    CHECK_THROWS_AS(load_csv(dir.file("missing.csv"), "label"), FileError);

    std::string ragged = dir.write("ragged.csv", "a,b,label\n1,2,Benign\n1,2\n");
    try {
        load_csv(ragged, "label");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    std::string nolabel = dir.write("nolabel.csv", "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(load_csv(nolabel, "label"), SchemaError);
}

TEST_CASE("load_csv honours quoting") {
    TempDir dir("aeids-csv");
    std::string path =
        dir.write("quoted.csv", "name,label\n\"a,b\",Benign\n\"say \"\"hi\"\"\",Replay\n");
    RawTable t = load_csv(path, "label");
    CHECK(t.cells[0][0].value() == "a,b");
    CHECK(t.cells[1][0].value() == "say \"hi\"");
}

namespace {

RawTable wide_table() {
    // 57 feature columns + label, mirroring the raw capture layout
    RawTable t;
    for (int i = 0; i < 54; ++i) t.column_names.push_back("f" + std::to_string(i));
    t.column_names.push_back("frame.number");
    t.column_names.push_back("wlan.bssid");
    t.column_names.push_back("timestamp_c");
    t.column_names.push_back("Label");
    t.label_col = 57;
    std::vector<std::optional<std::string>> row(58, std::string("1"));
    row[57] = std::string("Benign");
    t.cells.push_back(row);
    row[57] = std::string("Replay");
    t.cells.push_back(row);
    return t;
}

}  // namespace

TEST_CASE("drop_columns removes the non-essential capture fields") {
    RawTable t = wide_table();
    RawTable dropped = drop_columns(t, {"frame.number", "wlan.bssid", "timestamp_c"});
    CHECK(dropped.n_cols() == 55);  // 54 features + label
    CHECK(dropped.n_rows() == 2);
    CHECK(dropped.column_names[dropped.label_col] == "Label");

    RawTable same = drop_columns(t, {});
    CHECK(same.n_cols() == t.n_cols());

    std::vector<std::string> warnings;
    RawTable unchanged = drop_columns(t, {"no.such.column"}, &warnings);
    CHECK(unchanged.n_cols() == t.n_cols());
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("no.such.column") != std::string::npos);

    warnings.clear();
    RawTable keep_label = drop_columns(t, {"Label"}, &warnings);
    CHECK(keep_label.n_cols() == t.n_cols());
    CHECK(warnings.size() == 1);
}

TEST_CASE("impute fills nulls with the column median") {
    TempDir dir("aeids-imp");
    std::string path = dir.write("t.csv", "x,label\n1,Benign\n,Replay\n3,Benign\n");
    RawTable t = load_csv(path, "label");
    ImputeResult r = impute_fit_apply(t);
    CHECK(r.table.features(0, 0) == 1.0);
    CHECK(r.table.features(1, 0) == 2.0);  // median of {1,3}
    CHECK(r.table.features(2, 0) == 3.0);
    CHECK(r.params.fill_value[0] == 2.0);
    CHECK(r.params.null_count[0] == 1);
    CHECK_FALSE(r.codecs[0].categorical);
}

TEST_CASE("impute no-null and constant-column cases") {
    TempDir dir("aeids-imp");
    std::string clean = dir.write("clean.csv", "x,y,label\n1,4,Benign\n2,5,Replay\n");
    ImputeResult r = impute_fit_apply(load_csv(clean, "label"));
    CHECK(r.params.null_count == std::vector<std::size_t>{0, 0});
    CHECK(r.table.features(0, 0) == 1.0);
    CHECK(r.table.features(1, 1) == 5.0);

    std::string constant = dir.write("const.csv", "x,label\n5,Benign\n,Replay\n,Benign\n5,FDI\n");
    ImputeResult rc = impute_fit_apply(load_csv(constant, "label"));
    CHECK(rc.params.fill_value[0] == 5.0);
    CHECK(rc.table.features(1, 0) == 5.0);
    CHECK(rc.table.features(2, 0) == 5.0);
}

TEST_CASE("impute rejects an entirely null column") {
    TempDir dir("aeids-imp");
    std::string path = dir.write("null.csv", "x,y,label\n1,,Benign\n2,,Replay\n");
    try {
        impute_fit_apply(load_csv(path, "label"));
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("'y'") != std::string::npos);
    }
}

TEST_CASE("impute integer-codes categorical columns by first appearance") {
    TempDir dir("aeids-imp");
    std::string path = dir.write(
        "cat.csv", "proto,label\ntcp,Benign\nudp,Replay\ntcp,Benign\n,FDI\nicmp,Benign\n");
    ImputeResult r = impute_fit_apply(load_csv(path, "label"));
    REQUIRE(r.codecs[0].categorical);
    CHECK(r.codecs[0].categories == std::vector<std::string>{"tcp", "udp", "icmp"});
    CHECK(r.table.features(0, 0) == 0.0);
    CHECK(r.table.features(1, 0) == 1.0);
    CHECK(r.table.features(2, 0) == 0.0);
    CHECK(r.table.features(4, 0) == 2.0);
    // null got the median of {0,1,0,2}
    CHECK(r.table.features(3, 0) == 0.5);
}

TEST_CASE("impute_apply replays frozen parameters on unseen data") {
    TempDir dir("aeids-imp");
    std::string train = dir.write("train.csv", "proto,x,label\ntcp,1,Benign\nudp,3,Replay\n");
    RawTable traw = load_csv(train, "label");
    ImputeResult fit = impute_fit_apply(traw);

    std::string test = dir.write("test.csv", "proto,x,label\nudp,,Benign\nsctp,7,Replay\n");
    NumericTable replay = impute_apply(load_csv(test, "label"), fit.params, fit.codecs);
    CHECK(replay.features(0, 0) == 1.0);  // udp kept its training code
    CHECK(replay.features(0, 1) == fit.params.fill_value[1]);
    CHECK(replay.features(1, 0) == fit.params.fill_value[0]);  // unseen category -> fill
    CHECK(replay.features(1, 1) == 7.0);
}

TEST_CASE("encode_labels binary and multiclass") {
    LabelEncoding binary = encode_labels({"Benign", "Replay"}, LabelMode::binary);
    CHECK(binary.ids == std::vector<int>{0, 1});
    CHECK(binary.class_names == std::vector<std::string>{"Benign", "Attack"});

    LabelEncoding multi = encode_labels(
        {"Benign", "De-Authentication", "Replay", "Evil Twin", "FDI"}, LabelMode::multiclass);
    CHECK(multi.class_names.size() == 5);
    CHECK(multi.class_names ==
          std::vector<std::string>{"Benign", "De-Authentication", "Evil Twin", "FDI", "Replay"});
    CHECK(multi.ids == std::vector<int>{0, 1, 4, 2, 3});

    LabelEncoding folded = encode_labels({"benign"}, LabelMode::binary);
    CHECK(folded.ids == std::vector<int>{0});

    // aliases named by the source material
    CHECK(canonical_label("DoS") == "De-Authentication");
    CHECK(canonical_label("False Data Injection") == "FDI");
    CHECK(canonical_label(" EVIL TWIN ") == "Evil Twin");

    try {
        encode_labels({"Benign", "Martian"}, LabelMode::multiclass);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("Martian") != std::string::npos);
    }
}

TEST_CASE("binary encoding agrees with benign-vs-rest over the multiclass ids") {
    std::vector<std::string> raw{"Benign", "DoS", "benign", "Replay", "FDI",
                                 "Evil Twin", "False Data Injection", "Benign"};
    LabelEncoding binary = encode_labels(raw, LabelMode::binary);
    LabelEncoding multi = encode_labels(raw, LabelMode::multiclass);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        bool is_benign = multi.class_names[static_cast<std::size_t>(multi.ids[i])] == "Benign";
        CHECK(binary.ids[i] == (is_benign ? 0 : 1));
    }
}

namespace {

FeatureTable column_table(const Vector& values) {
    FeatureTable t;
    t.features = Matrix(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) t.features(i, 0) = values[i];
    t.labels.assign(values.size(), 0);
    t.feature_names = {"x"};
    t.class_names = {"Benign"};
    return t;
}

}  // namespace

TEST_CASE("min-max scaler") {
    FeatureTable train = column_table({2, 4, 6});
    ScalerParams p = fit_scaler(train);
    FeatureTable scaled = apply_scaler(p, train);
    CHECK(scaled.features(0, 0) == 0.0);
    CHECK(scaled.features(1, 0) == 0.5);
    CHECK(scaled.features(2, 0) == 1.0);

    FeatureTable constant = column_table({7, 7});
    FeatureTable cscaled = apply_scaler(fit_scaler(constant), constant);
    CHECK(cscaled.features(0, 0) == 0.0);
    CHECK(cscaled.features(1, 0) == 0.0);

    FeatureTable test = column_table({10, 1});
    FeatureTable clamped = apply_scaler(p, test);
    CHECK(clamped.features(0, 0) == 1.0);  // above train max
    CHECK(clamped.features(1, 0) == 0.0);  // below train min
}

TEST_CASE("scaler maps its own fit data into [0,1]") {
    SeededRng rng(40);
    FeatureTable t;
    t.features = Matrix(50, 4);
    for (double& v : t.features.data) v = (rng.next_double() - 0.3) * 250.0;
    t.labels.assign(50, 0);
    FeatureTable scaled = apply_scaler(fit_scaler(t), t);
    for (double v : scaled.features.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

namespace {

FeatureTable labeled_rows(std::size_t n, const std::vector<int>& pattern) {
    FeatureTable t;
    t.features = Matrix(n, 2);
    t.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.features(i, 0) = static_cast<double>(i);
        t.features(i, 1) = static_cast<double>(i) * 0.5;
        t.labels[i] = pattern[i % pattern.size()];
    }
    t.feature_names = {"a", "b"};
    t.class_names = {"Benign", "Attack"};
    return t;
}

}  // namespace

TEST_CASE("stratified split counts and determinism") {
    FeatureTable t = labeled_rows(100, {0, 1});
    DatasetSplit s = stratified_split(t, 0.8, 1337);
    CHECK(s.train.n_rows() == 80);
    CHECK(s.test.n_rows() == 20);
    int train_zero = 0;
    for (int label : s.train.labels) train_zero += label == 0 ? 1 : 0;
    CHECK(train_zero == 40);

    DatasetSplit again = stratified_split(t, 0.8, 1337);
    CHECK(again.train.features == s.train.features);
    CHECK(again.test.features == s.test.features);
    CHECK(again.train.labels == s.train.labels);

    DatasetSplit other = stratified_split(t, 0.8, 7);
    CHECK(other.train.features != s.train.features);
}

TEST_CASE("split partitions are disjoint and cover the input") {
    FeatureTable t = labeled_rows(83, {0, 1, 1, 0, 1});
    DatasetSplit s = stratified_split(t, 0.7, 9);
    CHECK(s.train.n_rows() + s.test.n_rows() == t.n_rows());
    // the first feature is a unique row id in this fixture
    std::set<double> seen;
    for (std::size_t i = 0; i < s.train.n_rows(); ++i) seen.insert(s.train.features(i, 0));
    for (std::size_t i = 0; i < s.test.n_rows(); ++i) {
        CHECK(seen.count(s.test.features(i, 0)) == 0);
        seen.insert(s.test.features(i, 0));
    }
    CHECK(seen.size() == t.n_rows());

    // per-class train counts stay within 1 of ratio * total
    std::map<int, int> total, in_train;
    for (int label : t.labels) total[label] += 1;
    for (int label : s.train.labels) in_train[label] += 1;
    for (auto& [label, count] : total)
        CHECK(std::abs(in_train[label] - 0.7 * count) <= 1.0);
}

TEST_CASE("split rejects classes with fewer than 2 records") {
    FeatureTable t = labeled_rows(5, {0, 0, 0, 0, 1});
    CHECK_THROWS_AS(stratified_split(t, 0.8, 1), DataError);
    CHECK_THROWS_AS(stratified_split(labeled_rows(10, {0, 1}), 1.5, 1), ConfigError);
}

TEST_CASE("class proportions") {
    auto p = class_proportions({0, 0, 1, 1});
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.5);

    auto single = class_proportions({3, 3, 3});
    CHECK(single[3] == 1.0);

    // counting oracle over a random label vector
    SeededRng rng(41);
    std::vector<int> labels;
    std::map<int, int> counts;
    for (int i = 0; i < 997; ++i) {
        int label = static_cast<int>(rng.next_below(6));
        labels.push_back(label);
        counts[label] += 1;
    }
    auto got = class_proportions(labels);
    double sum = 0.0;
    for (auto& [label, fraction] : got) {
        CHECK(fraction == static_cast<double>(counts[label]) / 997.0);
        sum += fraction;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK_THROWS_AS(class_proportions({}), DataError);
}

TEST_CASE("feature csv round trip is bit exact") {
    SeededRng rng(42);
    FeatureTable t;
    t.features = Matrix(20, 3);
    for (double& v : t.features.data) v = rng.next_gaussian(3.0);
    t.features(0, 0) = 0.1;  // not exactly representable, exercises shortest form
    t.labels.resize(20);
    for (std::size_t i = 0; i < 20; ++i) t.labels[i] = static_cast<int>(i % 4);
    t.feature_names = {"alpha", "beta,comma", "gamma"};
    t.class_names = {"Benign", "De-Authentication", "Evil Twin", "FDI"};

    TempDir dir("aeids-ft");
    std::string path = dir.file("t.csv");
    write_feature_csv(path, t);
    FeatureTable back = read_feature_csv(path, t.class_names);
    CHECK(back.features == t.features);
    CHECK(back.labels == t.labels);
    CHECK(back.feature_names == t.feature_names);
}

TEST_CASE("preprocess sidecar json round trip") {
    PreprocessParams p;
    p.label_column = "Label";
    p.feature_names = {"a", "b"};
    p.class_names = {"Benign", "Replay"};
    p.codecs = {{false, {}}, {true, {"tcp", "udp"}}};
    p.impute.fill_value = {1.5, 0.0};
    p.impute.null_count = {3, 0};
    p.scaler.feature_min = {0.0, 0.0};
    p.scaler.feature_max = {9.0, 1.0};

    TempDir dir("aeids-sc");
    std::string path = dir.file("sidecar.json");
    write_preprocess_params(path, p);
    PreprocessParams back = read_preprocess_params(path);
    CHECK(back.label_column == p.label_column);
    CHECK(back.feature_names == p.feature_names);
    CHECK(back.class_names == p.class_names);
    CHECK(back.codecs[1].categories == p.codecs[1].categories);
    CHECK(back.impute.fill_value == p.impute.fill_value);
    CHECK(back.scaler.feature_max == p.scaler.feature_max);

    dir.write("broken.json", "{ not json");
    CHECK_THROWS_AS(read_preprocess_params(dir.file("broken.json")), ParseError);
}
