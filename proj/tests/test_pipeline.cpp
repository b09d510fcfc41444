#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "aeids/dataset.hpp"
#include "aeids/error.hpp"
#include "aeids/pipeline.hpp"
#include "aeids/synth.hpp"
#include "support/tempdir.hpp"

using namespace aeids;
using aeids::testsupport::slurp;
using aeids::testsupport::TempDir;
namespace fs = std::filesystem;

namespace {

// tight blobs: separable end to end, so metric values in tables are exact
RunConfig tiny_config(const TempDir& dir, const std::string& name) {
    SynthConfig synth;
    synth.records = 400;
    synth.noise_sigma = 0.005;
    synth.null_fraction = 0.0;
    synth.seed = 77;
    std::string dataset = dir.file(name + ".csv");
    write_synthetic_dataset(dataset, synth);

    RunConfig cfg;
    cfg.dataset_path = dataset;
    cfg.out_dir = dir.file(name + "_out");
    cfg.n_values = {2};
    cfg.ae_max_epochs = 5;
    cfg.ae_patience = 5;
    cfg.ae_batch_size = 32;
    cfg.classifiers.clear();
    for (ClassifierKind kind : {ClassifierKind::decision_tree, ClassifierKind::knn}) {
        ClassifierSpec spec;
        spec.kind = kind;
        cfg.classifiers.push_back(spec);
    }
    return cfg;
}

}  // namespace

TEST_CASE("run-all produces every artifact and a complete manifest") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "full");
    Pipeline pipeline(cfg);
    pipeline.run_all();

    for (const std::string& path :
         {pipeline.train_csv(), pipeline.test_csv(), pipeline.sidecar_json(),
          pipeline.ae_model_file(2), pipeline.loss_curve_file(2), pipeline.latent_file(2, true),
          pipeline.latent_file(2, false), pipeline.table_file(2, Task::binary),
          pipeline.table_file(2, Task::multiclass), pipeline.comparison_file(),
          pipeline.manifest_file()})
        CHECK(fs::exists(path));

    // the preprocessed tables carry all 54 features after the default drops
    PreprocessParams params = read_preprocess_params(pipeline.sidecar_json());
    CHECK(params.feature_names.size() == 54);
    CHECK(params.class_names.size() == 5);

    // every artifact the manifest lists exists and the digest matches
    std::string manifest_text = slurp(pipeline.manifest_file());
    CHECK(manifest_text.find("preprocessed/train.csv") != std::string::npos);
    CHECK(manifest_text.find("reports/report_n2_binary_dt.json") != std::string::npos);
    CHECK(manifest_text.find("\"dataset_digest\"") != std::string::npos);

    // latent tables keep the split row counts and have N feature columns
    FeatureTable latent_test = read_feature_csv(pipeline.latent_file(2, false),
                                                params.class_names);
    FeatureTable test = read_feature_csv(pipeline.test_csv(), params.class_names);
    CHECK(latent_test.features.cols == 2);
    CHECK(latent_test.n_rows() == test.n_rows());
    CHECK(latent_test.feature_names == std::vector<std::string>{"z0", "z1"});
}

TEST_CASE("full classifier roster renders five model rows") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "roster");
    cfg.classifiers = RunConfig().classifiers;  // all five kinds
    for (ClassifierSpec& spec : cfg.classifiers) {
        spec.n_trees = 15;
        spec.max_epochs = 20;
        spec.patience = 5;
    }
    cfg.tasks = {Task::binary};
    Pipeline pipeline(cfg);
    pipeline.run_all();

    std::string table = slurp(pipeline.table_file(2, Task::binary));
    std::size_t rows = 0;
    for (const std::string name : {"DT", "RF", "KNN", "MLP", "SVM"})
        rows += table.find("| " + name + " |") != std::string::npos ||
                        table.find("| **" + name + "** |") != std::string::npos
                    ? 1
                    : 0;
    CHECK(rows == 5);
    CHECK(table.find("| Model | Precision | Recall | F1-score | Accuracy |") !=
          std::string::npos);
}

TEST_CASE("rendered table matches the golden layout") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "golden");
    Pipeline pipeline(cfg);
    pipeline.run_all();

    const std::string expected =
        "# Binary classification, N=2 extracted features\n"
        "\n"
        "| Model | Precision | Recall | F1-score | Accuracy |\n"
        "|---|---|---|---|---|\n"
        "| **DT** | **100.00** | **100.00** | **100.00** | **100.00** |\n"
        "| KNN | 100.00 | 100.00 | 100.00 | 100.00 |\n";
    CHECK(slurp(pipeline.table_file(2, Task::binary)) == expected);
}

TEST_CASE("two fresh runs are byte-identical") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "det");
    Pipeline first(cfg);
    first.run_all();

    std::string manifest_a = slurp(first.manifest_file());
    std::string report_a = slurp(first.report_file(2, Task::binary, ClassifierKind::knn));
    std::string latent_a = slurp(first.latent_file(2, true));

    fs::remove_all(cfg.out_dir);
    Pipeline second(cfg);
    second.run_all();

    CHECK(slurp(second.manifest_file()) == manifest_a);
    CHECK(slurp(second.report_file(2, Task::binary, ClassifierKind::knn)) == report_a);
    CHECK(slurp(second.latent_file(2, true)) == latent_a);
}

TEST_CASE("rerun in place skips cached stages and leaves artifacts untouched") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "cache");
    Pipeline first(cfg);
    first.run_all();
    std::string manifest_a = slurp(first.manifest_file());
    auto model_time = fs::last_write_time(first.ae_model_file(2));

    Pipeline second(cfg);
    second.run_all();
    CHECK(slurp(second.manifest_file()) == manifest_a);
    CHECK(fs::last_write_time(second.ae_model_file(2)) == model_time);  // body never re-ran
}

TEST_CASE("config errors surface before training") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "badn");
    cfg.n_values = {60};  // larger than the 54 remaining features
    Pipeline pipeline(cfg);
    pipeline.preprocess();
    CHECK_THROWS_AS(pipeline.train_ae(60), ConfigError);

    RunConfig empty = cfg;
    empty.tasks.clear();
    CHECK_THROWS_AS(Pipeline{empty}, ConfigError);

    RunConfig bad_ratio = cfg;
    bad_ratio.split_ratio = 1.2;
    CHECK_THROWS_AS(Pipeline{bad_ratio}, ConfigError);
}

TEST_CASE("missing dataset and missing label column are data errors") {
    TempDir dir("aeids-pipe");
    RunConfig cfg;
    cfg.dataset_path = dir.file("absent.csv");
    cfg.out_dir = dir.file("out");
    Pipeline pipeline(cfg);
    CHECK_THROWS_AS(pipeline.preprocess(), FileError);

    dir.write("nolabel.csv", "a,b\n1,2\n3,4\n");
    RunConfig cfg2;
    cfg2.dataset_path = dir.file("nolabel.csv");
    cfg2.out_dir = dir.file("out2");
    Pipeline pipeline2(cfg2);
    CHECK_THROWS_AS(pipeline2.preprocess(), SchemaError);
}

TEST_CASE("comparison table consumes the baselines file") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "cmp");
    cfg.baselines_path = dir.file("baselines.csv");
    dir.write("baselines.csv",
              "method,task,n,precision,recall,f1,accuracy\n"
              "SVM-SHAP,multiclass,2,75.66,67.55,71.38,66.98\n"
              "FNN-SHAP,multiclass,2,78.32,79.30,78.81,71.64\n");
    Pipeline pipeline(cfg);
    pipeline.run_all();

    std::string table = slurp(pipeline.comparison_file());
    CHECK(table.find("| FNN-SHAP | 78.32 | 79.30 | 78.81 | 71.64 |") != std::string::npos);
    CHECK(table.find("| SVM-SHAP") != std::string::npos);
    CHECK(table.find("| Proposed autoencoder (DT)") != std::string::npos);
}

TEST_CASE("missing baselines file yields a proposed-only table") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "nobase");
    cfg.baselines_path = dir.file("never_written.csv");
    Pipeline pipeline(cfg);
    pipeline.run_all();
    std::string table = slurp(pipeline.comparison_file());
    CHECK(table.find("Proposed autoencoder") != std::string::npos);
    CHECK(table.find("SHAP") == std::string::npos);
}

TEST_CASE("malformed baselines rows name the offending line") {
    TempDir dir("aeids-pipe");
    std::string path = dir.write("bad.csv",
                                 "method,task,n,precision,recall,f1,accuracy\n"
                                 "SVM-SHAP,multiclass,4,75.66,67.55,71.38,66.98\n"
                                 "FNN-SHAP,multiclass,four,78.32,79.30,78.81,71.64\n");
    try {
        read_baselines(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    CHECK_THROWS_AS(read_baselines(dir.write("hdr.csv", "method,task\nx,y\n")), ParseError);
}

TEST_CASE("run config json round trip") {
    TempDir dir("aeids-pipe");
    RunConfig cfg;
    cfg.dataset_path = "somewhere.csv";
    cfg.seed = 42;
    cfg.n_values = {3, 9};
    cfg.tasks = {Task::multiclass};
    cfg.classifiers.resize(2);
    cfg.classifiers[0].kind = ClassifierKind::knn;
    cfg.classifiers[0].neighbors = 7;
    cfg.classifiers[1].kind = ClassifierKind::svm;
    cfg.classifiers[1].svm_c = 2.5;

    std::string path = dir.write("config.json", cfg.to_json());
    RunConfig back = RunConfig::from_json_file(path);
    CHECK(back.dataset_path == cfg.dataset_path);
    CHECK(back.seed == 42);
    CHECK(back.n_values == cfg.n_values);
    REQUIRE(back.tasks.size() == 1);
    CHECK(back.tasks[0] == Task::multiclass);
    REQUIRE(back.classifiers.size() == 2);
    CHECK(back.classifiers[0].neighbors == 7);
    CHECK(back.classifiers[1].svm_c == 2.5);

    dir.write("bad.json", "{\"version\": 7}");
    CHECK_THROWS_AS(RunConfig::from_json_file(dir.file("bad.json")), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json_file(dir.file("missing.json")), ConfigError);
}

TEST_CASE("preprocessing pipeline is idempotent on its own output") {
    TempDir dir("aeids-pipe");
    RunConfig cfg = tiny_config(dir, "idem");
    Pipeline pipeline(cfg);
    pipeline.preprocess();
    std::string train_a = slurp(pipeline.train_csv());
    std::string sidecar_a = slurp(pipeline.sidecar_json());

    fs::remove_all(cfg.out_dir);
    Pipeline again(cfg);
    again.preprocess();
    CHECK(slurp(again.train_csv()) == train_a);
    CHECK(slurp(again.sidecar_json()) == sidecar_a);

    // scaled training features live in [0,1]
    PreprocessParams params = read_preprocess_params(again.sidecar_json());
    FeatureTable train = read_feature_csv(again.train_csv(), params.class_names);
    for (double v : train.features.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}
