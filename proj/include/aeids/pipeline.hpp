#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aeids/classifiers.hpp"
#include "aeids/metrics.hpp"

namespace aeids {

enum class Task { binary, multiclass };

std::string task_name(Task task);
Task task_from_name(const std::string& name);  // throws ConfigError

// Everything a run needs; every field has a default and can be overridden by
// the JSON config file and the CLI flags.
struct RunConfig {
    std::string dataset_path = "data/uav_cyber.csv";
    std::string label_column = "Label";
    std::vector<std::string> drop_list = {"frame.number", "wlan.bssid", "timestamp_c"};
    double split_ratio = 0.8;
    std::uint64_t seed = 1337;

    double ae_learning_rate = 1e-3;
    std::size_t ae_batch_size = 64;
    std::size_t ae_max_epochs = 200;
    std::size_t ae_patience = 10;
    double ae_val_fraction = 0.1;

    std::vector<ClassifierSpec> classifiers;  // defaults to all five kinds
    std::vector<Task> tasks = {Task::binary, Task::multiclass};
    std::vector<std::size_t> n_values = {4, 8};

    std::string out_dir = "out";
    std::string baselines_path;  // optional comparison numbers
    bool save_classifiers = false;

    RunConfig();

    static RunConfig from_json_file(const std::string& path);
    std::string to_json() const;  // canonical snapshot (also the digest input)
    void validate() const;
};

// One row of the user-supplied baselines CSV
// (method,task,n,precision,recall,f1,accuracy; metrics in percent).
struct BaselineRow {
    std::string method;
    Task task = Task::binary;
    std::size_t n = 0;
    double precision = 0, recall = 0, f1 = 0, accuracy = 0;
};

std::vector<BaselineRow> read_baselines(const std::string& path);

// Orchestrates the staged workflow: preprocess -> per-N (train-ae ->
// extract -> train-eval per task) -> compare. Stages are cached by input
// digest and every artifact lands in the manifest. All artifacts are
// deterministic functions of (dataset bytes, config).
class Pipeline {
 public:
    explicit Pipeline(RunConfig config);

    void preprocess();
    void train_ae(std::size_t n);
    void extract(std::size_t n);
    void train_eval(std::size_t n, Task task);
    void compare();
    void run_all();

    const RunConfig& config() const { return config_; }

    // repo-relative artifact paths
    std::string train_csv() const;
    std::string test_csv() const;
    std::string sidecar_json() const;
    std::string ae_model_file(std::size_t n) const;
    std::string loss_curve_file(std::size_t n) const;
    std::string latent_file(std::size_t n, bool train) const;
    std::string report_file(std::size_t n, Task task, ClassifierKind kind) const;
    std::string table_file(std::size_t n, Task task) const;
    std::string comparison_file() const;
    std::string manifest_file() const;

 private:
    struct StageOutcome {
        bool skipped = false;
    };

    StageOutcome run_stage(const std::string& stage, const std::string& input_digest,
                           const std::vector<std::string>& outputs,
                           const std::function<void()>& body);
    void record_artifacts(const std::string& stage, const std::vector<std::string>& outputs);
    void write_manifest();
    std::string out_path(const std::string& relative) const;

    RunConfig config_;
    // stage -> input digest, persisted as cache.json in the output directory
    std::map<std::string, std::string> cache_;
    // relative path -> (stage, sha256), persisted as manifest.json
    std::map<std::string, std::pair<std::string, std::string>> artifacts_;
    std::map<std::string, double> timings_;
    std::string dataset_digest_;
};

}  // namespace aeids
