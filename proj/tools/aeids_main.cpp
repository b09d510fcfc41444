// CLI for the autoencoder + classical-classifier intrusion-detection
// pipeline. Subcommands mirror the pipeline stages; run-all chains them.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aeids/error.hpp"
#include "aeids/pipeline.hpp"
#include "aeids/version.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,    // bad flags or config
    kData = 2,     // unreadable/malformed data or artifacts
    kTraining = 3  // training aborted
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autoencoder feature extraction + classical classifiers for UAV traffic"};
    app.set_version_flag("--version", aeids::kVersion);
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    long long n_override = -1;
    std::string task_override;

    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides config)");
    app.add_option("--n", n_override, "restrict to one bottleneck width");
    app.add_option("--task", task_override, "restrict to one task (binary|multiclass)");

    auto* cmd_preprocess =
        app.add_subcommand("preprocess", "clean, encode, split, and scale the dataset");
    auto* cmd_train_ae = app.add_subcommand("train-ae", "train the autoencoder per N");
    auto* cmd_extract = app.add_subcommand("extract", "write latent features per N");
    auto* cmd_train_eval =
        app.add_subcommand("train-eval", "train the classifiers and evaluate per N and task");
    auto* cmd_compare = app.add_subcommand("compare", "render the baseline comparison table");
    auto* cmd_run_all = app.add_subcommand("run-all", "execute every stage in order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        aeids::RunConfig config = config_path.empty()
                                      ? aeids::RunConfig()
                                      : aeids::RunConfig::from_json_file(config_path);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (seed_opt->count() > 0) config.seed = seed;
        if (n_override >= 0) config.n_values = {static_cast<std::size_t>(n_override)};
        if (!task_override.empty()) config.tasks = {aeids::task_from_name(task_override)};

        aeids::Pipeline pipeline(config);
        if (cmd_preprocess->parsed()) {
            pipeline.preprocess();
        } else if (cmd_train_ae->parsed()) {
            pipeline.preprocess();  // no-op when cached
            for (std::size_t n : config.n_values) pipeline.train_ae(n);
        } else if (cmd_extract->parsed()) {
            for (std::size_t n : config.n_values) pipeline.extract(n);
        } else if (cmd_train_eval->parsed()) {
            for (std::size_t n : config.n_values)
                for (aeids::Task task : config.tasks) pipeline.train_eval(n, task);
        } else if (cmd_compare->parsed()) {
            pipeline.compare();
        } else if (cmd_run_all->parsed()) {
            pipeline.run_all();
        }
        return kOk;
    } catch (const aeids::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const aeids::TrainError& e) {
        std::cerr << "training error: " << e.what() << '\n';
        return kTraining;
    } catch (const aeids::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
