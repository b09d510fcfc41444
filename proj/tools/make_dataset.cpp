// Writes the synthetic gaussian-blob capture CSV used by the demos.

#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "aeids/error.hpp"
#include "aeids/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic 5-class UAV-traffic-shaped CSV"};
    std::string out = "synthetic.csv";
    aeids::SynthConfig config;
    app.add_option("--out", out, "output CSV path");
    app.add_option("--records", config.records, "number of records");
    app.add_option("--features", config.features, "informative feature count");
    app.add_option("--noise", config.noise_sigma, "per-feature gaussian noise");
    app.add_option("--nulls", config.null_fraction, "fraction of cells left empty");
    app.add_option("--seed", config.seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    try {
        aeids::write_synthetic_dataset(out, config);
        std::cout << "wrote " << config.records << " records to " << out << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
