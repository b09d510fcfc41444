#include "aeids/synth.hpp"

#include <fstream>
#include <vector>

#include "aeids/csv.hpp"
#include "aeids/error.hpp"
#include "aeids/kernels.hpp"
#include "aeids/matrix.hpp"
#include "aeids/rng.hpp"

namespace aeids {

void write_synthetic_dataset(const std::string& path, const SynthConfig& config) {
    static const char* kClasses[5] = {"Benign", "De-Authentication", "Replay", "Evil Twin",
                                      "FDI"};
    // benign-heavy mix, roughly like captured traffic
    static const double kWeights[5] = {0.40, 0.20, 0.15, 0.15, 0.10};

    SeededRng rng(config.seed);
    std::vector<Vector> centers(5, Vector(config.features));
    for (auto& center : centers)
        for (double& c : center) c = rng.next_double();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");

    std::vector<std::string> header;
    header.push_back("frame.number");
    for (std::size_t f = 0; f < config.features; ++f) {
        char name[16];
        std::snprintf(name, sizeof(name), "f%02zu", f);
        header.push_back(name);
    }
    header.push_back("wlan.bssid");
    header.push_back("timestamp_c");
    header.push_back("Label");
    out << csv_join(header) << '\n';

    std::vector<std::string> fields(header.size());
    for (std::size_t r = 0; r < config.records; ++r) {
        double pick = rng.next_double();
        std::size_t cls = 0;
        double acc = 0.0;
        for (std::size_t c = 0; c < 5; ++c) {
            acc += kWeights[c];
            if (pick < acc) {
                cls = c;
                break;
            }
        }

        fields[0] = std::to_string(r + 1);
        for (std::size_t f = 0; f < config.features; ++f) {
            if (rng.next_double() < config.null_fraction) {
                fields[1 + f].clear();  // missing cell
                continue;
            }
            double v = centers[cls][f] + rng.next_gaussian(config.noise_sigma);
            fields[1 + f] = format_double(v);
        }
        char mac[18];
        std::snprintf(mac, sizeof(mac), "aa:bb:cc:%02x:%02x:%02x",
                      static_cast<unsigned>(rng.next_below(4)),
                      static_cast<unsigned>(rng.next_below(256)),
                      static_cast<unsigned>(rng.next_below(256)));
        fields[1 + config.features] = mac;
        fields[2 + config.features] = format_double(1700000000.0 + static_cast<double>(r) * 0.01);
        fields[3 + config.features] = kClasses[cls];
        out << csv_join(fields) << '\n';
    }
    if (!out) throw FileError("write to '" + path + "' failed");
}

}  // namespace aeids
