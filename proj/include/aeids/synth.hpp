#pragma once

#include <cstdint>
#include <string>

namespace aeids {

// Gaussian-blob fixture shaped like the raw capture CSV: 54 informative
// numeric columns, the three droppable capture columns (frame.number,
// wlan.bssid, timestamp_c), a sprinkle of nulls, and the five canonical
// class labels. Used by the demos and the end-to-end tests.
struct SynthConfig {
    std::size_t records = 10000;
    std::size_t features = 54;
    double noise_sigma = 0.06;
    double null_fraction = 0.001;
    std::uint64_t seed = 1;
};

void write_synthetic_dataset(const std::string& path, const SynthConfig& config);

}  // namespace aeids
