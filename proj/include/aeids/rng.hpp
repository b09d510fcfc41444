#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace aeids {

// Deterministic xoshiro256** generator seeded through splitmix64. The integer
// stream is fixed by the seed alone; the platform default engine is never
// used so runs reproduce everywhere.
//
// An instance is single-owner: parallel callers split seeds with derive_seed
// instead of sharing one generator.
class SeededRng {
 public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    // uniform in [0,1), 53-bit resolution
    double next_double();

    // uniform in [0,n), rejection sampling, exact for every n >= 1
    std::uint64_t next_below(std::uint64_t n);

    // zero-mean gaussian via the Marsaglia polar method
    double next_gaussian(double stddev);

    // deterministic Fisher-Yates
    template <class T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i + 1));
            std::swap(v[i], v[j]);
        }
    }

 private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Stable child seed for stream `index` of `base`. Used to hand independent
// generators to per-tree / per-epoch / per-stage work.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace aeids
