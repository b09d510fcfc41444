// Compares the OpenMP kernels against their serial references: wall time,
// speedup, and a bit-equality check on every output.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aeids/kernels.hpp"
#include "aeids/rng.hpp"

using namespace aeids;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / reps;
}

void report(const std::string& name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s serial %8.4fs   openmp %8.4fs   speedup %5.2fx   bitwise %s\n",
                name.c_str(), serial_s, parallel_s, serial_s / parallel_s,
                identical ? "equal" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled, serial build\n");
#endif

    SeededRng rng(7);

    {
        // batch-forward sized product: records x features times features x units
        Matrix a = gaussian_matrix(rng, 2048, 256, 1.0);
        Matrix b = gaussian_matrix(rng, 256, 256, 1.0);
        Matrix ref, par;
        double ts = time_of([&] { ref = matmul_serial(a, b); }, 3);
        double tp = time_of([&] { par = matmul(a, b); }, 3);
        report("matmul 2048x256x256", ts, tp, ref == par);
    }
    {
        Matrix m = gaussian_matrix(rng, 4096, 512, 2.0);
        Matrix ref, par;
        double ts = time_of([&] { ref = tanh_matrix_serial(m); }, 5);
        double tp = time_of([&] { par = tanh_matrix(m); }, 5);
        report("tanh 4096x512", ts, tp, ref == par);
    }
    {
        // knn-sized distance block: queries x training points
        Matrix q = gaussian_matrix(rng, 1024, 8, 1.0);
        Matrix p = gaussian_matrix(rng, 8192, 8, 1.0);
        Matrix ref, par;
        double ts = time_of([&] { ref = pairwise_sqdist_serial(q, p); }, 3);
        double tp = time_of([&] { par = pairwise_sqdist(q, p); }, 3);
        report("sqdist 1024x8192x8", ts, tp, ref == par);
    }
    return 0;
}
