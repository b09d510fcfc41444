#pragma once

#include <cstddef>

#include "aeids/matrix.hpp"
#include "aeids/rng.hpp"

namespace aeids {

// Dense kernels backing the learning code. Each hot kernel comes in two
// flavours: the OpenMP one used everywhere, and a plain serial reference the
// tests compare against. Parallel loops only split work across independent
// output elements and never reorder per-element accumulation, so both
// flavours produce bit-identical results for any thread count.

// C = A * B; requires a.cols == b.rows
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_serial(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

// elementwise tanh
Matrix tanh_matrix(const Matrix& m);
Matrix tanh_matrix_serial(const Matrix& m);

// squared Euclidean distances, out(i, j) = ||queries[i] - points[j]||^2
Matrix pairwise_sqdist(const Matrix& queries, const Matrix& points);
Matrix pairwise_sqdist_serial(const Matrix& queries, const Matrix& points);

// Overflow-safe tanh: sign-folded expm1 form, exact saturation for large |x|.
double tanh_scalar(double x);
Vector tanh_map(const Vector& v);

// i.i.d. zero-mean gaussian entries, deterministic per rng state
Matrix gaussian_matrix(SeededRng& rng, std::size_t rows, std::size_t cols, double stddev);

}  // namespace aeids
