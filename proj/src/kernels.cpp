#include "aeids/kernels.hpp"

#include <cmath>

#include "aeids/error.hpp"

namespace aeids {

namespace {

// i-k-j loop, row i of C owned by one iteration; the k order per output
// element is fixed, which keeps the OpenMP variant bit-identical to this.
void matmul_rows(const Matrix& a, const Matrix& b, Matrix& c,
                 std::size_t i_begin, std::size_t i_end) {
    for (std::size_t i = i_begin; i < i_end; ++i) {
        const double* arow = a.row(i);
        double* crow = c.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            double aik = arow[k];
            const double* brow = b.row(k);
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
        }
    }
}

void check_mul_shapes(const Matrix& a, const Matrix& b) {
    require_shape(a.cols == b.rows,
                  "matmul: inner dimensions differ (" + std::to_string(a.cols) +
                      " vs " + std::to_string(b.rows) + ")");
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_mul_shapes(a, b);
    Matrix c(a.rows, b.cols, 0.0);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(a.rows); ++i)
        matmul_rows(a, b, c, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1);
    return c;
}

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
    check_mul_shapes(a, b);
    Matrix c(a.rows, b.cols, 0.0);
    matmul_rows(a, b, c, 0, a.rows);
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

double tanh_scalar(double x) {
    // tanh(19) already rounds to 1.0 in double, and expm1(2x) would overflow
    // near x = 355, so saturate early
    if (x > 19.0) return 1.0;
    if (x < -19.0) return -1.0;
    double a = std::abs(x);
    double e = std::expm1(2.0 * a);
    double t = e / (e + 2.0);
    return x < 0.0 ? -t : t;
}

Vector tanh_map(const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = tanh_scalar(v[i]);
    return out;
}

Matrix tanh_matrix(const Matrix& m) {
    Matrix out(m.rows, m.cols);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(m.data.size()); ++i)
        out.data[static_cast<std::size_t>(i)] = tanh_scalar(m.data[static_cast<std::size_t>(i)]);
    return out;
}

Matrix tanh_matrix_serial(const Matrix& m) {
    Matrix out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) out.data[i] = tanh_scalar(m.data[i]);
    return out;
}

namespace {

void sqdist_row(const Matrix& queries, const Matrix& points, Matrix& out, std::size_t i) {
    const double* q = queries.row(i);
    for (std::size_t j = 0; j < points.rows; ++j) {
        const double* p = points.row(j);
        double acc = 0.0;
        for (std::size_t d = 0; d < queries.cols; ++d) {
            double diff = q[d] - p[d];
            acc += diff * diff;
        }
        out(i, j) = acc;
    }
}

}  // namespace

Matrix pairwise_sqdist(const Matrix& queries, const Matrix& points) {
    require_shape(queries.cols == points.cols, "pairwise_sqdist: feature dims differ");
    Matrix out(queries.rows, points.rows);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(queries.rows); ++i)
        sqdist_row(queries, points, out, static_cast<std::size_t>(i));
    return out;
}

Matrix pairwise_sqdist_serial(const Matrix& queries, const Matrix& points) {
    require_shape(queries.cols == points.cols, "pairwise_sqdist: feature dims differ");
    Matrix out(queries.rows, points.rows);
    for (std::size_t i = 0; i < queries.rows; ++i) sqdist_row(queries, points, out, i);
    return out;
}

Matrix gaussian_matrix(SeededRng& rng, std::size_t rows, std::size_t cols, double stddev) {
    if (stddev <= 0.0) throw ConfigError("gaussian_matrix: stddev must be > 0");
    Matrix m(rows, cols);
    for (double& v : m.data) v = rng.next_gaussian(stddev);
    return m;
}

}  // namespace aeids
