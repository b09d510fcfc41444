#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "aeids/error.hpp"

namespace aeids {

using Vector = std::vector<double>;

// Dense row-major matrix of 64-bit floats. Small-data substrate: no views,
// no strides, value semantics everywhere.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }

    bool is_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }

    Vector row_vector(std::size_t i) const {
        return Vector(row(i), row(i) + cols);
    }

    bool operator==(const Matrix& other) const = default;
};

inline void require_shape(bool ok, const std::string& msg) {
    if (!ok) throw ShapeError(msg);
}

}  // namespace aeids
