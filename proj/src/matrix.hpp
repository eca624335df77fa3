// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lrctl {

// Dense row-major matrix of doubles. Desk-scale sizes only; plain loops
// keep the arithmetic order fixed and the results bit-reproducible.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    double* row(std::size_t r) { return data.data() + r * cols; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }

    bool sameShape(const Matrix& other) const { return rows == other.rows && cols == other.cols; }

    bool operator==(const Matrix&) const = default;
};

inline void requireShape(const Matrix& m, std::size_t rows, std::size_t cols, const char* what)
{
    if (m.rows != rows || m.cols != cols)
        throw std::invalid_argument(std::string(what) + ": matrix shape mismatch");
}

}  // namespace lrctl
