#pragma once

#include "pottscurve/numeric.hpp"

#include <cstddef>
#include <vector>

namespace pottscurve {

using Vector = std::vector<Real>;

// Row-major dense matrix. Kept free of Eigen so only linalg.cpp pays the
// template cost of Eigen over mpfr.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Real(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Real& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Real> a_;
};

struct LinearSolve {
    Vector x;
    std::size_t rank = 0;
};

// Least-squares solution of A x = b by column-pivoted QR. Works for square
// and overdetermined systems; the numerical rank is reported.
LinearSolve least_squares(const Matrix& a, const Vector& b);

// Square solve; throws SingularJacobian when A is numerically rank deficient.
Vector solve_square(const Matrix& a, const Vector& b);

// Descending singular values.
Vector singular_values(const Matrix& a);

// Determinant of an n x n complex matrix (row-major) by partial-pivot LU.
Complex determinant(std::vector<Complex> m, std::size_t n);

Real norm_inf(const Vector& v);
Real norm2(const Vector& v);

} // namespace pottscurve
