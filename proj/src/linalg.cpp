#include "pottscurve/linalg.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace pottscurve {

namespace {

using EMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using EVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

EMatrix to_eigen(const Matrix& a)
{
    EMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    return m;
}

Real rank_threshold()
{
    // Pivots below this fraction of the largest one count as zero.
    return boost::multiprecision::pow(epsilon(), Real(3) / 4);
}

} // namespace

LinearSolve least_squares(const Matrix& a, const Vector& b)
{
    if (b.size() != a.rows())
        throw InvalidInput("least_squares: dimension mismatch");
    EMatrix m = to_eigen(a);
    EVector rhs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        rhs(i) = b[i];
    Eigen::ColPivHouseholderQR<EMatrix> qr(m);
    qr.setThreshold(rank_threshold());
    EVector x = qr.solve(rhs);
    LinearSolve out;
    out.rank = static_cast<std::size_t>(qr.rank());
    out.x.assign(x.data(), x.data() + x.size());
    return out;
}

Vector solve_square(const Matrix& a, const Vector& b)
{
    if (a.rows() != a.cols())
        throw InvalidInput("solve_square: matrix is not square");
    LinearSolve s = least_squares(a, b);
    if (s.rank < a.cols())
        throw SingularJacobian("linear system is rank deficient (rank " + std::to_string(s.rank) + " of " +
                               std::to_string(a.cols()) + ")");
    return s.x;
}

Vector singular_values(const Matrix& a)
{
    Eigen::JacobiSVD<EMatrix> svd(to_eigen(a));
    const EVector& s = svd.singularValues();
    return Vector(s.data(), s.data() + s.size());
}

Complex determinant(std::vector<Complex> m, std::size_t n)
{
    if (m.size() != n * n)
        throw InvalidInput("determinant: dimension mismatch");
    Complex det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = abs2(m[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs2(m[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0)
            return Complex(0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m[k * n + j], m[piv * n + j]);
            det = -det;
        }
        const Complex p = m[k * n + k];
        det *= p;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = m[i * n + k] / p;
            if (f == Complex(0))
                continue;
            for (std::size_t j = k + 1; j < n; ++j)
                m[i * n + j] -= f * m[k * n + j];
        }
    }
    return det;
}

Real norm_inf(const Vector& v)
{
    Real r = 0;
    for (const Real& x : v)
        if (abs(x) > r)
            r = abs(x);
    return r;
}

Real norm2(const Vector& v)
{
    Real r = 0;
    for (const Real& x : v)
        r += x * x;
    return sqrt(r);
}

} // namespace pottscurve
