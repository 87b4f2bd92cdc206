#include "pottscurve/curve.hpp"

namespace pottscurve {

namespace {

// Sylvester matrix of p (degree m) and q (degree n), both given by ascending
// coefficient vectors padded to their nominal degree.
std::vector<Complex> sylvester(const std::vector<Complex>& p, const std::vector<Complex>& q)
{
    const std::size_t m = p.size() - 1, n = q.size() - 1, size = m + n;
    std::vector<Complex> s(size * size, Complex(0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k)
            s[r * size + r + k] = p[m - k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k)
            s[(n + r) * size + r + k] = q[n - k];
    return s;
}

// Coefficients of value * den - num, padded to degree d.
std::vector<Complex> relation(const Complex& value, const Polynomial& num, const Polynomial& den, int d)
{
    std::vector<Complex> c(static_cast<std::size_t>(d + 1), Complex(0));
    for (int k = 0; k <= d; ++k)
        c[static_cast<std::size_t>(k)] = value * den.coefficient(k) - num.coefficient(k);
    return c;
}

std::vector<Complex> unit_roots(int n)
{
    std::vector<Complex> w;
    for (int k = 0; k < n; ++k) {
        const Real t = 2 * pi() * Real(k) / Real(n);
        w.emplace_back(cos(t), sin(t));
    }
    return w;
}

Real binomial(int n, int k)
{
    Real r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * Real(n - k + i) / Real(i);
    return r;
}

} // namespace

Complex SpectralCurve::operator()(const Complex& x3, const Complex& xp) const
{
    Complex sum(0);
    for (int j = degree_x3; j >= 0; --j) {
        Complex row(0);
        for (int l = degree_x_plus; l >= 0; --l)
            row = row * xp + q[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
        sum = sum * x3 + row;
    }
    return sum;
}

Real SpectralCurve::scaled_residual(const Complex& x3, const Complex& xp) const
{
    Real scale = 0;
    const Real a3 = cabs(x3), ap = cabs(xp);
    Real p3 = 1;
    for (int j = 0; j <= degree_x3; ++j) {
        Real pp = 1;
        for (int l = 0; l <= degree_x_plus; ++l) {
            scale += cabs(q[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]) * p3 * pp;
            pp *= ap;
        }
        p3 *= a3;
    }
    if (scale == 0)
        return Real(0);
    return cabs((*this)(x3, xp)) / scale;
}

std::vector<std::vector<Complex>> SpectralCurve::taylor(const Complex& x3c, const Complex& xpc) const
{
    std::vector<std::vector<Complex>> t(static_cast<std::size_t>(degree_x3 + 1),
                                        std::vector<Complex>(static_cast<std::size_t>(degree_x_plus + 1), Complex(0)));
    std::vector<Complex> p3{Complex(1)}, pp{Complex(1)};
    for (int j = 1; j <= degree_x3; ++j)
        p3.push_back(p3.back() * x3c);
    for (int l = 1; l <= degree_x_plus; ++l)
        pp.push_back(pp.back() * xpc);
    for (int j = 0; j <= degree_x3; ++j)
        for (int l = 0; l <= degree_x_plus; ++l) {
            const Complex c = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
            if (c == Complex(0))
                continue;
            for (int n = 0; n <= j; ++n)
                for (int m = 0; m <= l; ++m)
                    t[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] +=
                        c * Complex(binomial(j, n) * binomial(l, m)) * p3[static_cast<std::size_t>(j - n)] *
                        pp[static_cast<std::size_t>(l - m)];
        }
    return t;
}

SpectralCurve implicitize(const RationalFunction& x_plus, const RationalFunction& x3)
{
    const Polynomial& n1 = x_plus.numerator();
    const Polynomial& d1 = x_plus.denominator();
    const Polynomial& n2 = x3.numerator();
    const Polynomial& d2 = x3.denominator();
    const int m = std::max(n1.degree(), d1.degree());
    const int n = std::max(n2.degree(), d2.degree());
    if (m < 1 || n < 1)
        throw InvalidInput("implicitize: constant parametrization");
    // Res_z is a polynomial of degree <= m in x3 and <= n in x+; sample it on
    // roots of unity and invert the discrete Fourier transform.
    const int s3 = m + 1, sp = n + 1;
    const std::vector<Complex> w3 = unit_roots(s3), wp = unit_roots(sp);
    std::vector<std::vector<Complex>> values(static_cast<std::size_t>(s3), std::vector<Complex>(static_cast<std::size_t>(sp)));
    for (int a = 0; a < s3; ++a)
        for (int b = 0; b < sp; ++b) {
            const std::vector<Complex> p1 = relation(wp[static_cast<std::size_t>(b)], n1, d1, m);
            const std::vector<Complex> p2 = relation(w3[static_cast<std::size_t>(a)], n2, d2, n);
            values[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                determinant(sylvester(p1, p2), static_cast<std::size_t>(m + n));
        }
    SpectralCurve c;
    c.q.assign(static_cast<std::size_t>(s3), std::vector<Complex>(static_cast<std::size_t>(sp), Complex(0)));
    Real largest = 0;
    for (int j = 0; j < s3; ++j)
        for (int l = 0; l < sp; ++l) {
            Complex sum(0);
            for (int a = 0; a < s3; ++a)
                for (int b = 0; b < sp; ++b)
                    sum += values[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
                           std::conj(w3[static_cast<std::size_t>(a * j % s3)] * wp[static_cast<std::size_t>(b * l % sp)]);
            sum /= Complex(Real(s3 * sp));
            c.q[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] = sum;
            largest = std::max(largest, cabs(sum));
        }
    if (largest == 0)
        throw NotInvertible("implicitize: resultant vanishes identically");
    // Round-off from the transform is zeroed so that measured degrees are exact.
    const Real floor = largest * pow(epsilon(), Real("0.75"));
    c.degree_x3 = -1;
    c.degree_x_plus = -1;
    for (int j = 0; j < s3; ++j)
        for (int l = 0; l < sp; ++l) {
            Complex& v = c.q[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
            if (cabs(v) <= floor) {
                v = Complex(0);
                continue;
            }
            c.degree_x3 = std::max(c.degree_x3, j);
            c.degree_x_plus = std::max(c.degree_x_plus, l);
        }
    // Normalize to be monic in x3. A leading coefficient depending on x+
    // signals a spurious factor the elimination could not remove.
    const auto& lead = c.q[static_cast<std::size_t>(c.degree_x3)];
    for (int l = 1; l < sp; ++l)
        if (lead[static_cast<std::size_t>(l)] != Complex(0))
            throw OrderMismatch("implicitize: leading coefficient in x3 depends on x+");
    const Complex norm = lead[0];
    c.q.resize(static_cast<std::size_t>(c.degree_x3 + 1));
    for (auto& row : c.q) {
        row.resize(static_cast<std::size_t>(c.degree_x_plus + 1));
        for (Complex& v : row)
            v /= norm;
    }
    return c;
}

SpectralCurve implicitize(const RationalParametrization& p)
{
    p.validate();
    return implicitize(p.x_plus(), p.x3());
}

} // namespace pottscurve
