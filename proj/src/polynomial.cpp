#include "pottscurve/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace pottscurve {

namespace {

void trim(std::vector<Complex>& c)
{
    while (!c.empty() && c.back() == Complex(0))
        c.pop_back();
}

void check_degree(std::size_t size)
{
    if (static_cast<int>(size) - 1 > max_polynomial_degree)
        throw InvalidInput("polynomial degree exceeds " + std::to_string(max_polynomial_degree));
}

} // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs))
{
    trim(c_);
    check_degree(c_.size());
}

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : Polynomial(std::vector<Complex>(coeffs)) {}

Polynomial Polynomial::constant(const Complex& c) { return Polynomial(std::vector<Complex>{c}); }

Polynomial Polynomial::monomial(int degree, const Complex& c)
{
    std::vector<Complex> v(static_cast<std::size_t>(degree) + 1, Complex(0));
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, const Complex& leading)
{
    Polynomial p = constant(leading);
    for (const Complex& r : roots)
        p = p * Polynomial{-r, Complex(1)};
    return p;
}

Complex Polynomial::coefficient(int k) const
{
    if (k < 0 || k >= static_cast<int>(c_.size()))
        return Complex(0);
    return c_[static_cast<std::size_t>(k)];
}

Complex Polynomial::leading() const { return c_.empty() ? Complex(0) : c_.back(); }

Complex Polynomial::operator()(const Complex& z) const
{
    Complex acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative(int times) const
{
    std::vector<Complex> c = c_;
    for (int t = 0; t < times && !c.empty(); ++t) {
        std::vector<Complex> d(c.size() > 1 ? c.size() - 1 : 0);
        for (std::size_t k = 1; k < c.size(); ++k)
            d[k - 1] = c[k] * Real(static_cast<long>(k));
        c = std::move(d);
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::taylor_shift(const Complex& center) const
{
    // Repeated synthetic division by (x - center).
    std::vector<Complex> c = c_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j)
            c[j - 1] += center * c[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::reversed(int n) const
{
    if (degree() > n)
        throw InvalidInput("reversed: degree exceeds n");
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
        c[static_cast<std::size_t>(n) - k] = c_[k];
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    std::vector<Complex> c(std::max(x.size(), y.size()), Complex(0));
    for (std::size_t k = 0; k < x.size(); ++k)
        c[k] += x[k];
    for (std::size_t k = 0; k < y.size(); ++k)
        c[k] += y[k];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a) { return Complex(-1) * a; }

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return Polynomial();
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    check_degree(x.size() + y.size() - 1);
    std::vector<Complex> c(x.size() + y.size() - 1, Complex(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            c[i + j] += x[i] * y[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Complex& s, const Polynomial& a)
{
    std::vector<Complex> c = a.coefficients();
    for (auto& v : c)
        v *= s;
    return Polynomial(std::move(c));
}

bool operator==(const Polynomial& a, const Polynomial& b) { return a.coefficients() == b.coefficients(); }

Polynomial compose(const Polynomial& outer, const Polynomial& inner)
{
    Polynomial acc;
    const auto& c = outer.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * inner + Polynomial::constant(*it);
    return acc;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op)
{
    switch (op) {
    case PolyOp::add:
        return a + b;
    case PolyOp::mul:
        return a * b;
    case PolyOp::compose:
        return compose(a, b);
    }
    throw InvalidInput("poly_arith: unknown operation");
}

PolyDivision divide(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero())
        throw DivisionByZero("polynomial division by zero");
    std::vector<Complex> r = a.coefficients();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db)
        return {Polynomial(), a};
    std::vector<Complex> q(static_cast<std::size_t>(da - db) + 1, Complex(0));
    const Complex lead = b.leading();
    for (int k = da - db; k >= 0; --k) {
        const Complex f = r[static_cast<std::size_t>(k + db)] / lead;
        q[static_cast<std::size_t>(k)] = f;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(k + j)] -= f * b.coefficient(j);
    }
    r.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

} // namespace pottscurve
