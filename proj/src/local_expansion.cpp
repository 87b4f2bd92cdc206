#include "pottscurve/algebra.hpp"

#include <algorithm>

namespace pottscurve {

namespace {

void require_compatible(const LocalExpansion& a, const LocalExpansion& b)
{
    const auto& ca = a.center();
    const auto& cb = b.center();
    if (ca.infinite != cb.infinite || (!ca.infinite && ca.value != cb.value) || a.ramification() != b.ramification())
        throw InvalidInput("series arithmetic on expansions at different centers");
}

// Leading coefficient must be nonzero for division-like operations.
const Complex& lead_of(const LocalExpansion& a, const char* what)
{
    if (a.coefficients().empty() || a.coefficients().front() == Complex(0))
        throw DivisionByZero(std::string(what) + ": leading coefficient is zero");
    return a.coefficients().front();
}

LocalExpansion plus_scalar(const LocalExpansion& a, const Complex& s)
{
    if (a.truncation() < 0)
        return a;
    const int lo = std::min(a.leading_order(), 0);
    std::vector<Complex> c(static_cast<std::size_t>(a.truncation() - lo + 1), Complex(0));
    for (std::size_t j = 0; j < a.coefficients().size(); ++j)
        c[static_cast<std::size_t>(a.leading_order() - lo) + j] = a.coefficients()[j];
    c[static_cast<std::size_t>(-lo)] += s;
    return LocalExpansion(a.center(), lo, std::move(c), a.ramification());
}

} // namespace

LocalExpansion::LocalExpansion(SpherePoint center, int leading, std::vector<Complex> coeffs, int ramification)
    : center_(center), leading_(leading), c_(std::move(coeffs)), ram_(ramification)
{
    if (ram_ < 1)
        throw InvalidInput("ramification must be positive");
}

Complex LocalExpansion::coefficient(int exponent) const
{
    const int j = exponent - leading_;
    if (j < 0 || j >= static_cast<int>(c_.size()))
        return Complex(0);
    return c_[static_cast<std::size_t>(j)];
}

Complex LocalExpansion::sum(const Complex& t) const
{
    const Complex sigma = (ram_ == 1) ? t : std::pow(t, Complex(Real(1) / ram_));
    Complex acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * sigma + *it;
    if (leading_ != 0)
        acc *= std::pow(sigma, leading_);
    return acc;
}

Complex LocalExpansion::sum_at(const Complex& z) const
{
    return sum(center_.infinite ? Complex(1) / z : z - center_.value);
}

LocalExpansion LocalExpansion::truncated(int exponent) const
{
    std::vector<Complex> c = c_;
    const int keep = exponent - leading_ + 1;
    if (keep < static_cast<int>(c.size()))
        c.resize(static_cast<std::size_t>(std::max(keep, 0)));
    return LocalExpansion(center_, leading_, std::move(c), ram_);
}

LocalExpansion LocalExpansion::normalized(const Real& tol) const
{
    std::size_t skip = 0;
    while (skip < c_.size() && cabs(c_[skip]) <= tol)
        ++skip;
    return LocalExpansion(center_, leading_ + static_cast<int>(skip),
                          std::vector<Complex>(c_.begin() + static_cast<long>(skip), c_.end()), ram_);
}

LocalExpansion operator+(const LocalExpansion& a, const LocalExpansion& b)
{
    require_compatible(a, b);
    const int lo = std::min(a.leading_order(), b.leading_order());
    const int hi = std::min(a.truncation(), b.truncation());
    std::vector<Complex> c(static_cast<std::size_t>(std::max(hi - lo + 1, 0)), Complex(0));
    for (int e = lo; e <= hi; ++e)
        c[static_cast<std::size_t>(e - lo)] = a.coefficient(e) + b.coefficient(e);
    return LocalExpansion(a.center(), lo, std::move(c), a.ramification());
}

LocalExpansion operator*(const Complex& s, const LocalExpansion& a)
{
    std::vector<Complex> c = a.coefficients();
    for (auto& v : c)
        v *= s;
    return LocalExpansion(a.center(), a.leading_order(), std::move(c), a.ramification());
}

LocalExpansion operator-(const LocalExpansion& a, const LocalExpansion& b) { return a + Complex(-1) * b; }

LocalExpansion operator*(const LocalExpansion& a, const LocalExpansion& b)
{
    require_compatible(a, b);
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    const std::size_t n = std::min(x.size(), y.size());
    std::vector<Complex> c(n, Complex(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j)
            c[i + j] += x[i] * y[j];
    return LocalExpansion(a.center(), a.leading_order() + b.leading_order(), std::move(c), a.ramification());
}

LocalExpansion inverse(const LocalExpansion& a)
{
    const Complex a0 = lead_of(a, "inverse");
    const auto& x = a.coefficients();
    const std::size_t n = x.size();
    std::vector<Complex> c(n, Complex(0));
    c[0] = Complex(1) / a0;
    for (std::size_t k = 1; k < n; ++k) {
        Complex s(0);
        for (std::size_t j = 1; j <= k; ++j)
            s += x[j] * c[k - j];
        c[k] = -s * c[0];
    }
    return LocalExpansion(a.center(), -a.leading_order(), std::move(c), a.ramification());
}

LocalExpansion power(const LocalExpansion& a, int n)
{
    if (n < 0)
        return power(inverse(a), -n);
    const std::size_t len = a.coefficients().size();
    LocalExpansion result(a.center(), 0, std::vector<Complex>(len, Complex(0)), a.ramification());
    if (len > 0) {
        std::vector<Complex> one(len, Complex(0));
        one[0] = Complex(1);
        result = LocalExpansion(a.center(), 0, std::move(one), a.ramification());
    }
    LocalExpansion base = a;
    while (n > 0) {
        if (n & 1)
            result = result * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return result;
}

LocalExpansion root(const LocalExpansion& a, int n, int branch)
{
    if (n < 1)
        throw InvalidInput("root: order must be positive");
    const Complex a0 = lead_of(a, "root");
    if (a.leading_order() % n != 0)
        throw InvalidInput("root: valuation not divisible by the root order");
    const auto& x = a.coefficients();
    const std::size_t len = x.size();
    const Real alpha = Real(1) / n;
    std::vector<Complex> c(len, Complex(0));
    const Real ang = 2 * pi() * branch / n;
    c[0] = std::pow(a0, Complex(alpha)) * Complex(cos(ang), sin(ang));
    // Miller's recurrence for f^alpha.
    for (std::size_t k = 1; k < len; ++k) {
        Complex s(0);
        for (std::size_t j = 1; j <= k; ++j)
            s += ((alpha + 1) * Real(static_cast<long>(j)) - Real(static_cast<long>(k))) * x[j] * c[k - j];
        c[k] = s / (Real(static_cast<long>(k)) * a0);
    }
    return LocalExpansion(a.center(), a.leading_order() / n, std::move(c), a.ramification());
}

LocalExpansion apply(const Polynomial& p, const LocalExpansion& a)
{
    const auto& c = p.coefficients();
    if (c.size() <= 1) {
        // A constant is exact; give it the same reach as the argument.
        std::vector<Complex> v(static_cast<std::size_t>(std::max(a.truncation(), 0)) + 1, Complex(0));
        if (!c.empty())
            v[0] = c[0];
        return LocalExpansion(a.center(), 0, std::move(v), a.ramification());
    }
    LocalExpansion acc = plus_scalar(c.back() * a, c[c.size() - 2]);
    for (std::size_t k = c.size() - 2; k-- > 0;)
        acc = plus_scalar(acc * a, c[k]);
    return acc;
}

LocalExpansion compose(const LocalExpansion& outer, const LocalExpansion& inner)
{
    if (outer.ramification() != 1)
        throw InvalidInput("compose: outer series must be unramified");
    if (inner.leading_order() < 1 || inner.coefficients().empty())
        throw InvalidInput("compose: inner series must vanish at the center");
    // outer = w^L * Q(w) + O(w^(L+n)); Q(inner) is known through t^(m*n - 1).
    const auto& c = outer.coefficients();
    const int n = static_cast<int>(c.size());
    const int m = inner.leading_order();
    LocalExpansion body = apply(Polynomial(std::vector<Complex>(c.begin(), c.end())), inner);
    body = body.truncated(std::min(body.truncation(), m * n - 1));
    if (outer.leading_order() != 0)
        body = power(inner, outer.leading_order()) * body;
    return body;
}

LocalExpansion derivative(const LocalExpansion& a)
{
    const int r = a.ramification();
    std::vector<Complex> c = a.coefficients();
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] *= Real(a.leading_order() + static_cast<int>(j)) / r;
    LocalExpansion d(a.center(), a.leading_order() - r, std::move(c), r);
    if (a.center().infinite)
        throw InvalidInput("derivative: expansions at infinity differentiate in t = 1/z; use the rational function");
    return d.normalized();
}

} // namespace pottscurve
