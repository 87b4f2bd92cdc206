#include "pottscurve/algebra.hpp"

#include <algorithm>

namespace pottscurve {

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator))
{
    if (den_.is_zero())
        throw DivisionByZero("rational function with zero denominator");
}

Complex RationalFunction::operator()(const Complex& z) const
{
    const Complex d = den_(z);
    if (d == Complex(0))
        throw DivisionByZero("rational function evaluated at a pole");
    return num_(z) / d;
}

RationalFunction RationalFunction::derivative() const
{
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::reduced(const Real& tol) const
{
    if (den_.degree() < 1 || num_.degree() < 1)
        return *this;
    Polynomial num = num_;
    Polynomial den = den_;
    for (const Root& r : roots(den_, tol)) {
        for (int k = 0; k < r.multiplicity && num.degree() >= 1; ++k) {
            Real scale = 0;
            Real az = cabs(r.value);
            for (auto it = num.coefficients().rbegin(); it != num.coefficients().rend(); ++it)
                scale = scale * az + cabs(*it);
            if (cabs(num(r.value)) > tol * scale)
                break;
            const Polynomial lin{-r.value, Complex(1)};
            num = divide(num, lin).quotient;
            den = divide(den, lin).quotient;
        }
    }
    return RationalFunction(num, den);
}

LocalExpansion expand_at(const RationalFunction& f, SpherePoint center, int order)
{
    Polynomial n, d;
    int shift = 0;
    if (center.infinite) {
        const int dn = f.numerator().degree();
        const int dd = f.denominator().degree();
        if (f.numerator().is_zero())
            return LocalExpansion(center, 0, {}, 1);
        n = f.numerator().reversed(dn);
        d = f.denominator().reversed(dd);
        shift = dd - dn;
    } else {
        n = f.numerator().taylor_shift(center.value);
        d = f.denominator().taylor_shift(center.value);
    }
    if (n.is_zero())
        return LocalExpansion(center, 0, {}, 1);
    int vn = 0, vd = 0;
    while (n.coefficient(vn) == Complex(0))
        ++vn;
    while (d.coefficient(vd) == Complex(0))
        ++vd;
    if (vn > 0 && vd > 0)
        throw InvalidInput("expand_at: common zero of numerator and denominator at the center; reduce first");
    const int leading = shift + vn - vd;
    const int count = order - leading + 1;
    if (count <= 0)
        return LocalExpansion(center, leading, {}, 1);
    std::vector<Complex> q(static_cast<std::size_t>(count), Complex(0));
    const Complex d0 = d.coefficient(vd);
    for (int k = 0; k < count; ++k) {
        Complex s = n.coefficient(vn + k);
        for (int j = 1; j <= k; ++j)
            s -= d.coefficient(vd + j) * q[static_cast<std::size_t>(k - j)];
        q[static_cast<std::size_t>(k)] = s / d0;
    }
    return LocalExpansion(center, leading, std::move(q), 1);
}

LocalExpansion series_revert(const LocalExpansion& s, int ramification, int branch)
{
    const int r = ramification;
    if (s.ramification() != 1)
        throw InvalidInput("series_revert: input must be unramified");
    const LocalExpansion a = s.normalized();
    if (a.coefficients().empty() || a.coefficients().front() == Complex(0))
        throw DivisionByZero("series_revert: leading coefficient is zero");
    if (a.leading_order() != r)
        throw InvalidInput("series_revert: valuation " + std::to_string(a.leading_order()) +
                           " does not match the requested ramification " + std::to_string(r));
    // sigma = s^(1/r) = t * u(t) with u(0) != 0, a simple zero in t.
    LocalExpansion u(a.center(), 0, a.coefficients(), 1);
    LocalExpansion sigma = root(u, r, branch);
    {
        std::vector<Complex> c = sigma.coefficients();
        sigma = LocalExpansion(a.center(), 1, std::move(c), 1);
    }
    // Lagrange inversion: with sigma = t v(t), [sigma^k] t = (1/k) [t^(k-1)] v(t)^(-k).
    const int n = static_cast<int>(sigma.coefficients().size());
    const SpherePoint origin = SpherePoint::at(Complex(0));
    const LocalExpansion h = inverse(LocalExpansion(origin, 0, sigma.coefficients(), 1));
    LocalExpansion hk = h;
    std::vector<Complex> b;
    for (int k = 1; k <= n; ++k) {
        if (k > 1)
            hk = hk * h;
        b.push_back(hk.coefficient(k - 1) / Real(k));
    }
    return LocalExpansion(origin, 1, std::move(b), r);
}

} // namespace pottscurve
