#pragma once

#include "pottscurve/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace pottscurve {

inline constexpr int max_polynomial_degree = 64;

// Dense univariate polynomial with complex coefficients, ascending order.
// Trailing zeros are trimmed so the leading coefficient is nonzero unless the
// polynomial is identically zero.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);
    Polynomial(std::initializer_list<Complex> coeffs);
    static Polynomial constant(const Complex& c);
    static Polynomial monomial(int degree, const Complex& c = Complex(1));
    static Polynomial from_roots(const std::vector<Complex>& roots, const Complex& leading = Complex(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Complex>& coefficients() const { return c_; }
    Complex coefficient(int k) const;
    Complex leading() const;

    Complex operator()(const Complex& z) const;
    Polynomial derivative(int times = 1) const;
    Polynomial taylor_shift(const Complex& center) const; // p(center + t)
    Polynomial reversed(int n) const;                      // t^n p(1/t)

private:
    std::vector<Complex> c_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Complex& s, const Polynomial& a);
bool operator==(const Polynomial& a, const Polynomial& b);

enum class PolyOp { add, mul, compose };
// compose(a, b) = a(b(x)).
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);
Polynomial compose(const Polynomial& outer, const Polynomial& inner);

struct PolyDivision {
    Polynomial quotient;
    Polynomial remainder;
};
PolyDivision divide(const Polynomial& a, const Polynomial& b);

struct Root {
    Complex value;
    int multiplicity = 1;
};

// All roots with multiplicity. Roots closer than tol*(1+|r|) are merged into
// one cluster and refined on the (m-1)-th derivative.
std::vector<Root> roots(const Polynomial& p, const Real& tol);

class RationalFunction {
public:
    RationalFunction(Polynomial numerator, Polynomial denominator);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    Complex operator()(const Complex& z) const;
    RationalFunction derivative() const;
    // Cancels common roots that agree within tol.
    RationalFunction reduced(const Real& tol) const;

private:
    Polynomial num_;
    Polynomial den_;
};

// A point of the Riemann sphere.
struct SpherePoint {
    Complex value;
    bool infinite = false;
    static SpherePoint at(const Complex& z) { return {z, false}; }
    static SpherePoint infinity() { return {Complex(0), true}; }
};

// Truncated Puiseux/Laurent expansion f = sum_{j} coeffs[j] * t^{(leading+j)/ramification}
// with t = z - center, or t = 1/z at infinity. ramification is 1 for plain
// Laurent series. The series is exact through exponent leading+size-1.
class LocalExpansion {
public:
    LocalExpansion() = default;
    LocalExpansion(SpherePoint center, int leading, std::vector<Complex> coeffs, int ramification = 1);

    const SpherePoint& center() const { return center_; }
    int leading_order() const { return leading_; }
    int ramification() const { return ram_; }
    const std::vector<Complex>& coefficients() const { return c_; }
    // Highest exponent (in units of 1/ramification) that is exact.
    int truncation() const { return leading_ + static_cast<int>(c_.size()) - 1; }
    Complex coefficient(int exponent) const; // zero below leading order
    // Sum of the series at the local coordinate t.
    Complex sum(const Complex& t) const;
    // Sum at a point z, converting to the local coordinate of the center.
    Complex sum_at(const Complex& z) const;

    LocalExpansion truncated(int exponent) const;
    // Drops leading zeros up to tol, so leading_order is the true valuation.
    LocalExpansion normalized(const Real& tol = Real(0)) const;

private:
    SpherePoint center_;
    int leading_ = 0;
    std::vector<Complex> c_;
    int ram_ = 1;
};

// Series arithmetic on expansions sharing center and ramification.
LocalExpansion operator+(const LocalExpansion& a, const LocalExpansion& b);
LocalExpansion operator-(const LocalExpansion& a, const LocalExpansion& b);
LocalExpansion operator*(const LocalExpansion& a, const LocalExpansion& b);
LocalExpansion operator*(const Complex& s, const LocalExpansion& a);
LocalExpansion inverse(const LocalExpansion& a);
LocalExpansion power(const LocalExpansion& a, int n);
// a^(1/n) for a series whose valuation is divisible by n; branch selects the
// n-th root of the leading coefficient.
LocalExpansion root(const LocalExpansion& a, int n, int branch = 0);
// p(a) for a polynomial p.
LocalExpansion apply(const Polynomial& p, const LocalExpansion& a);
// outer(inner(t)) where inner has positive valuation.
LocalExpansion compose(const LocalExpansion& outer, const LocalExpansion& inner);
LocalExpansion derivative(const LocalExpansion& a);

// Expansion of f at center through exponent `order`.
LocalExpansion expand_at(const RationalFunction& f, SpherePoint center, int order);

// Functional inverse. For s = a_r t^r + ... with r = ramification request the
// result is t as a series in sigma = s^(1/r) (ramification r, branch chosen
// by `branch`). r = 1 is ordinary reversion of a simple zero.
LocalExpansion series_revert(const LocalExpansion& s, int ramification = 1, int branch = 0);

} // namespace pottscurve
