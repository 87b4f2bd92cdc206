#pragma once

#include "pottscurve/numeric.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pottscurve {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

Rational rational_pow(const Rational& base, int n);

// Parses "9", "-2.5", "1e-3" or "7/2" into an exact rational.
Rational parse_rational(const std::string& text);
Real to_real(const Rational& q);

// Sparse multivariate polynomial with exact rational coefficients over a
// small fixed set of commuting symbols.
class MultiPoly {
public:
    static constexpr int max_vars = 8;
    using Exponents = std::array<std::uint8_t, max_vars>;

    MultiPoly() = default;
    static MultiPoly constant(const Rational& c);
    static MultiPoly variable(int index);

    const std::map<Exponents, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree(int var) const;
    // Coefficient of var^k, as a polynomial in the remaining symbols.
    MultiPoly coefficient(int var, int k) const;
    MultiPoly substitute(int var, const MultiPoly& value) const;
    MultiPoly pow(int n) const;
    Real evaluate(const std::vector<Real>& values) const;
    std::string to_string(const std::vector<std::string>& names) const;

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Rational& s, const MultiPoly& a);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.t_ == b.t_; }

private:
    void add_term(const Exponents& e, const Rational& c);
    std::map<Exponents, Rational> t_;
};

} // namespace pottscurve
