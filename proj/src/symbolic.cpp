#include "pottscurve/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pottscurve {

Rational parse_rational(const std::string& text)
{
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
    if (s.empty())
        throw InvalidInput("empty rational");
    try {
        if (s.find('/') != std::string::npos)
            return Rational(s);
        std::size_t pos = 0;
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-')
            negative = s[pos++] == '-';
        std::string digits;
        long scale = 0;
        bool seen_point = false;
        for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
            if (s[pos] == '.') {
                if (seen_point)
                    throw InvalidInput("bad number");
                seen_point = true;
            } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                digits += s[pos];
                if (seen_point)
                    --scale;
            } else {
                throw InvalidInput("bad number");
            }
        }
        if (digits.empty())
            throw InvalidInput("bad number");
        if (pos < s.size())
            scale += std::stol(s.substr(pos + 1));
        boost::multiprecision::mpz_int num(digits);
        boost::multiprecision::mpz_int ten = 10;
        Rational q(num);
        if (scale > 0)
            q *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(scale)));
        else if (scale < 0)
            q /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-scale)));
        return negative ? Rational(-q) : q;
    } catch (const InvalidInput&) {
        throw InvalidInput("not a rational number: '" + text + "'");
    } catch (const std::exception&) {
        throw InvalidInput("not a rational number: '" + text + "'");
    }
}

Real to_real(const Rational& q) { return Real(q); }

Rational rational_pow(const Rational& base, int n)
{
    if (n < 0)
        return Rational(1) / rational_pow(base, -n);
    Rational r = 1;
    for (int k = 0; k < n; ++k)
        r *= base;
    return r;
}

MultiPoly MultiPoly::constant(const Rational& c)
{
    MultiPoly p;
    p.add_term(Exponents{}, c);
    return p;
}

MultiPoly MultiPoly::variable(int index)
{
    if (index < 0 || index >= max_vars)
        throw InvalidInput("symbol index out of range");
    Exponents e{};
    e[static_cast<std::size_t>(index)] = 1;
    MultiPoly p;
    p.add_term(e, Rational(1));
    return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            t_.erase(it);
    }
}

int MultiPoly::degree(int var) const
{
    int d = -1;
    for (const auto& [e, c] : t_)
        d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(var)]));
    return d;
}

MultiPoly MultiPoly::coefficient(int var, int k) const
{
    MultiPoly out;
    for (const auto& [e, c] : t_)
        if (e[static_cast<std::size_t>(var)] == k) {
            Exponents f = e;
            f[static_cast<std::size_t>(var)] = 0;
            out.add_term(f, c);
        }
    return out;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& value) const
{
    MultiPoly out;
    const int d = degree(var);
    MultiPoly power = constant(Rational(1));
    for (int k = 0; k <= d; ++k) {
        if (k > 0)
            power = power * value;
        out = out + coefficient(var, k) * power;
    }
    return out;
}

MultiPoly MultiPoly::pow(int n) const
{
    MultiPoly r = constant(Rational(1));
    for (int k = 0; k < n; ++k)
        r = r * *this;
    return r;
}

Real MultiPoly::evaluate(const std::vector<Real>& values) const
{
    Real acc = 0;
    for (const auto& [e, c] : t_) {
        Real term = to_real(c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0) {
                if (v >= values.size())
                    throw InvalidInput("evaluate: missing value for a symbol");
                term *= boost::multiprecision::pow(values[v], static_cast<int>(e[v]));
            }
        acc += term;
    }
    return acc;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const
{
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        os << (first ? "" : " + ") << '(' << c << ')';
        first = false;
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0) {
                os << '*' << (v < names.size() ? names[v] : "v" + std::to_string(v));
                if (e[v] > 1)
                    os << '^' << static_cast<int>(e[v]);
            }
    }
    return os.str();
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r = a;
    for (const auto& [e, c] : b.t_)
        r.add_term(e, c);
    return r;
}

MultiPoly operator*(const Rational& s, const MultiPoly& a)
{
    MultiPoly r;
    for (const auto& [e, c] : a.t_)
        r.add_term(e, s * c);
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + Rational(-1) * b; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r;
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) {
            MultiPoly::Exponents e{};
            for (std::size_t v = 0; v < e.size(); ++v) {
                const int sum = ea[v] + eb[v];
                if (sum > 255)
                    throw InvalidInput("symbolic exponent overflow");
                e[v] = static_cast<std::uint8_t>(sum);
            }
            r.add_term(e, ca * cb);
        }
    return r;
}

} // namespace pottscurve
