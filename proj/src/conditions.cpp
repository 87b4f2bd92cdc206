#include "pottscurve/curve.hpp"

namespace pottscurve {

namespace {

// Built per call: a cached value would keep the precision of its first use.
Polynomial x_plus_denominator() { return Polynomial{Complex(0), Complex(0), Complex(-1), Complex(1)}; } // z^2 (z-1)

Polynomial x3_denominator() { return Polynomial{Complex(0), Complex(1), Complex(-2), Complex(1)}; } // z (z-1)^2

// Exponent of the local coordinate through which expansions are kept. The
// conditions need coefficients up to t^1 after at most squaring a simple pole.
constexpr int expansion_order = 5;

LocalExpansion drop_below(const LocalExpansion& a, int exponent)
{
    std::vector<Complex> c;
    for (int e = exponent; e <= a.truncation(); ++e)
        c.push_back(a.coefficient(e));
    return LocalExpansion(a.center(), exponent, std::move(c), a.ramification());
}

} // namespace

RationalParametrization RationalParametrization::from_real(const Vector& v)
{
    if (v.size() != 12)
        throw InvalidInput("parametrization needs 12 real coefficients");
    RationalParametrization p;
    for (std::size_t k = 0; k < 6; ++k) {
        p.alpha[k] = Complex(v[k]);
        p.beta[k] = Complex(v[k + 6]);
    }
    return p;
}

Vector RationalParametrization::to_real() const
{
    Vector v(12);
    for (std::size_t k = 0; k < 6; ++k) {
        v[k] = alpha[k].real();
        v[k + 6] = beta[k].real();
    }
    return v;
}

void RationalParametrization::validate() const
{
    if (alpha[5] == Complex(0))
        throw StructuralError("alpha5 = 0: x+ loses its double pole at infinity");
    if (beta[5] == Complex(0))
        throw StructuralError("beta5 = 0: x3 loses its double pole at infinity");
}

RationalFunction RationalParametrization::x_plus() const
{
    return RationalFunction(Polynomial(std::vector<Complex>(alpha.begin(), alpha.end())), x_plus_denominator());
}

RationalFunction RationalParametrization::x3() const
{
    return RationalFunction(Polynomial(std::vector<Complex>(beta.begin(), beta.end())), x3_denominator());
}

std::vector<ConditionLabel> candidate_condition_labels()
{
    std::vector<ConditionLabel> l;
    for (int e = -2; e <= 1; ++e)
        l.push_back({"0", "x+ - U3'(x3) + 1/x3", e});
    for (int e = -2; e <= 1; ++e)
        l.push_back({"1", "x3 - U+'(x+)", e});
    l.push_back({"inf", "quadratic growth of x3 - (U+'(x+) - U+'(-x+))", -2});
    for (int e = -2; e <= 1; ++e)
        l.push_back({"inf", "-x+ - U3'(y) + 1/y", e});
    return l;
}

std::size_t redundant_candidate() { return 12; }

std::vector<Complex> candidate_conditions(const RationalParametrization& p, const EffectivePotentials& e)
{
    p.validate();
    const RationalFunction xp = p.x_plus();
    const RationalFunction x3 = p.x3();
    std::vector<Complex> out;

    {
        const SpherePoint c = SpherePoint::at(Complex(0));
        const LocalExpansion a = expand_at(xp, c, expansion_order);
        const LocalExpansion b = expand_at(x3, c, expansion_order);
        const LocalExpansion r = a - apply(e.u3_prime, b) + inverse(b.normalized());
        for (int k = -2; k <= 1; ++k)
            out.push_back(r.coefficient(k));
    }
    {
        const SpherePoint c = SpherePoint::at(Complex(1));
        const LocalExpansion a = expand_at(xp, c, expansion_order);
        const LocalExpansion b = expand_at(x3, c, expansion_order);
        const LocalExpansion r = b - apply(e.u_plus_prime, a);
        for (int k = -2; k <= 1; ++k)
            out.push_back(r.coefficient(k));
    }
    {
        // Sheets 4-5 are the images of sheets 1-2 under
        // (x+, x3) -> (-x+, x3 - U+'(x+) + U+'(-x+)).
        const SpherePoint c = SpherePoint::infinity();
        const LocalExpansion a = expand_at(xp, c, expansion_order);
        const LocalExpansion b = expand_at(x3, c, expansion_order);
        const Polynomial odd = e.u_plus_prime - compose(e.u_plus_prime, Polynomial{Complex(0), Complex(-1)});
        const LocalExpansion y = b - apply(odd, a);
        out.push_back(y.coefficient(-2));
        const LocalExpansion yt = drop_below(y, -1);
        const LocalExpansion r = Complex(-1) * a - apply(e.u3_prime, yt) + inverse(yt.normalized());
        for (int k = -2; k <= 1; ++k)
            out.push_back(r.coefficient(k));
    }
    return out;
}

std::vector<Complex> condition_residuals(const RationalParametrization& p, const EffectivePotentials& e)
{
    std::vector<Complex> all = candidate_conditions(p, e);
    all.erase(all.begin() + static_cast<long>(redundant_candidate()));
    return all;
}

std::vector<ConditionLabel> condition_labels()
{
    auto l = candidate_condition_labels();
    l.erase(l.begin() + static_cast<long>(redundant_candidate()));
    return l;
}

} // namespace pottscurve
