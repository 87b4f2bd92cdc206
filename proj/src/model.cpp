#include "pottscurve/model.hpp"

namespace pottscurve {

void validate_couplings(const Couplings& k, bool require_gaussian)
{
    if (k.g == 0)
        throw InvalidCouplings("g = 0: the shift (c+1)/(2g) of the change of variables diverges");
    if (require_gaussian && !(k.c > 2))
        throw InvalidCouplings("c must exceed 2 for a positive definite Gaussian sector");
}

Real shift_of(const Couplings& k)
{
    validate_couplings(k, false);
    return (k.c + 1) / (2 * k.g);
}

namespace {

MultiPoly v(int i) { return MultiPoly::variable(i); }
MultiPoly q(long n, long d = 1) { return MultiPoly::constant(Rational(n, d)); }

MultiPoly potential(const MultiPoly& x)
{
    // c x^2/2 + g x^3/3 with c = 2 g s - 1
    MultiPoly c = q(2) * v(sym::g) * v(sym::s) - q(1);
    return q(1, 2) * c * x * x + q(1, 3) * v(sym::g) * x * x * x;
}

SymbolicReduction derive()
{
    SymbolicReduction r;
    const MultiPoly x1 = v(sym::x1), x2 = v(sym::x2), x3 = v(sym::x3);
    r.action = potential(x1) + potential(x2) + potential(x3) - (x1 * x2 + x1 * x3 + x2 * x3);

    const MultiPoly shift = v(sym::s);
    const MultiPoly new_x1 = q(1, 2) * (v(sym::xp) + v(sym::xm)) - shift;
    const MultiPoly new_x2 = q(1, 2) * (v(sym::xp) - v(sym::xm)) - shift;
    r.substituted = r.action.substitute(sym::x1, new_x1).substitute(sym::x2, new_x2);

    const MultiPoly& a = r.substituted;
    if (!a.coefficient(sym::xm, 1).is_zero() || !a.coefficient(sym::xm, 3).is_zero())
        throw NumericalError("symbolic derivation: odd powers of X- survive");
    r.xminus_quadratic = a.coefficient(sym::xm, 2);
    if (r.xminus_quadratic.degree(sym::x3) > 0)
        throw NumericalError("symbolic derivation: X- couples to X3");

    const MultiPoly rest = a.coefficient(sym::xm, 0);
    r.coupling = rest.coefficient(sym::xp, 1).coefficient(sym::x3, 1);
    for (int k = 0; k <= 3; ++k)
        r.u_plus.push_back(rest.coefficient(sym::x3, 0).coefficient(sym::xp, k));
    r.u3.push_back(MultiPoly());
    for (int k = 1; k <= 3; ++k)
        r.u3.push_back(rest.coefficient(sym::xp, 0).coefficient(sym::x3, k));

    // Nothing else may mix X+ and X3.
    MultiPoly rebuilt;
    for (int k = 0; k <= 3; ++k)
        rebuilt = rebuilt + r.u_plus[static_cast<std::size_t>(k)] * v(sym::xp).pow(k);
    for (int k = 1; k <= 3; ++k)
        rebuilt = rebuilt + r.u3[static_cast<std::size_t>(k)] * v(sym::x3).pow(k);
    rebuilt = rebuilt + r.coupling * v(sym::xp) * v(sym::x3);
    if (!(rebuilt == rest))
        throw NumericalError("symbolic derivation: unexpected X+ X3 cross terms");
    return r;
}

Polynomial numeric(const std::vector<MultiPoly>& coeffs, const std::vector<Real>& values)
{
    std::vector<Complex> c;
    for (const auto& p : coeffs)
        c.emplace_back(p.evaluate(values));
    return Polynomial(std::move(c));
}

} // namespace

const SymbolicReduction& symbolic_reduction()
{
    static const SymbolicReduction r = derive();
    return r;
}

EffectivePotentials derive_effective_potentials(const Couplings& k)
{
    validate_couplings(k, false);
    const SymbolicReduction& r = symbolic_reduction();
    EffectivePotentials e;
    e.couplings = k;
    e.shift = shift_of(k);
    std::vector<Real> values(MultiPoly::max_vars, Real(0));
    values[sym::g] = k.g;
    values[sym::s] = e.shift;
    e.u_plus = numeric(r.u_plus, values);
    e.u3 = numeric(r.u3, values);
    e.u_plus_prime = e.u_plus.derivative();
    e.u3_prime = e.u3.derivative();
    e.coupling = r.coupling.evaluate(values);
    std::vector<MultiPoly> xq;
    for (int j = 0; j <= r.xminus_quadratic.degree(sym::xp); ++j)
        xq.push_back(r.xminus_quadratic.coefficient(sym::xp, j));
    e.xminus_quadratic = numeric(xq, values);
    if (e.u_plus.degree() != 3 || e.u3.degree() != 3)
        throw NumericalError("effective potentials are not cubic");
    return e;
}

namespace {

template <class T>
GaussianCovariance<T> covariance(const T& c)
{
    if (c == 2 || c == -1)
        throw DegenerateCovariance("quadratic form is singular at c = 2 and c = -1");
    GaussianCovariance<T> g;
    g.c = c;
    const T a = T(1) / (3 * (c - 2));
    const T b = T(1) / (3 * (c + 1));
    g.diagonal = a + 2 * b;
    g.off_diagonal = a - b;
    g.t1 = g.diagonal;
    g.t2 = 2 * g.diagonal + 2 * g.off_diagonal;
    return g;
}

} // namespace

GaussianCovariance<Real> gaussian_covariance(const Real& c) { return covariance<Real>(c); }
GaussianCovariance<Rational> gaussian_covariance(const Rational& c) { return covariance<Rational>(c); }

Complex semicircle_resolvent(const Real& t, const Complex& x)
{
    if (!(t > 0))
        throw InvalidInput("semicircle variance must be positive");
    const Real edge = 2 * sqrt(t);
    // Product of principal roots puts the cut on [-edge, edge].
    const Complex root = std::sqrt(x - Complex(edge)) * std::sqrt(x + Complex(edge));
    return (x - root) / (2 * t);
}

boost::multiprecision::mpz_int catalan(int n)
{
    boost::multiprecision::mpz_int c = 1;
    for (int k = 0; k < n; ++k)
        c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

Rational semicircle_moment(const Rational& t, int k)
{
    if (k % 2 != 0)
        return Rational(0);
    return Rational(catalan(k / 2)) * rational_pow(t, k / 2);
}

std::vector<BoundaryLabel> boundary_table()
{
    auto w = [](long n, long d) { return Rational(n, d); };
    return {
        {"1", {1, 1}, {{1, 1}, {1, 5}}, {w(0, 1), w(3, 1)}, 0, "X1"},
        {"F", {1, 2}, {{1, 2}, {1, 4}}, {w(1, 8), w(13, 8)}, std::nullopt, "X1+X2+X3"},
        {"psi", {1, 3}, {{1, 3}}, {w(2, 3)}, 1, "X2"},
        {"psi_dagger", {1, 4}, {{1, 3}}, {w(2, 3)}, -1, "X3"},
        {"epsilon", {2, 1}, {{2, 1}, {3, 1}}, {w(2, 5), w(7, 5)}, 0, "X2+X3"},
        {"N", {2, 2}, {{2, 2}, {2, 4}}, {w(1, 40), w(21, 40)}, std::nullopt, std::nullopt},
        {"sigma", {2, 3}, {{2, 3}}, {w(1, 15)}, 1, "X1+X3"},
        {"sigma_dagger", {2, 4}, {{2, 3}}, {w(1, 15)}, -1, "X1+X2"},
    };
}

} // namespace pottscurve
