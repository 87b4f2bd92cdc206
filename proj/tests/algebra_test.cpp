#include "doctest.h"

#include "pottscurve/algebra.hpp"

#include <random>

using namespace pottscurve;

namespace {

bool near(const Complex& a, const Complex& b, const Real& tol = Real("1e-30"))
{
    return cabs(a - b) <= tol * (1 + cabs(b));
}

Complex cx(double re, double im = 0) { return Complex(Real(re), Real(im)); }

} // namespace

TEST_SUITE("algebra")
{
    TEST_CASE("polynomial arithmetic")
    {
        Polynomial a{cx(1), cx(1)};
        Polynomial b{cx(-1), cx(1)};
        CHECK(poly_arith(a, b, PolyOp::mul) == Polynomial{cx(-1), cx(0), cx(1)});
        Polynomial sq{cx(0), cx(0), cx(1)};
        CHECK(poly_arith(sq, a, PolyOp::compose) == Polynomial{cx(1), cx(2), cx(1)});
        CHECK(poly_arith(a, Polynomial(), PolyOp::add) == a);
        CHECK((a - a).is_zero());
        CHECK((a - a).degree() == -1);
        CHECK_THROWS_AS(Polynomial(std::vector<Complex>(70, cx(1))), InvalidInput);
    }

    TEST_CASE("division, derivative and shifts")
    {
        Polynomial p{cx(-6), cx(11), cx(-6), cx(1)}; // (x-1)(x-2)(x-3)
        auto d = divide(p, Polynomial{cx(-2), cx(1)});
        CHECK(d.remainder.is_zero());
        CHECK(d.quotient == Polynomial{cx(3), cx(-4), cx(1)});
        CHECK(p.derivative() == Polynomial{cx(11), cx(-12), cx(3)});
        Polynomial s = p.taylor_shift(cx(1)); // t(t-1)(t-2)
        CHECK(near(s.coefficient(0), cx(0)));
        CHECK(near(s.coefficient(1), cx(2)));
        CHECK(p.reversed(3) == Polynomial{cx(1), cx(-6), cx(11), cx(-6)});
    }

    TEST_CASE("roots of simple polynomials")
    {
        auto r = roots(Polynomial{cx(-1), cx(0), cx(1)}, Real("1e-8"));
        REQUIRE(r.size() == 2);
        CHECK(near(r[0].value, cx(-1)));
        CHECK(near(r[1].value, cx(1)));
        CHECK(r[0].multiplicity == 1);

        Polynomial cube = Polynomial::from_roots({cx(2), cx(2), cx(2)});
        auto rc = roots(cube, Real("1e-8"));
        REQUIRE(rc.size() == 1);
        CHECK(rc[0].multiplicity == 3);
        CHECK(near(rc[0].value, cx(2), Real("1e-20")));

        CHECK_THROWS_AS(roots(Polynomial::constant(cx(3)), Real("1e-8")), InvalidInput);
    }

    TEST_CASE("clustered pair merges under the tolerance")
    {
        Polynomial p = Polynomial::from_roots({cx(1), cx(1 + 1e-12), cx(-3), cx(0.5, 2)});
        auto r = roots(p, Real("1e-8"));
        int total = 0;
        bool found = false;
        for (const auto& x : r) {
            total += x.multiplicity;
            if (x.multiplicity == 2) {
                found = true;
                CHECK(near(x.value, cx(1), Real("1e-10")));
            }
        }
        CHECK(total == 4);
        CHECK(found);
    }

    TEST_CASE("roots round trip for well separated roots")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-3, 3);
        for (int deg = 1; deg <= 12; ++deg) {
            std::vector<Complex> rs;
            while (static_cast<int>(rs.size()) < deg) {
                Complex z = cx(u(rng), u(rng));
                bool ok = true;
                for (const auto& w : rs)
                    if (cabs(z - w) < Real("0.3"))
                        ok = false;
                if (ok)
                    rs.push_back(z);
            }
            Complex lead = cx(1.5, -0.25);
            Polynomial p = Polynomial::from_roots(rs, lead);
            auto found = roots(p, Real("1e-20"));
            std::vector<Complex> back;
            for (const auto& f : found)
                for (int m = 0; m < f.multiplicity; ++m)
                    back.push_back(f.value);
            Polynomial q = Polynomial::from_roots(back, lead);
            Real scale = 0;
            for (const auto& c : p.coefficients())
                scale = std::max(scale, cabs(c));
            for (int k = 0; k <= deg; ++k)
                CHECK(cabs(q.coefficient(k) - p.coefficient(k)) <= Real("1e-10") * scale);
        }
    }

    TEST_CASE("expand_at at finite points and infinity")
    {
        RationalFunction f(Polynomial::constant(cx(1)), Polynomial{cx(0), cx(1), cx(-2), cx(1)}); // 1/(z(z-1)^2)
        LocalExpansion e = expand_at(f, SpherePoint::at(cx(0)), 2);
        CHECK(e.leading_order() == -1);
        REQUIRE(e.coefficients().size() == 4);
        for (int k = 0; k < 4; ++k)
            CHECK(near(e.coefficients()[static_cast<std::size_t>(k)], cx(k + 1)));

        RationalFunction z2(Polynomial{cx(0), cx(0), cx(1)}, Polynomial::constant(cx(1)));
        LocalExpansion inf = expand_at(z2, SpherePoint::infinity(), 3);
        CHECK(inf.leading_order() == -2);
        CHECK(near(inf.coefficient(-2), cx(1)));

        RationalFunction g(Polynomial{cx(1), cx(0), cx(1)}, Polynomial{cx(0), cx(1)});
        LocalExpansion ge = expand_at(g, SpherePoint::at(cx(0)), 3);
        CHECK(ge.leading_order() == -1);
        CHECK(near(ge.coefficient(-1), cx(1)));

        RationalFunction bad(Polynomial{cx(0), cx(1)}, Polynomial{cx(0), cx(2)});
        CHECK_THROWS_AS(expand_at(bad, SpherePoint::at(cx(0)), 2), InvalidInput);
        CHECK(bad.reduced(Real("1e-20")).denominator().degree() == 0);
    }

    TEST_CASE("expansion resums to the function and respects products")
    {
        RationalFunction f(Polynomial{cx(2), cx(-1), cx(0.5), cx(3)}, Polynomial{cx(0), cx(0), cx(-1), cx(1)});
        RationalFunction h(Polynomial{cx(1), cx(1)}, Polynomial{cx(0), cx(2), cx(1)});
        for (SpherePoint c : {SpherePoint::at(cx(0)), SpherePoint::at(cx(1)), SpherePoint::at(cx(0.3, 0.2)),
                              SpherePoint::infinity()}) {
            LocalExpansion ef = expand_at(f, c, 30);
            LocalExpansion eh = expand_at(h, c, 30);
            Complex z = c.infinite ? cx(40, 10) : c.value + cx(0.01, 0.005);
            CHECK(near(ef.sum_at(z), f(z), Real("1e-25")));
            RationalFunction fh(f.numerator() * h.numerator(), f.denominator() * h.denominator());
            LocalExpansion efh = expand_at(fh.reduced(Real("1e-30")), c, 20);
            LocalExpansion prod = ef * eh;
            for (int k = efh.leading_order(); k <= std::min(efh.truncation(), prod.truncation()); ++k)
                CHECK(near(prod.coefficient(k), efh.coefficient(k), Real("1e-35")));
        }
    }

    TEST_CASE("series_revert")
    {
        const SpherePoint o = SpherePoint::at(cx(0));
        LocalExpansion s(o, 1, {cx(1), cx(1), cx(0), cx(0), cx(0)});
        LocalExpansion r = series_revert(s);
        CHECK(near(r.coefficient(1), cx(1)));
        CHECK(near(r.coefficient(2), cx(-1)));
        CHECK(near(r.coefficient(3), cx(2)));
        CHECK(near(r.coefficient(4), cx(-5)));

        LocalExpansion two(o, 1, {cx(2), cx(0), cx(0)});
        CHECK(near(series_revert(two).coefficient(1), cx(0.5)));
        CHECK(near(series_revert(two).coefficient(2), cx(0)));

        LocalExpansion cube(o, 3, {cx(1), cx(0), cx(0)});
        LocalExpansion cr = series_revert(cube, 3);
        CHECK(cr.ramification() == 3);
        CHECK(cr.leading_order() == 1);
        CHECK(near(cr.coefficient(1), cx(1)));
        CHECK(near(cr.sum(cx(8)), cx(2), Real("1e-30")));

        LocalExpansion zero(o, 1, {cx(0), cx(1)});
        CHECK_THROWS_AS(series_revert(LocalExpansion(o, 0, {cx(0)})), DivisionByZero);
        CHECK_THROWS_AS(series_revert(cube, 1), InvalidInput);
        (void)zero;
    }

    TEST_CASE("double reversion is the identity and composition inverts")
    {
        const SpherePoint o = SpherePoint::at(cx(0));
        LocalExpansion s(o, 1, {cx(0.7), cx(-0.2, 0.1), cx(1.3), cx(0.05), cx(-2), cx(0.4), cx(0.1), cx(0.3)});
        LocalExpansion rr = series_revert(series_revert(s));
        for (int k = 1; k <= s.truncation(); ++k)
            CHECK(near(rr.coefficient(k), s.coefficient(k), Real("1e-35")));
        LocalExpansion id = compose(s, series_revert(s));
        CHECK(near(id.coefficient(1), cx(1), Real("1e-35")));
        for (int k = 2; k <= id.truncation(); ++k)
            CHECK(cabs(id.coefficient(k)) < Real("1e-35"));
    }

    TEST_CASE("series arithmetic helpers")
    {
        const SpherePoint o = SpherePoint::at(cx(0));
        LocalExpansion a(o, -1, {cx(2), cx(1), cx(3), cx(-1), cx(0.5)});
        LocalExpansion one = a * inverse(a);
        CHECK(near(one.coefficient(0), cx(1)));
        for (int k = 1; k <= one.truncation(); ++k)
            CHECK(cabs(one.coefficient(k)) < Real("1e-40"));
        LocalExpansion b(o, 2, {cx(4), cx(1), cx(2), cx(0.3)});
        LocalExpansion r = root(b, 2);
        LocalExpansion back = r * r;
        for (int k = 2; k <= back.truncation(); ++k)
            CHECK(near(back.coefficient(k), b.coefficient(k), Real("1e-40")));
        Polynomial p{cx(1), cx(-2), cx(3)};
        LocalExpansion pa = apply(p, a);
        LocalExpansion direct = Complex(3) * (a * a) - Complex(2) * a;
        CHECK(near(pa.coefficient(0), direct.coefficient(0) + cx(1)));
        CHECK(near(pa.coefficient(-2), direct.coefficient(-2)));
    }
}
