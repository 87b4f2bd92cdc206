#include "doctest.h"

#include "pottscurve/model.hpp"

using namespace pottscurve;

TEST_SUITE("model")
{
    TEST_CASE("effective potentials are cubic with the expected structure")
    {
        for (auto [c, g] : {std::pair{1.0, 1.0}, std::pair{9.0, 1.0}, std::pair{3.5, -0.25}}) {
            Couplings k{Real(c), Real(g)};
            EffectivePotentials e = derive_effective_potentials(k);
            CHECK(e.u_plus.degree() == 3);
            CHECK(e.u3.degree() == 3);
            CHECK(e.u3.coefficient(3).real() == k.g / 3);
            CHECK(e.u3.coefficient(2).real() == k.c / 2);
            CHECK(cabs(e.u3.coefficient(1) - Complex(2 * e.shift)) < Real("1e-40"));
            CHECK(e.coupling == -1);
            // X- quadratic form is (g/4) x+ with no constant part.
            CHECK(e.xminus_quadratic.degree() == 1);
            CHECK(e.xminus_quadratic.coefficient(0) == Complex(0));
            CHECK(cabs(e.xminus_quadratic.coefficient(1) - Complex(k.g / 4)) < Real("1e-40"));
            CHECK(e.u_plus_prime == e.u_plus.derivative());
            CHECK(e.u3_prime == e.u3.derivative());
            // U+'(x) - U+'(-x) = -2x: the odd part is the Gaussian cross term.
            Complex x(Real("0.37"), Real("-1.1"));
            CHECK(cabs(e.u_plus_prime(x) - e.u_plus_prime(-x) + Complex(2) * x) < Real("1e-40"));
        }
        CHECK_THROWS_AS(derive_effective_potentials(Couplings{Real(3), Real(0)}), InvalidCouplings);
    }

    TEST_CASE("symbolic back-substitution reproduces the action")
    {
        const SymbolicReduction& r = symbolic_reduction();
        MultiPoly xp = MultiPoly::variable(sym::xp), xm = MultiPoly::variable(sym::xm), x3 = MultiPoly::variable(sym::x3);
        MultiPoly rebuilt = r.coupling * xp * x3 + r.xminus_quadratic * xm * xm;
        for (int k = 0; k <= 3; ++k)
            rebuilt = rebuilt + r.u_plus[static_cast<std::size_t>(k)] * xp.pow(k);
        for (int k = 1; k <= 3; ++k)
            rebuilt = rebuilt + r.u3[static_cast<std::size_t>(k)] * x3.pow(k);
        CHECK(rebuilt == r.substituted);
        // Undo the change of variables: x+ = x1 + x2 + 2s, x- = x1 - x2.
        MultiPoly x1 = MultiPoly::variable(sym::x1), x2 = MultiPoly::variable(sym::x2), s = MultiPoly::variable(sym::s);
        MultiPoly back = rebuilt.substitute(sym::xp, x1 + x2 + MultiPoly::constant(2) * s).substitute(sym::xm, x1 - x2);
        CHECK(back == r.action);
        CHECK(r.xminus_quadratic == MultiPoly::constant(Rational(1, 4)) * MultiPoly::variable(sym::g) * xp);
    }

    TEST_CASE("gaussian covariance")
    {
        auto g3 = gaussian_covariance(Rational(3));
        CHECK(g3.diagonal == Rational(1, 2));
        CHECK(g3.off_diagonal == Rational(1, 4));
        CHECK(g3.t2 == Rational(3, 2));
        CHECK_THROWS_AS(gaussian_covariance(Rational(2)), DegenerateCovariance);
        CHECK_THROWS_AS(gaussian_covariance(Real(-1)), DegenerateCovariance);
        for (const char* cs : {"2.5", "3", "5", "10"}) {
            Real c(cs);
            auto gc = gaussian_covariance(c);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    Real sum = 0;
                    for (int l = 0; l < 3; ++l) {
                        Real kil = (i == l) ? c : Real(-1);
                        Real inv = (l == j) ? gc.diagonal : gc.off_diagonal;
                        sum += kil * inv;
                    }
                    CHECK(abs(sum - (i == j ? 1 : 0)) < Real("1e-12"));
                }
        }
    }

    TEST_CASE("semicircle")
    {
        Real t(1);
        Complex big(Real(1e8), Real(3e7));
        CHECK(cabs(big * semicircle_resolvent(t, big) - Complex(1)) < Real("1e-12"));
        // Coefficients of x^-3 and x^-5 from a contour average on |x| = 3.
        const int n = 256;
        Complex m2(0), m4(0);
        for (int j = 0; j < n; ++j) {
            Real th = 2 * pi() * j / n;
            Complex x(3 * cos(th), 3 * sin(th));
            Complex w = semicircle_resolvent(t, x);
            m2 += w * x * x * x / Real(n);
            m4 += w * x * x * x * x * x / Real(n);
        }
        CHECK(cabs(m2 - Complex(1)) < Real("1e-20"));
        CHECK(cabs(m4 - Complex(2)) < Real("1e-20"));
        for (int k = 0; k <= 5; ++k)
            CHECK(semicircle_moment(Rational(2, 3), 2 * k) ==
                  Rational(catalan(k)) * rational_pow(Rational(2, 3), k));
        CHECK(semicircle_moment(Rational(1), 3) == 0);
        CHECK(catalan(4) == 14);
    }

    TEST_CASE("boundary table")
    {
        auto t = boundary_table();
        REQUIRE(t.size() == 8);
        auto find = [&](const std::string& l) {
            for (const auto& r : t)
                if (r.label == l)
                    return r;
            FAIL("missing row " << l);
            return t[0];
        };
        auto sd = find("sigma_dagger");
        CHECK(sd.kac == std::pair{2, 4});
        CHECK(sd.weights == std::vector<Rational>{Rational(1, 15)});
        CHECK(sd.z3_charge == -1);
        CHECK(sd.microscopic == "X1+X2");
        auto one = find("1");
        CHECK(one.weights == std::vector<Rational>{Rational(0), Rational(3)});
        CHECK(one.z3_charge == 0);
        CHECK(one.microscopic == "X1");
        CHECK(!find("N").microscopic.has_value());
        CHECK(!find("N").z3_charge.has_value());
        CHECK(!find("F").z3_charge.has_value());
    }

    TEST_CASE("rational parsing")
    {
        CHECK(parse_rational("9") == 9);
        CHECK(parse_rational("-2.5") == Rational(-5, 2));
        CHECK(parse_rational("1e-3") == Rational(1, 1000));
        CHECK(parse_rational("7/2") == Rational(7, 2));
        CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
    }
}
