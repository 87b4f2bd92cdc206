#include "doctest.h"

#include "pottscurve/curve.hpp"
#include "pottscurve/io.hpp"

#include <random>

using namespace pottscurve;

namespace {

// All suites run at the 50 digits set in test_main, so caching is safe.
const CurveSolution& reference()
{
    static const CurveSolution s = [] {
        SolveStrategy st;
        st.budget = 200;
        st.rng_seed = 1;
        return solve_curve(Couplings{Real(9), Real(1)}, st);
    }();
    return s;
}

Real max_abs(const std::vector<Complex>& v)
{
    Real m = 0;
    for (const Complex& z : v)
        m = std::max(m, cabs(z));
    return m;
}

Complex laurent_sum(const std::vector<Complex>& coeffs, const Complex& x)
{
    Complex sum(0), power = Complex(1) / x;
    for (const Complex& c : coeffs) {
        sum += c * power;
        power /= x;
    }
    return sum;
}

} // namespace

TEST_SUITE("curve")
{
    TEST_CASE("condition bookkeeping: twelve conditions, four per pole")
    {
        const auto labels = condition_labels();
        REQUIRE(labels.size() == 12);
        for (const char* pole : {"0", "1", "inf"})
            CHECK(std::count_if(labels.begin(), labels.end(), [&](const ConditionLabel& l) { return l.pole == pole; }) == 4);
        CHECK(candidate_condition_labels().size() == 13);
        CHECK(redundant_candidate() < 13);
    }

    TEST_CASE("a converged solution satisfies every condition")
    {
        const CurveSolution& s = reference();
        CHECK(s.residual_norm < Real("1e-30"));
        const auto r = condition_residuals(s.parametrization, s.potentials);
        REQUIRE(r.size() == 12);
        CHECK(max_abs(r) < Real("1e-10"));
        // Real coefficients and a real support to the right of the edge gamma.
        CHECK_NOTHROW(s.parametrization.to_real());
        CHECK(s.support[0] < s.support[1]);
        CHECK(s.gamma < s.support[0]);
    }

    TEST_CASE("perturbing alpha0 breaks the conditions")
    {
        RationalParametrization p = reference().parametrization;
        p.alpha[0] += Complex(Real("1e-3"));
        CHECK(max_abs(condition_residuals(p, reference().potentials)) > Real("1e-6"));
    }

    TEST_CASE("vanishing leading coefficient is a structural error")
    {
        RationalParametrization p = reference().parametrization;
        p.alpha[5] = Complex(0);
        CHECK_THROWS_AS(p.validate(), StructuralError);
        CHECK_THROWS_AS(condition_residuals(p, reference().potentials), StructuralError);
        SolveStrategy st;
        st.kind = SolveStrategy::Kind::seed;
        st.seed = p;
        CHECK_THROWS_AS(solve_curve(Couplings{Real(9), Real(1)}, st), StructuralError);
        RationalParametrization q = reference().parametrization;
        q.beta[5] = Complex(0);
        CHECK_THROWS_AS(q.validate(), StructuralError);
    }

    TEST_CASE("seeded multistart is reproducible")
    {
        SolveStrategy st;
        st.budget = 200;
        st.rng_seed = 1;
        const CurveSolution again = solve_curve(Couplings{Real(9), Real(1)}, st);
        CHECK(again.parametrization.to_real() == reference().parametrization.to_real());
        CHECK(again.trace.multistart_attempts == reference().trace.multistart_attempts);
    }

    TEST_CASE("implicitized curve has degree five in x3 and vanishes on the locus")
    {
        const CurveSolution& s = reference();
        const SpectralCurve q = implicitize(s.parametrization);
        CHECK(q.degree_x3 == 5);
        const RationalFunction xp = s.parametrization.x_plus(), x3 = s.parametrization.x3();
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> radius(0.05, 3.0), angle(0.0, 6.283185307179586);
        Real worst = 0;
        for (int i = 0; i < 100; ++i) {
            const Complex z = std::polar(Real(radius(rng)), Real(angle(rng)));
            if (cabs(z - Complex(1)) < Real("0.05"))
                continue;
            worst = std::max(worst, q.scaled_residual(x3(z), xp(z)));
        }
        CHECK(worst < Real("1e-8"));
        // Off the locus the polynomial does not vanish.
        CHECK(q.scaled_residual(Complex(Real("0.3")), Complex(Real("-0.7"))) > Real("1e-3"));
    }

    TEST_CASE("toy implicitization: x+ = z^2, x3 = z gives x+ - x3^2")
    {
        const RationalFunction xp(Polynomial{Complex(0), Complex(0), Complex(1)}, Polynomial{Complex(1)});
        const RationalFunction x3(Polynomial{Complex(0), Complex(1)}, Polynomial{Complex(1)});
        const SpectralCurve q = implicitize(xp, x3);
        CHECK(q.degree_x3 == 2);
        CHECK(q.degree_x_plus == 1);
        const Complex a = q.q[0][1];
        REQUIRE(cabs(a) > Real("1e-30"));
        CHECK(cabs(q.q[2][0] / a + Complex(1)) < Real("1e-40"));
        CHECK(cabs(q.q[0][0] / a) < Real("1e-40"));
        CHECK(cabs(q.q[1][0] / a) < Real("1e-40"));
    }

    TEST_CASE("x3 saddle-point identity holds against the Laurent series of w3")
    {
        const CurveSolution& s = reference();
        const RationalFunction x3 = s.parametrization.x3();
        Real radius = 0;
        for (const Root& b : branch_points_of_x3(s.parametrization, Real("1e-30")))
            radius = std::max(radius, cabs(x3(b.value)));
        const std::vector<Complex> w = w3_laurent(s, 80);
        Real worst = 0;
        for (int i = 0; i < 16; ++i) {
            const Complex x = std::polar(Real(3 * radius), Real(2 * pi() * i / 16 + Real("0.1")));
            const Complex lhs = s.potentials.u3_prime(x);
            const Complex r = lhs - x_plus_star(s, x) - laurent_sum(w, x);
            worst = std::max(worst, Real(cabs(r) / (1 + cabs(lhs))));
        }
        CHECK(worst < Real("1e-8"));
    }

    TEST_CASE("x+ saddle-point identity holds with the reconstructed resolvent")
    {
        const CurveSolution& s = reference();
        const MixedResolvent w(s, 256);
        const Real mid = (s.support[0] + s.support[1]) / 2, half = (s.support[1] - s.support[0]) / 2;
        Real worst = 0;
        for (int i = 0; i < 20; ++i) {
            const Complex x(mid + half * Real(i - 10) / 5, half * (1 + i % 3) * (i % 2 ? 1 : -1));
            const Complex lhs = s.potentials.u_plus_prime(x);
            const Complex r = lhs - x3_star(s, x) - w(x) - w(-x);
            worst = std::max(worst, Real(cabs(r) / (1 + cabs(lhs))));
        }
        CHECK(worst < Real("1e-8"));
    }

    TEST_CASE("functional inverse through independent sheet tracking")
    {
        const CurveSolution& s = reference();
        const RationalFunction xp = s.parametrization.x_plus(), x3 = s.parametrization.x3();
        Real radius = 0;
        for (const Root& b : branch_points_of_x3(s.parametrization, Real("1e-30")))
            radius = std::max(radius, cabs(x3(b.value)));
        // A disc around z = 0 whose image lies beyond every critical value.
        const Real r0 = cabs(s.parametrization.beta[0]) / (2 * radius);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Real worst = 0;
        for (int i = 0; i < 100; ++i) {
            const Complex z = std::polar(Real(r0 * Real(u(rng))), Real(2 * pi() * Real(u(rng))));
            const Complex back = preimage_physical_x3(s, x3(z));
            worst = std::max(worst, Real(cabs(xp(back) - xp(z)) / (1 + cabs(xp(z)))));
        }
        CHECK(worst < Real("1e-8"));
        // Same on sheet 3, around z = 1.
        worst = 0;
        for (int i = 0; i < 100; ++i) {
            const Complex z = Complex(1) + std::polar(Real(Real("0.1") * Real(u(rng))), Real(2 * pi() * Real(u(rng))));
            const Complex back = preimage_sheet3(s, xp(z));
            worst = std::max(worst, Real(cabs(x3(back) - x3(z)) / (1 + cabs(x3(z)))));
        }
        CHECK(worst < Real("1e-8"));
    }

    TEST_CASE("density is normalized and nonnegative")
    {
        const SpectralDensity d = density(reference(), 256);
        CHECK(abs(d.normalization - 1) < Real("1e-6"));
        Real smallest = 0;
        for (const Real& v : d.values)
            smallest = std::min(smallest, v);
        CHECK(smallest >= Real("-1e-10"));
        // Plain trapezoid over the nodes as an independent quadrature.
        Real area = 0;
        for (std::size_t i = 0; i + 1 < d.nodes.size(); ++i)
            area += (d.nodes[i + 1] - d.nodes[i]) * (d.values[i] + d.values[i + 1]) / 2;
        CHECK(abs(abs(area) - 1) < Real("1e-4"));
    }

    TEST_CASE("off-critical density vanishes as a square root at the edge")
    {
        const CurveSolution& s = reference();
        const Real b = s.support[1];
        const Real d1("1e-8"), d2("1e-6");
        const Real slope = log(density_at(s, b - d2) / density_at(s, b - d1)) / log(d2 / d1);
        CHECK(abs(slope - Real("0.5")) < Real("0.05"));
    }

    TEST_CASE("planar moments are real, normalized and agree between routes")
    {
        const CurveSolution& s = reference();
        const std::vector<Real> fixed = planar_moments(s, MomentKind::fixed, 6);
        const std::vector<Real> mixed = planar_moments(s, MomentKind::mixed, 6);
        CHECK(abs(fixed[0] - 1) < Real("1e-10"));
        CHECK(abs(mixed[0] - 1) < Real("1e-10"));
        const std::vector<Complex> w = w3_laurent(s, 6);
        for (std::size_t k = 0; k < w.size(); ++k) {
            CHECK(abs(w[k].imag()) <= Real("1e-10") * (1 + cabs(w[k])));
            CHECK(abs(w[k].real() - fixed[k]) <= Real("1e-10") * (1 + abs(fixed[k])));
        }
        const std::vector<Real> quad = mixed_moments_by_quadrature(s, 6);
        for (std::size_t k = 0; k < quad.size(); ++k)
            CHECK(abs(quad[k] - mixed[k]) <= Real("1e-10") * (1 + abs(mixed[k])));
    }

    TEST_CASE("resolvents decay like 1/x along rays")
    {
        const CurveSolution& s = reference();
        const MixedResolvent wp(s);
        for (const Real& angle : {Real("0.3"), Real("2.0"), Real("-1.2")}) {
            Real previous = -1;
            for (const char* r : {"1e2", "1e3", "1e4"}) {
                const Complex x = std::polar(Real(r), angle);
                const Real e3 = cabs(x * extract_w3(s, x) - Complex(1));
                const Real ep = cabs(x * wp(x) - Complex(1));
                CHECK(e3 * Real(r) < 100 * (1 + abs(s.support[0]) + abs(s.gamma)));
                CHECK(ep * Real(r) < 100 * (1 + abs(s.support[1])));
                if (previous >= 0)
                    CHECK(ep < previous);
                previous = ep;
            }
        }
    }

    TEST_CASE("w3 is real on the real axis right of all singularities")
    {
        const CurveSolution& s = reference();
        for (const char* x : {"40", "100", "1000"}) {
            const Complex w = extract_w3(s, Complex(Real(x)));
            CHECK(abs(w.imag()) <= Real("1e-30") * (1 + cabs(w)));
        }
    }

    TEST_CASE("continuation reaches a smaller coupling")
    {
        SolveStrategy st;
        st.kind = SolveStrategy::Kind::continuation;
        st.from = reference();
        const CurveSolution s = solve_curve(Couplings{Real(9), Real("0.5")}, st);
        CHECK(max_abs(condition_residuals(s.parametrization, s.potentials)) < Real("1e-10"));
        CHECK(s.trace.strategy == "continuation");
    }

    TEST_CASE("the solution at the critical couplings satisfies the conditions")
    {
        SolveStrategy st;
        st.kind = SolveStrategy::Kind::continuation;
        st.from = reference();
        const Couplings critical{2 + sqrt(Real(47)), sqrt(Real(105)) / 2};
        const CurveSolution s = solve_curve(critical, st);
        CHECK(max_abs(condition_residuals(s.parametrization, s.potentials)) < Real("1e-10"));
        // Branch points of x+ cluster at one point where x+ is close to zero.
        int near = 0;
        for (const BranchPoint& b : s.branch_points)
            if (cabs(b.x_plus) < Real("1e-3"))
                near += b.multiplicity;
        CHECK(near >= 3);
    }

    TEST_CASE("solution JSON round-trips the coefficients exactly")
    {
        const CurveSolution& s = reference();
        const io::Json j = io::to_json(s);
        CHECK(j.at("coefficients").at("alpha").size() == 6);
        CHECK(j.at("coefficients").at("beta").size() == 6);
        const io::Json reparsed = io::Json::parse(j.dump());
        CHECK(io::parametrization_from_json(reparsed).to_real() == s.parametrization.to_real());
    }
}
