// Acceptance run: one PASS/FAIL line per primary criterion, exit status 1 if
// any line fails. Runs at 50 digits.

#include "pottscurve/criticality.hpp"
#include "pottscurve/curve.hpp"
#include "pottscurve/oracle.hpp"

#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace pottscurve;

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail)
{
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name << ": " << detail << std::endl;
    if (!pass)
        ++failures;
}

std::string fmt(const Real& x) { return to_decimal(x, 6); }

Real relative(const Real& a, const Real& b) { return abs(a - b) / abs(b); }

Real max_abs(const std::vector<Complex>& v)
{
    Real m = 0;
    for (const Complex& z : v)
        m = std::max(m, cabs(z));
    return m;
}

CurveSolution continue_to(const CurveSolution& from, const Couplings& k)
{
    SolveStrategy st;
    st.kind = SolveStrategy::Kind::continuation;
    st.from = from;
    return solve_curve(k, st);
}

struct StructuralResult {
    int degree = 0;
    Real q_residual, identity_x3, identity_x_plus, normalization, smallest, inverse;
};

StructuralResult structural(const CurveSolution& s)
{
    StructuralResult out;
    const RationalFunction xp = s.parametrization.x_plus(), x3 = s.parametrization.x3();
    const SpectralCurve q = implicitize(s.parametrization);
    out.degree = q.degree_x3;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    out.q_residual = 0;
    for (int i = 0; i < 100; ++i) {
        const Complex z = std::polar(Real(Real("0.05") + 3 * Real(u(rng))), Real(2 * pi() * Real(u(rng))));
        if (cabs(z - Complex(1)) > Real("0.05"))
            out.q_residual = std::max(out.q_residual, q.scaled_residual(x3(z), xp(z)));
    }

    Real radius = 0;
    for (const Root& b : branch_points_of_x3(s.parametrization, Real("1e-30")))
        radius = std::max(radius, cabs(x3(b.value)));
    const std::vector<Complex> w3 = w3_laurent(s, 80);
    out.identity_x3 = 0;
    for (int i = 0; i < 16; ++i) {
        const Complex x = std::polar(Real(3 * radius), Real(2 * pi() * i / 16 + Real("0.1")));
        Complex sum(0), power = Complex(1) / x;
        for (const Complex& c : w3) {
            sum += c * power;
            power /= x;
        }
        const Complex lhs = s.potentials.u3_prime(x);
        out.identity_x3 = std::max(out.identity_x3, Real(cabs(lhs - x_plus_star(s, x) - sum) / (1 + cabs(lhs))));
    }

    const MixedResolvent w(s, 256);
    const Real mid = (s.support[0] + s.support[1]) / 2, half = (s.support[1] - s.support[0]) / 2;
    out.identity_x_plus = 0;
    for (int i = 0; i < 20; ++i) {
        const Complex x(mid + half * Real(i - 10) / 5, half * (1 + i % 3) * (i % 2 ? 1 : -1));
        const Complex lhs = s.potentials.u_plus_prime(x);
        out.identity_x_plus =
            std::max(out.identity_x_plus, Real(cabs(lhs - x3_star(s, x) - w(x) - w(-x)) / (1 + cabs(lhs))));
    }

    const SpectralDensity d = density(s, 256);
    out.normalization = d.normalization;
    out.smallest = 0;
    for (const Real& v : d.values)
        out.smallest = std::min(out.smallest, v);

    const Real r0 = cabs(s.parametrization.beta[0]) / (2 * radius);
    out.inverse = 0;
    for (int i = 0; i < 100; ++i) {
        const Complex z = std::polar(Real(r0 * Real(u(rng))), Real(2 * pi() * Real(u(rng))));
        const Complex back = preimage_physical_x3(s, x3(z));
        out.inverse = std::max(out.inverse, Real(cabs(xp(back) - xp(z)) / (1 + cabs(xp(z)))));
    }
    return out;
}

void critical_criteria()
{
    const CriticalPoint cp = locate_critical_point(CriticalOptions::defaults());
    const Real cc = 2 + sqrt(Real(47)), gc = sqrt(Real(105)) / 2;

    const Real ec = relative(cp.c_c, cc), eg = relative(cp.g_c, gc);
    report("critical couplings", ec <= Real("1e-8") && eg <= Real("1e-8"),
           "c_c = " + to_decimal(cp.c_c, 14) + " (rel err " + fmt(ec) + "), g_c = " + to_decimal(cp.g_c, 14) +
               " (rel err " + fmt(eg) + "), formulations agree to " + fmt(cp.path_difference));

    const Real x3_expected = -(4 + cp.c_c) / (2 * cp.g_c);
    const Real ex3 = relative(cp.x3_c, x3_expected);
    report("singularity location", abs(cp.x_plus_c) <= Real("1e-6") && ex3 <= Real("1e-6"),
           "x+_c = " + fmt(cp.x_plus_c) + ", x3_c = " + to_decimal(cp.x3_c, 12) + " (rel err " + fmt(ex3) + ")");

    report("Taylor coefficients of Q vanish below total order 5", cp.taylor_residual <= Real("1e-6"),
           "scaled residual " + fmt(cp.taylor_residual) + ", deg_x3 Q = " + std::to_string(cp.q_degree_x3));

    const bool edge = abs(cp.edge_exponent - Real(6) / 5) <= Real("0.02") && cp.fit.stability < Real("0.02") &&
                      cp.fit.windows.size() == 5;
    const bool control = abs(cp.off_critical_fit.exponent - Real("0.5")) <= Real("0.05");
    report("edge exponent", edge && control,
           "critical " + to_decimal(cp.edge_exponent, 8) + " (stability " + fmt(cp.fit.stability) + " over " +
               std::to_string(cp.fit.windows.size()) + " windows), off-critical " +
               to_decimal(cp.off_critical_fit.exponent, 6));

    bool members = !cp.spectrum.members.empty(), others = !cp.spectrum.non_members.empty();
    Real worst_member = 0, least_other = -1;
    for (const auto& [mu, r] : cp.spectrum.members) {
        members = members && r < Real("1e-10");
        worst_member = std::max(worst_member, r);
    }
    for (const auto& [mu, r] : cp.spectrum.non_members) {
        others = others && r > Real("1e-2");
        least_other = least_other < 0 ? r : std::min(least_other, r);
    }
    std::ostringstream minima;
    for (const Real& m : cp.spectrum.scan_minima)
        minima << ' ' << to_decimal(m, 3);
    report("mu spectrum", members && others && cp.spectrum.minima_on_spectrum,
           "members max residual " + fmt(worst_member) + ", non-members min residual " + fmt(least_other) +
               ", scan minima:" + minima.str());

    report("gamma_s", abs(cp.gamma_s + Real(1) / 5) <= Real("1e-6") && abs(cp.mu - Real(12) / 5) <= Real("1e-6"),
           "gamma_s = " + to_decimal(cp.gamma_s, 10) + " at mu = " + to_decimal(cp.mu, 10) + " via 1 - mu/2");
}

void oracle_criteria(const CurveSolution& anchor)
{
    const Rational c(9);
    std::vector<MomentSeries> series = moment_series_range(MomentKind::fixed, 4, oracle_max_order, c);
    for (MomentSeries& m : moment_series_range(MomentKind::mixed, 4, oracle_max_order, c))
        series.push_back(std::move(m));
    const CurveSolution s1 = continue_to(anchor, Couplings{Real(9), Real("0.25")});
    const CurveSolution s2 = continue_to(s1, Couplings{Real(9), Real("0.125")});
    const ComparisonReport r = compare_with_curve(series, {s1, s2});
    Real worst = 0;
    for (const ComparisonRow& row : r.rows)
        if (row.g == s1.couplings.g)
            worst = std::max(worst, row.deviation);
    bool rates = !r.rates.empty();
    Real worst_rate = 0;
    for (const ComparisonRate& rate : r.rates) {
        const Real off = abs(rate.observed_order - rate.expected_order);
        worst_rate = std::max(worst_rate, off);
        rates = rates && off <= Real("0.5");
    }
    report("oracle equivalence", worst < Real("1e-4") && rates,
           "c = 9, g = 0.25: max relative deviation " + fmt(worst) + " for k <= 4; halving g: decay orders within " +
               fmt(worst_rate) + " of the first omitted order (" + std::to_string(r.rates.size()) + " moments)");
}

void gaussian_criteria()
{
    bool exact = true;
    for (const Rational& c : {Rational(3), Rational(5, 2), Rational(9)}) {
        const auto cov = gaussian_covariance(c);
        for (int k = 0; k <= 8; ++k) {
            exact = exact && moment_series(MomentKind::fixed, k, 0, c).coefficients[0] == semicircle_moment(cov.t1, k);
            exact = exact && moment_series(MomentKind::mixed, k, 0, c).coefficients[0] == semicircle_moment(cov.t2, k);
        }
    }
    const EnumerationCount e = enumerate_word("3333", 0, Rational(3));
    const Rational t = gaussian_covariance(Rational(3)).t1;
    const bool filter = e.planar == 2 * t * t && e.all == 3 * t * t;
    report("Gaussian properties", exact && filter,
           std::string("order-0 moments ") + (exact ? "equal" : "differ from") +
               " Catalan(k/2) t^(k/2) for k <= 8; k = 4 enumeration: planar " + e.planar.str() + " (2t^2), all " +
               e.all.str() + " (3t^2)");
}

void structural_criteria(const std::vector<CurveSolution>& solutions)
{
    bool pass = true;
    std::ostringstream detail;
    for (const CurveSolution& s : solutions) {
        const StructuralResult r = structural(s);
        const bool ok = r.degree == 5 && r.q_residual < Real("1e-8") && r.identity_x3 < Real("1e-8") &&
                        r.identity_x_plus < Real("1e-8") && abs(r.normalization - 1) <= Real("1e-6") &&
                        r.smallest >= Real("-1e-10") && r.inverse < Real("1e-8");
        pass = pass && ok;
        detail << "[g = " << to_decimal(s.couplings.g, 3) << ": deg " << r.degree << ", Q " << fmt(r.q_residual)
               << ", identities " << fmt(r.identity_x3) << "/" << fmt(r.identity_x_plus) << ", norm-1 "
               << fmt(r.normalization - 1) << ", min rho " << fmt(r.smallest) << ", inverse " << fmt(r.inverse)
               << "] ";
    }
    report("structural invariants", pass, detail.str());
}

} // namespace

int main()
{
    PrecisionScope precision(50);
    try {
        SolveStrategy st;
        st.budget = 200;
        const CurveSolution anchor = solve_curve(Couplings{Real(9), Real(1)}, st);
        critical_criteria();
        oracle_criteria(anchor);
        gaussian_criteria();
        structural_criteria({anchor, continue_to(anchor, Couplings{Real(9), Real("0.25")})});
    } catch (const std::exception& e) {
        report("run", false, std::string("aborted: ") + e.what());
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
