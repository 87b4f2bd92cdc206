#include "pottscurve/curve.hpp"
#include "pottscurve/newton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace pottscurve {

namespace {

Vector real_residuals(const Vector& x, const EffectivePotentials& e)
{
    const std::vector<Complex> c = condition_residuals(RationalParametrization::from_real(x), e);
    Vector out;
    out.reserve(c.size());
    for (const Complex& z : c)
        out.push_back(z.real());
    return out;
}

Real coefficient_scale(const Vector& x)
{
    Real s = 0;
    for (const Real& v : x)
        if (abs(v) > s)
            s = abs(v);
    return s;
}

// Physical solutions are invariant under z -> 1/z, which maps x+ to -x+ and
// exchanges the sheet pairs at z = 0 and z = infinity. Multistart seeds
// live on that 6-dimensional slice.
Vector embed_symmetric(const Vector& h)
{
    const Real &a0 = h[0], &a1 = h[1], &a2 = h[2], &b0 = h[3], &b1 = h[4], &b2 = h[5];
    return {a0, a1, a2, a2, a1, a0, b0, b1, b2, b1 + 2 * (a1 - a2), b0 + 2 * (a0 - a1), -2 * a0};
}

Polynomial alpha_polynomial(const RationalParametrization& p)
{
    return Polynomial(std::vector<Complex>(p.alpha.begin(), p.alpha.end()));
}

Polynomial beta_polynomial(const RationalParametrization& p)
{
    return Polynomial(std::vector<Complex>(p.beta.begin(), p.beta.end()));
}

void record_jacobian(SolverTrace& t, const Vector& x, const EffectivePotentials& e)
{
    const Matrix j = jacobian_fd([&](const Vector& v) { return real_residuals(v, e); }, x);
    const Vector sv = singular_values(j);
    t.jacobian_min_singular_value = sv.back();
    t.jacobian_condition = sv.back() > 0 ? sv.front() / sv.back() : Real(0);
    const Real cut = sv.front() * sqrt(epsilon());
    t.jacobian_nullity = static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](const Real& s) { return s <= cut; }));
    if (t.jacobian_nullity > 0)
        t.notes.push_back("Jacobian has a flat direction at the solution");
}

// Positive definiteness of the Hankel matrix of the fixed-color moments, a
// necessary condition for them to be moments of a positive measure.
bool hankel_positive(const std::vector<Real>& m, int n)
{
    std::vector<Real> l(static_cast<std::size_t>(n * n), Real(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            Real s = m[static_cast<std::size_t>(i + j)];
            for (int k = 0; k < j; ++k)
                s -= l[static_cast<std::size_t>(i * n + k)] * l[static_cast<std::size_t>(j * n + k)];
            if (i == j) {
                if (s <= 0)
                    return false;
                l[static_cast<std::size_t>(i * n + i)] = sqrt(s);
            } else {
                l[static_cast<std::size_t>(i * n + j)] = s / l[static_cast<std::size_t>(j * n + j)];
            }
        }
    }
    return true;
}

struct Attempt {
    Vector x;
    bool converged = false;
    int iterations = 0;
    Real norm;
};

Attempt polish(const Vector& x0, const EffectivePotentials& e, int max_iterations)
{
    NewtonOptions o;
    o.max_iterations = max_iterations;
    o.tolerance = default_tolerance(coefficient_scale(x0));
    const NewtonResult r = newton_solve([&](const Vector& v) { return real_residuals(v, e); }, x0, o);
    Attempt a{r.x, false, r.iterations, r.norm};
    a.converged = r.norm <= default_tolerance(coefficient_scale(r.x));
    return a;
}

std::string describe(const Real& v) { return to_decimal(v, 6); }

// At a merging point the root is multiple and the Jacobian singular: Newton
// converges only linearly and a line search stalls on the oscillating
// residual. Plain least-squares steps usually still reach the residual
// tolerance; a damped descent covers targets rounded past the fold.
Attempt singular_polish(Vector x, const EffectivePotentials& e, int max_iterations)
{
    const ResidualFn f = [&](const Vector& v) { return real_residuals(v, e); };
    Attempt best{x, false, 0, norm_inf(f(x))};
    for (int it = 1; it <= max_iterations; ++it) {
        const Vector r = f(x);
        Vector rhs(r.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            rhs[i] = -r[i];
        const LinearSolve step = least_squares(jacobian_fd(f, x), rhs);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += step.x[i];
        const Real n = norm_inf(f(x));
        if (n < best.norm)
            best = {x, false, it, n};
        if (n <= default_tolerance(coefficient_scale(x))) {
            best.converged = true;
            return best;
        }
    }
    // Just past the fold there is no exact real root and the undamped steps
    // oscillate; a monotone Levenberg-Marquardt descent still reaches the
    // least-squares minimum, whose residual is of the size of the overshoot.
    x = best.x;
    Real lambda = Real("1e-6");
    Real current = best.norm;
    for (int it = 1; it <= max_iterations; ++it) {
        const Vector r = f(x);
        const Matrix j = jacobian_fd(f, x);
        const std::size_t m = j.rows(), n = j.cols();
        Matrix a(m + n, n);
        Vector rhs(m + n, Real(0));
        for (std::size_t i = 0; i < m; ++i) {
            rhs[i] = -r[i];
            for (std::size_t k = 0; k < n; ++k)
                a(i, k) = j(i, k);
        }
        const Real damping = sqrt(lambda);
        for (std::size_t k = 0; k < n; ++k)
            a(m + k, k) = damping;
        const LinearSolve step = least_squares(a, rhs);
        Vector trial = x;
        for (std::size_t i = 0; i < n; ++i)
            trial[i] += step.x[i];
        const Real tn = norm_inf(f(trial));
        if (tn < current) {
            x = trial;
            current = tn;
            lambda = std::max(Real(lambda / 3), Real(epsilon()));
            if (tn <= default_tolerance(coefficient_scale(x)))
                return {x, true, best.iterations + it, tn};
        } else {
            lambda *= 4;
            if (lambda > Real("1e20"))
                break;
        }
    }
    return best;
}

// Root clustering radius used when the tight pass leaves complex roots.
Real merge_tolerance() { return Real("1e-3"); }

CurveSolution solve_from_seed(const Couplings& k, const EffectivePotentials& e, const RationalParametrization& seed,
                              const SolveStrategy& st)
{
    seed.validate();
    const Attempt a = polish(seed.to_real(), e, st.max_newton_iterations);
    if (!a.converged)
        throw NonConvergence("seed did not converge: best residual " + describe(a.norm) + " after " +
                             std::to_string(a.iterations) + " iterations");
    CurveSolution s = classify_solution(RationalParametrization::from_real(a.x), e);
    s.trace.strategy = "seed";
    s.trace.newton_iterations = a.iterations;
    (void)k;
    return s;
}

CurveSolution solve_continuation(const Couplings& k, const SolveStrategy& st)
{
    const CurveSolution& from = *st.from;
    const Couplings k0 = from.couplings;
    // Near a merging point the coefficients vary like (1 - t)^(1/5), so the
    // path is followed in u with t = 1 - u^5 when it is meant to stop short.
    const bool fold = st.stop_fraction > 0;
    const Real u_end = fold ? pow(st.stop_fraction, Real(1) / 5) : Real(1);
    auto fraction = [&](const Real& u) { return fold ? 1 - pow(1 - u, 5) : u; };
    auto at = [&](const Real& u) {
        const Real t = fraction(u);
        return Couplings{k0.c + t * (k.c - k0.c), k0.g + t * (k.g - k0.g)};
    };
    const Real end = fold ? 1 - u_end : Real(1);

    SolverTrace trace;
    trace.strategy = "continuation";
    Real t = 0;
    Vector x = from.parametrization.to_real();
    Real t_prev = -1;
    Vector x_prev;
    Real h = Real("0.05");
    const Real h_min = Real("1e-10");
    while (t < end) {
        const Real next = (t + h > end) ? end : t + h;
        Vector pred = x;
        if (!x_prev.empty()) {
            const Real r = (next - t) / (t - t_prev);
            for (std::size_t i = 0; i < x.size(); ++i)
                pred[i] = x[i] + r * (x[i] - x_prev[i]);
        }
        const EffectivePotentials e = derive_effective_potentials(at(next));
        const Attempt a = polish(pred, e, 12);
        bool ok = a.converged && a.iterations <= 8;
        if (ok) {
            // Reject steps whose correction is large compared with the
            // predictor move: the corrector likely jumped branches.
            Real moved = 0, corr = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                moved += (pred[i] - x[i]) * (pred[i] - x[i]);
                corr += (a.x[i] - pred[i]) * (a.x[i] - pred[i]);
            }
            if (!x_prev.empty() && corr > moved)
                ok = false;
        }
        if (ok) {
            t_prev = t;
            x_prev = x;
            x = a.x;
            t = next;
            ++trace.continuation_steps;
            trace.newton_iterations += a.iterations;
            if (a.iterations <= 4)
                h = std::min(Real(h * Real("1.5")), Real("0.2"));
        } else {
            ++trace.continuation_rejections;
            h /= 2;
            if (h < h_min && !fold && 1 - t < Real("1e-6")) {
                const EffectivePotentials e = derive_effective_potentials(at(end));
                const Attempt a = singular_polish(x, e, 200);
                if (a.converged) {
                    x = a.x;
                    t = end;
                    trace.newton_iterations += a.iterations;
                    trace.notes.push_back("end point reached by undamped Gauss-Newton: singular Jacobian");
                    break;
                }
            }
            if (h < h_min) {
                const Couplings last = at(t);
                throw ContinuationStall("continuation stalled at c = " + describe(last.c) + ", g = " +
                                        describe(last.g) + " (path fraction " + describe(fraction(t)) + ")");
            }
        }
    }
    const Couplings reached = at(end);
    CurveSolution s = classify_solution(RationalParametrization::from_real(x), derive_effective_potentials(reached));
    s.trace.strategy = trace.strategy;
    s.trace.continuation_steps = trace.continuation_steps;
    s.trace.continuation_rejections = trace.continuation_rejections;
    s.trace.newton_iterations = trace.newton_iterations;
    s.trace.notes.insert(s.trace.notes.end(), trace.notes.begin(), trace.notes.end());
    return s;
}

CurveSolution solve_multistart(const EffectivePotentials& e, const SolveStrategy& st)
{
    std::mt19937_64 rng(st.rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> exponent(-3.0, 2.0);
    int converged = 0;
    Real best = -1;
    std::vector<std::string> rejected;
    std::map<std::string, int> reasons;
    for (int attempt = 1; attempt <= st.budget; ++attempt) {
        Vector h(6);
        for (Real& v : h)
            v = Real(normal(rng) * std::pow(10.0, exponent(rng)));
        NewtonOptions o;
        o.max_iterations = 100;
        o.tolerance = pow(epsilon(), Real("0.5"));
        const NewtonResult r =
            newton_solve([&](const Vector& v) { return real_residuals(embed_symmetric(v), e); }, h, o);
        if (best < 0 || r.norm < best)
            best = r.norm;
        if (!r.converged)
            continue;
        const Attempt a = polish(embed_symmetric(r.x), e, 30);
        if (!a.converged)
            continue;
        ++converged;
        try {
            CurveSolution s = classify_solution(RationalParametrization::from_real(a.x), e);
            s.trace.strategy = "multistart";
            s.trace.multistart_attempts = attempt;
            s.trace.multistart_converged = converged;
            s.trace.newton_iterations = r.iterations + a.iterations;
            s.trace.seed = st.rng_seed;
            s.trace.notes = std::move(rejected);
            return s;
        } catch (const NumericalError& ex) {
            rejected.push_back(std::string("attempt ") + std::to_string(attempt) + " rejected: " + ex.what());
            const std::string what = ex.what();
            ++reasons[what.substr(0, what.find(':'))];
        }
    }
    std::ostringstream msg;
    msg << "multistart budget of " << st.budget << " exhausted: " << converged
        << " converged, none physical; best residual " << describe(best);
    for (const auto& [why, count] : reasons)
        msg << "; " << count << " x " << why;
    throw NoPhysicalSolution(msg.str());
}

Polynomial x_plus_branch_polynomial(const RationalParametrization& p)
{
    // d/dz [A / (z^2 (z-1))] = z (A' z (z-1) - A (3z - 2)) / (z^4 (z-1)^2)
    const Polynomial a = alpha_polynomial(p);
    return a.derivative() * Polynomial{Complex(0), Complex(-1), Complex(1)} - a * Polynomial{Complex(-2), Complex(3)};
}

Polynomial x3_branch_polynomial(const RationalParametrization& p)
{
    // d/dz [B / (z (z-1)^2)] = (B' z (z-1) - B (3z - 1)) / (z^2 (z-1)^3)
    const Polynomial b = beta_polynomial(p);
    return b.derivative() * Polynomial{Complex(0), Complex(-1), Complex(1)} - b * Polynomial{Complex(-1), Complex(3)};
}

} // namespace

std::vector<Root> branch_points_of_x_plus(const RationalParametrization& p, const Real& tol)
{
    return roots(x_plus_branch_polynomial(p), tol);
}

std::vector<Root> branch_points_of_x3(const RationalParametrization& p, const Real& tol)
{
    return roots(x3_branch_polynomial(p), tol);
}

CurveSolution classify_solution(const RationalParametrization& p, const EffectivePotentials& e)
{
    p.validate();
    const Vector x = p.to_real();
    for (std::size_t i = 0; i < 6; ++i)
        if (abs(p.alpha[i].imag()) > 0 || abs(p.beta[i].imag()) > 0)
            throw NonPhysicalSolution("complex coefficients: conjugate-pair solutions are not physical");

    CurveSolution s;
    s.parametrization = p;
    s.couplings = e.couplings;
    s.potentials = e;
    s.residual_norm = norm_inf(real_residuals(x, e));

    const RationalFunction xp = p.x_plus();
    std::vector<Root> bp = branch_points_of_x_plus(p, pow(epsilon(), Real("0.75")));
    const Real real_tol = pow(epsilon(), Real(1) / 3);
    auto is_real = [&](const Root& r) { return abs(r.value.imag()) <= real_tol * (1 + cabs(r.value)); };
    if (!std::all_of(bp.begin(), bp.end(), is_real)) {
        // At a merging point the zeros of dx+/dz split under rounding into a
        // small complex cluster; accept it as one real branch point.
        std::vector<Root> merged = branch_points_of_x_plus(p, merge_tolerance());
        if (std::all_of(merged.begin(), merged.end(), is_real)) {
            bp = std::move(merged);
            s.trace.notes.push_back("near-critical: clustered branch points merged");
        }
    }
    std::vector<Real> zs;
    std::optional<Real> cluster;
    for (const Root& r : bp) {
        if (!is_real(r))
            throw NonPhysicalSolution("branch point of x+ off the real axis at z = " + describe(r.value.real()) +
                                      " + " + describe(r.value.imag()) + "i");
        for (int m = 0; m < r.multiplicity; ++m)
            zs.push_back(r.value.real());
        if (r.multiplicity > 1)
            cluster = r.value.real();
        s.branch_points.push_back({Complex(r.value.real()), xp(Complex(r.value.real())), r.multiplicity});
    }
    std::sort(zs.begin(), zs.end());

    std::optional<Real> zb, za, zg;
    for (const Real& z : zs)
        if (z > 0 && z < 1)
            zb = z; // largest in (0, 1)
    if (cluster && abs(*cluster + 1) <= merge_tolerance() * 2) {
        // The support edge and gamma have merged at the fixed point of z -> 1/z.
        za = zg = *cluster;
    } else {
        for (const Real& z : zs)
            if (z > -1 && z < 0 && !za)
                za = z; // smallest in (-1, 0)
        if (za) {
            std::vector<Real> inner;
            for (const Real& z : zs)
                if (z > *za && z < 0)
                    inner.push_back(z);
            if (inner.size() != 1)
                throw AmbiguousBranch("expected one branch point between the support edge and z = 0, found " +
                                      std::to_string(inner.size()));
            zg = inner.front();
        }
    }
    if (!za || !zb)
        throw NonPhysicalSolution("no real branch points bracketing the support");
    s.z_a = Complex(*za);
    s.z_b = Complex(*zb);
    s.z_gamma = Complex(*zg);
    s.support = {xp(s.z_a).real(), xp(s.z_b).real()};
    s.gamma = xp(s.z_gamma).real();
    if (!(s.gamma <= s.support[0] && s.support[0] < s.support[1]))
        throw NonPhysicalSolution("edge ordering gamma < a < b violated: gamma = " + describe(s.gamma) +
                                  ", a = " + describe(s.support[0]) + ", b = " + describe(s.support[1]));

    const std::vector<Real> m = planar_moments(s, MomentKind::fixed, 6);
    if (!hankel_positive(m, 4))
        throw NonPhysicalSolution("fixed-color moments are not those of a positive measure");

    const SpectralDensity rho = density(s, 256);
    const Real lowest = *std::min_element(rho.values.begin(), rho.values.end());
    if (lowest < Real("-1e-10"))
        throw NonPhysicalSolution("negative spectral density " + describe(lowest) + ": wrong branch or phase");
    if (abs(rho.normalization - 1) > Real("1e-6"))
        throw NonPhysicalSolution("density normalization " + describe(rho.normalization) + " differs from 1");

    record_jacobian(s.trace, x, e);
    return s;
}

CurveSolution solve_curve(const Couplings& k, const SolveStrategy& st)
{
    validate_couplings(k, true);
    if (st.budget < 1)
        throw InvalidInput("solver budget must be at least 1");
    const EffectivePotentials e = derive_effective_potentials(k);
    switch (st.kind) {
    case SolveStrategy::Kind::seed:
        if (!st.seed)
            throw InvalidInput("seed strategy without a seed");
        return solve_from_seed(k, e, *st.seed, st);
    case SolveStrategy::Kind::continuation:
        if (!st.from)
            throw InvalidInput("continuation strategy without a start solution");
        return solve_continuation(k, st);
    case SolveStrategy::Kind::multistart:
        break;
    }
    return solve_multistart(e, st);
}

} // namespace pottscurve
