#include "pottscurve/criticality.hpp"
#include "pottscurve/newton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pottscurve {

namespace {

std::string describe(const Real& v) { return to_decimal(v, 6); }

void append_conditions(Vector& out, const RationalParametrization& p, const EffectivePotentials& e)
{
    for (const Complex& z : condition_residuals(p, e))
        out.push_back(z.real());
}

Vector head(const Vector& x, std::size_t n) { return Vector(x.begin(), x.begin() + static_cast<long>(n)); }

// Unknowns: 12 coefficients, c, g, z_c. Equations: the curve conditions and
// the vanishing of the first four derivatives of x+ and x3 at z_c.
Vector merging_residual(const Vector& x)
{
    const EffectivePotentials e = derive_effective_potentials({x[12], x[13]});
    const RationalParametrization p = RationalParametrization::from_real(head(x, 12));
    Vector r;
    append_conditions(r, p, e);
    const SpherePoint at = SpherePoint::at(Complex(x[14]));
    const LocalExpansion ep = expand_at(p.x_plus(), at, 4);
    const LocalExpansion e3 = expand_at(p.x3(), at, 4);
    for (int k = 1; k <= 4; ++k)
        r.push_back(ep.coefficient(k).real());
    for (int k = 1; k <= 4; ++k)
        r.push_back(e3.coefficient(k).real());
    return r;
}

// Unknowns: 12 coefficients, c, g, X3, X+. Equations: the curve conditions
// and all Taylor coefficients of Q with n + m < 5 at (X3, X+).
Vector singularity_residual(const Vector& x)
{
    const EffectivePotentials e = derive_effective_potentials({x[12], x[13]});
    const RationalParametrization p = RationalParametrization::from_real(head(x, 12));
    Vector r;
    append_conditions(r, p, e);
    const SpectralCurve q = implicitize(p);
    const auto t = q.taylor(Complex(x[14]), Complex(x[15]));
    for (int n = 0; n < 5; ++n)
        for (int m = 0; n + m < 5; ++m) {
            const bool present = n <= q.degree_x3 && m <= q.degree_x_plus;
            r.push_back(present ? t[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)].real() : Real(0));
        }
    return r;
}

Real scale_of(const Vector& x)
{
    Real s = 0;
    for (const Real& v : x)
        s = std::max(s, Real(abs(v)));
    return s;
}

int vanishing_order(const LocalExpansion& e, int max_order)
{
    Real scale = 0;
    for (int k = 1; k <= max_order; ++k)
        scale = std::max(scale, cabs(e.coefficient(k)));
    const Real tol = sqrt(epsilon()) * scale;
    for (int k = 1; k <= max_order; ++k)
        if (cabs(e.coefficient(k)) > tol)
            return k;
    throw OrderMismatch("vanishing order exceeds the expansion depth");
}

Real slope(const std::vector<Real>& xs, const std::vector<Real>& ys)
{
    const Real n = Real(static_cast<long>(xs.size()));
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const Real d = n * sxx - sx * sx;
    if (d == 0)
        throw UnstableFit("degenerate regression window");
    return (n * sxy - sx * sy) / d;
}

// Distinct singular points of the parametrization other than those merged
// at z_c: the poles and the zeros of dx+/dz.
std::vector<Complex> other_singular_points(const CurveSolution& s, const Complex& z_c, const Real& merged)
{
    std::vector<Complex> pts{Complex(0), Complex(1)};
    for (const Root& r : branch_points_of_x_plus(s.parametrization, Real("1e-6")))
        if (cabs(r.value - z_c) > merged)
            pts.push_back(r.value);
    return pts;
}

int root_multiplicity_near(const std::vector<Root>& rs, const Complex& z)
{
    int best = 0;
    Real dist = -1;
    for (const Root& r : rs)
        if (dist < 0 || cabs(r.value - z) < dist) {
            dist = cabs(r.value - z);
            best = r.multiplicity;
        }
    return best;
}

Complex cluster_center(const CurveSolution& s)
{
    // The tightest group of four consecutive real branch points.
    std::vector<Real> zs;
    for (const BranchPoint& b : s.branch_points)
        for (int m = 0; m < b.multiplicity; ++m)
            zs.push_back(b.z.real());
    std::sort(zs.begin(), zs.end());
    if (zs.size() < 4)
        throw MultipleSingularities("fewer than four branch points to merge");
    std::size_t best = 0;
    for (std::size_t i = 1; i + 3 < zs.size(); ++i)
        if (zs[i + 3] - zs[i] < zs[best + 3] - zs[best])
            best = i;
    return Complex((zs[best] + zs[best + 1] + zs[best + 2] + zs[best + 3]) / 4);
}

MergingResult run_formulation(const std::string& name, const ResidualFn& f, Vector x0, int max_iterations,
                              const std::function<void(MergingResult&, const Vector&)>& finish)
{
    NewtonOptions o;
    o.max_iterations = max_iterations;
    o.tolerance = default_tolerance(scale_of(x0));
    const NewtonResult r = newton_solve(f, std::move(x0), o);
    if (!r.converged)
        throw NonConvergence("merging formulation " + name + " did not converge: residual " + describe(r.norm) +
                             " after " + std::to_string(r.iterations) + " iterations");
    MergingResult m;
    m.formulation = name;
    m.c = r.x[12];
    m.g = r.x[13];
    m.iterations = r.iterations;
    m.residual = r.norm;
    m.coefficients = head(r.x, 12);
    finish(m, r.x);
    return m;
}

// The Taylor conditions on Q degenerate at a unibranch five-fold point: the
// Jacobian loses rank at the solution and Gauss-Newton converges only
// linearly, with an oscillating residual that defeats a line search. Plain
// steps are taken and convergence is judged on the step size in (c, g). Its
// attainable accuracy is about eps^(1/3), which is what the threshold and
// the cross-check tolerance follow at low precision.
Real singular_accuracy() { return pow(epsilon(), Real(1) / 3); }

MergingResult run_singular_formulation(Vector x, int max_iterations)
{
    const Real stop = std::max(Real("1e-12"), singular_accuracy());
    MergingResult m;
    m.formulation = "curve singularity";
    std::vector<Real> changes;
    bool done = false;
    for (int it = 0; it < max_iterations && !done; ++it) {
        const Vector f = singularity_residual(x);
        const Matrix j = jacobian_fd(singularity_residual, x);
        Vector rhs(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            rhs[i] = -f[i];
        const LinearSolve step = least_squares(j, rhs);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += step.x[i];
        m.iterations = it + 1;
        changes.push_back(std::max(Real(abs(step.x[12]) / abs(x[12])), Real(abs(step.x[13]) / abs(x[13]))));
        const std::size_t n = changes.size();
        done = n >= 2 && changes[n - 1] < stop && changes[n - 2] < stop;
    }
    if (!done)
        throw NonConvergence("merging formulation curve singularity did not settle after " +
                             std::to_string(max_iterations) + " iterations");
    m.c = x[12];
    m.g = x[13];
    m.x3_c = x[14];
    m.x_plus_c = x[15];
    m.z_c = Complex(0);
    m.residual = norm_inf(singularity_residual(x));
    m.coefficients = head(x, 12);
    return m;
}

CurveSolution critical_solution(const MergingResult& b, std::vector<std::string>& notes)
{
    const RationalParametrization p = RationalParametrization::from_real(b.coefficients);
    const EffectivePotentials e = derive_effective_potentials({b.c, b.g});
    try {
        return classify_solution(p, e);
    } catch (const NumericalError& ex) {
        notes.push_back(std::string("critical solution kept unclassified: ") + ex.what());
    }
    CurveSolution s;
    s.parametrization = p;
    s.couplings = e.couplings;
    s.potentials = e;
    s.z_a = s.z_gamma = b.z_c;
    s.gamma = b.x_plus_c;
    s.residual_norm = b.residual;
    for (const Root& r : branch_points_of_x_plus(p, Real("1e-6")))
        s.branch_points.push_back({r.value, p.x_plus()(r.value), r.multiplicity});
    return s;
}

Real reround(const Real& x) { return parse_real(to_decimal(x)); }

// The singular part of x3 near z_c is O(r^6) against O(1) values, so the
// multiplicities and the exponent fit need more digits than a low-precision
// run carries. They are taken from the merging system re-polished at
// local_structure_digits and rounded back to the working precision.
constexpr unsigned local_structure_digits = 40;

void local_structure(CriticalPoint& cp, const MergingResult& b, const CriticalOptions& options)
{
    const unsigned working = working_digits();
    ExponentFit fit;
    int mult_xp = 0, mult_x3 = 0;
    std::vector<std::string> notes;
    {
        PrecisionScope scope(std::max(working, local_structure_digits));
        MergingResult m = b;
        if (working < local_structure_digits) {
            Vector x;
            for (const Real& v : b.coefficients)
                x.push_back(reround(v));
            x.push_back(reround(b.c));
            x.push_back(reround(b.g));
            x.push_back(reround(b.z_c.real()));
            m = run_formulation("branch-point merging", merging_residual, x, options.max_iterations,
                                [](MergingResult& r, const Vector& v) {
                                    const RationalParametrization q = RationalParametrization::from_real(head(v, 12));
                                    r.z_c = Complex(v[14]);
                                    r.x_plus_c = q.x_plus()(r.z_c).real();
                                    r.x3_c = q.x3()(r.z_c).real();
                                });
            notes.push_back("local structure re-polished at " + std::to_string(local_structure_digits) + " digits");
        }
        const RationalParametrization p = RationalParametrization::from_real(m.coefficients);
        mult_xp = root_multiplicity_near(branch_points_of_x_plus(p, Real("1e-6")), m.z_c);
        mult_x3 = root_multiplicity_near(branch_points_of_x3(p, Real("1e-6")), m.z_c);
        const CurveSolution crit = critical_solution(m, notes);
        const ExponentFit f = edge_exponent(crit, m.z_c, default_window(crit, m.z_c));
        fit = f;
    }
    fit.exponent = reround(fit.exponent);
    fit.stability = reround(fit.stability);
    fit.kappa = reround(fit.kappa);
    for (FitWindow& w : fit.windows) {
        w.r_min = reround(w.r_min);
        w.r_max = reround(w.r_max);
        w.slope = reround(w.slope);
    }
    cp.fit = fit;
    cp.multiplicity_dx_plus = mult_xp;
    cp.multiplicity_dx3 = mult_x3;
    cp.notes.insert(cp.notes.end(), notes.begin(), notes.end());
}

} // namespace

std::array<Real, 2> default_window(const CurveSolution& s, const Complex& z_c)
{
    Real d = -1;
    for (const Complex& p : other_singular_points(s, z_c, Real("1e-6")))
        if (d < 0 || cabs(p - z_c) < d)
            d = cabs(p - z_c);
    const Real r_max = d / 100;
    return {r_max / 1000, r_max};
}

ExponentFit edge_exponent(const CurveSolution& s, const Complex& z_c, const std::array<Real, 2>& window, int windows)
{
    const Real r_min = window[0], r_max = window[1];
    if (!(r_min > 0 && r_max > r_min) || windows < 2)
        throw InvalidInput("edge_exponent: invalid window");
    for (const Complex& p : other_singular_points(s, z_c, r_min))
        if (cabs(p - z_c) < 2 * r_max)
            throw OutOfDomain("edge_exponent: window reaches another singular point at z = " + describe(p.real()));

    const RationalFunction xp = s.parametrization.x_plus();
    const RationalFunction x3 = s.parametrization.x3();
    const SpherePoint at = SpherePoint::at(z_c);
    const LocalExpansion ep = expand_at(xp, at, 12);
    const LocalExpansion e3 = expand_at(x3, at, 12);
    ExponentFit fit;
    fit.order_x_plus = vanishing_order(ep, 12);
    fit.order_x3 = vanishing_order(e3, 12);
    fit.kappa = 0;
    Complex kappa(0);
    fit.order_singular = fit.order_x3;
    if (fit.order_x3 == fit.order_x_plus) {
        kappa = e3.coefficient(fit.order_x3) / ep.coefficient(fit.order_x_plus);
        fit.kappa = kappa.real();
        fit.subtracted = true;
        fit.order_singular = vanishing_order(e3 - kappa * ep, 12);
    }

    const Complex xp0 = xp(z_c), x30 = x3(z_c);
    const int per = 10;
    const int total = per * windows;
    std::vector<Real> lx, ly;
    for (int j = 0; j < total; ++j) {
        const Real r = r_min * pow(r_max / r_min, Real(j) / Real(total - 1));
        const Complex z = z_c + Complex(r);
        const Complex dp = xp(z) - xp0;
        const Complex d3 = x3(z) - x30 - kappa * dp;
        lx.push_back(log(cabs(dp)));
        ly.push_back(log(cabs(d3)));
    }
    fit.exponent = slope(lx, ly);
    Real lo = 0, hi = 0;
    for (int w = 0; w < windows; ++w) {
        const auto b = static_cast<long>(w * per), e = static_cast<long>((w + 1) * per);
        const Real sl = slope(std::vector<Real>(lx.begin() + b, lx.begin() + e), std::vector<Real>(ly.begin() + b, ly.begin() + e));
        const Real r0 = r_min * pow(r_max / r_min, Real(w * per) / Real(total - 1));
        const Real r1 = r_min * pow(r_max / r_min, Real((w + 1) * per - 1) / Real(total - 1));
        fit.windows.push_back({r0, r1, sl});
        if (w == 0 || sl < lo)
            lo = sl;
        if (w == 0 || sl > hi)
            hi = sl;
    }
    fit.stability = hi - lo;
    return fit;
}

std::vector<SpectrumPoint> mu_spectrum(const std::vector<int>& n_values, int m_min, int m_max)
{
    std::vector<SpectrumPoint> out;
    for (int n : n_values)
        for (int sign : {1, -1})
            for (int m = m_min; m <= m_max; ++m) {
                const int num = sign * 4 * n + 20 * m;
                if (num > 0)
                    out.push_back({Rational(num, 5), n, sign, m});
            }
    std::sort(out.begin(), out.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) {
        if (a.mu != b.mu)
            return a.mu < b.mu;
        return std::tie(a.n, a.sign, a.m) < std::tie(b.n, b.sign, b.m);
    });
    return out;
}

std::string BranchConvention::label() const
{
    std::ostringstream s;
    s << "zeta:" << zeta << ",zeta_bar:" << zeta_bar << ",root:" << root << ",minus_root:" << minus_root
      << ",minus_zeta:0";
    return s.str();
}

std::vector<BranchConvention> branch_conventions()
{
    // Distinct quarter-turn lifts for the five slots, with f(-zeta) as the
    // reference and each conjugate pair lifted in opposite directions.
    std::vector<BranchConvention> out;
    for (int a : {1, 2})
        for (int sa : {1, -1})
            for (int sb : {1, -1}) {
                const int b = 3 - a;
                out.push_back({sa * a, -sa * a, sb * b, -sb * b});
            }
    return out;
}

ScalingProbe ScalingProbe::from_solution(const CurveSolution& s)
{
    if (!(s.gamma < 0 && s.support[0] > s.gamma))
        throw OutOfDomain("scaling probe needs a negative left edge below the support");
    ScalingProbe p;
    p.gamma = s.gamma;
    p.support = s.support;
    p.zeta_scale = p.zeta_of_x(s.support[0]);
    p.mu = 0;
    p.convention = branch_conventions().front();
    return p;
}

Real ScalingProbe::x_of_zeta(const Real& zeta) const { return gamma * (1 - 2 * zeta * zeta); }

Real ScalingProbe::zeta_of_x(const Real& x) const
{
    const Real u = (1 - x / gamma) / 2;
    if (u < 0)
        throw OutOfDomain("zeta map: point outside the domain of the square root");
    return sqrt(u);
}

std::vector<Real> ScalingProbe::grid(int n) const
{
    if (n < 2)
        throw InvalidInput("probe grid needs at least two points");
    std::vector<Real> phi;
    for (int j = 0; j < n; ++j) {
        const Real x = support[0] + (support[1] - support[0]) * Real(j) / Real(n - 1);
        phi.push_back(acosh(std::max(Real(1), Real(zeta_of_x(x) / zeta_scale))));
    }
    return phi;
}

Real functional_equation_residual(const Real& mu, ScalingProbe& probe, const std::vector<Real>& grid)
{
    const Real quarter = pi() / 2;
    auto f = [&](const Real& phi, int lift) {
        // cosh(mu (phi + i lift pi/2))
        const Real a = mu * phi, b = mu * quarter * Real(lift);
        return Complex(cosh(a) * cos(b), sinh(a) * sin(b));
    };
    Real best = -1;
    for (const BranchConvention& c : branch_conventions()) {
        Real worst = 0;
        for (const Real& phi : grid) {
            if (!(phi >= 0))
                throw OutOfDomain("functional equation: grid point outside the angle domain");
            const Complex sum = f(phi, c.zeta) + f(phi, c.zeta_bar) + f(phi, 0) + f(phi, c.root) + f(phi, c.minus_root);
            worst = std::max(worst, cabs(sum));
        }
        if (best < 0 || worst < best) {
            best = worst;
            probe.convention = c;
        }
    }
    probe.mu = mu;
    return best;
}

std::vector<Real> scan_residual_minima(ScalingProbe& probe, const std::vector<Real>& grid, const Real& mu_max,
                                       const Real& step)
{
    std::vector<Real> mus, res;
    for (int j = 1; Real(j) * step <= mu_max + step / 2; ++j) {
        mus.push_back(Real(j) * step);
        res.push_back(functional_equation_residual(mus.back(), probe, grid));
    }
    std::vector<Real> minima;
    for (std::size_t j = 0; j < mus.size(); ++j) {
        // Interior points only: an end of the scan has no neighbour to dip below.
        if (j == 0 || j + 1 == mus.size())
            continue;
        if (res[j] < res[j - 1] && res[j] < res[j + 1])
            minima.push_back(mus[j]);
    }
    return minima;
}

SpectrumCheck check_spectrum(ScalingProbe& probe, const std::vector<Real>& grid, const Real& scan_max,
                             const Real& scan_step)
{
    SpectrumCheck out;
    out.scan_max = scan_max;
    out.scan_step = scan_step;
    const std::vector<SpectrumPoint> spec = mu_spectrum({1, 2}, 0, 2);
    std::vector<Real> members;
    for (const SpectrumPoint& sp : spec)
        if (to_real(sp.mu) <= scan_max)
            members.push_back(to_real(sp.mu));
    for (const Real& mu : members)
        out.members.emplace_back(mu, functional_equation_residual(mu, probe, grid));
    for (int mu : {1, 2})
        out.non_members.emplace_back(Real(mu), functional_equation_residual(Real(mu), probe, grid));
    out.scan_minima = scan_residual_minima(probe, grid, scan_max, scan_step);
    out.minima_on_spectrum = out.scan_minima.size() == members.size();
    for (const Real& m : out.scan_minima) {
        bool hit = false;
        for (const Real& mu : members)
            hit = hit || abs(m - mu) <= scan_step / 2;
        out.minima_on_spectrum = out.minima_on_spectrum && hit;
    }
    return out;
}

Real gamma_s(const Real& mu)
{
    if (!(mu > 0))
        throw InvalidInput("gamma_s needs mu > 0");
    return 1 - mu / 2;
}

CriticalOptions CriticalOptions::defaults()
{
    CriticalOptions o;
    o.anchors = {{Real(9), Real(1)}, {Real(9), Real(4)}};
    // Steering target for the continuation rays.
    o.target = {2 + sqrt(Real(47)), sqrt(Real(105)) / 2};
    return o;
}

CriticalPoint find_critical_point(const CurveSolution& seed, const CriticalOptions& options)
{
    const RationalParametrization& p0 = seed.parametrization;
    const Complex z0 = cluster_center(seed);
    const Vector c0 = p0.to_real();

    Vector xb = c0;
    xb.push_back(seed.couplings.c);
    xb.push_back(seed.couplings.g);
    xb.push_back(z0.real());
    const MergingResult b =
        run_formulation("branch-point merging", merging_residual, xb, options.max_iterations, [](MergingResult& m, const Vector& x) {
            const RationalParametrization p = RationalParametrization::from_real(head(x, 12));
            m.z_c = Complex(x[14]);
            m.x_plus_c = p.x_plus()(m.z_c).real();
            m.x3_c = p.x3()(m.z_c).real();
        });

    Vector xa = c0;
    xa.push_back(seed.couplings.c);
    xa.push_back(seed.couplings.g);
    xa.push_back(p0.x3()(z0).real());
    xa.push_back(p0.x_plus()(z0).real());
    const MergingResult a = run_singular_formulation(xa, options.max_singular_iterations);

    const Real dc = abs(a.c - b.c) / abs(b.c), dg = abs(a.g - b.g) / abs(b.g);
    const Real tolerance = std::max(options.agreement, Real(10 * singular_accuracy()));
    if (dc > tolerance || dg > tolerance)
        throw InconsistentMerging("merging formulations disagree: relative differences " + describe(dc) + " in c, " +
                                  describe(dg) + " in g");

    CriticalPoint cp;
    cp.branch_merging = b;
    cp.curve_singularity = a;
    cp.c_c = b.c;
    cp.g_c = b.g;
    cp.z_c = b.z_c;
    cp.x_plus_c = b.x_plus_c;
    cp.x3_c = b.x3_c;
    cp.parametrization = RationalParametrization::from_real(b.coefficients);
    cp.paths = 1;
    cp.path_difference = 0;

    const SpectralCurve q = implicitize(cp.parametrization);
    cp.q_degree_x3 = q.degree_x3;
    cp.q_degree_x_plus = q.degree_x_plus;
    const auto t = q.taylor(Complex(cp.x3_c), Complex(cp.x_plus_c));
    Real low = 0, all = 0;
    for (int n = 0; n <= q.degree_x3; ++n)
        for (int m = 0; m <= q.degree_x_plus; ++m) {
            const Real v = cabs(t[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)]);
            all += v * v;
            if (n + m < 5)
                low = std::max(low, v);
        }
    cp.taylor_residual = low / sqrt(all);

    local_structure(cp, b, options);
    cp.edge_exponent = cp.fit.exponent;
    cp.off_critical_fit = edge_exponent(seed, seed.z_b, default_window(seed, seed.z_b));

    // mu is the spectrum member closest to twice the measured exponent.
    const std::vector<SpectrumPoint> spec = mu_spectrum({1, 2}, 0, 2);
    Real target = 2 * cp.edge_exponent;
    Real mu = to_real(spec.front().mu);
    for (const SpectrumPoint& sp : spec)
        if (abs(to_real(sp.mu) - target) < abs(mu - target))
            mu = to_real(sp.mu);
    cp.mu = mu;
    ScalingProbe probe = ScalingProbe::from_solution(seed);
    const std::vector<Real> grid = probe.grid(64);
    cp.spectrum = check_spectrum(probe, grid);
    cp.functional_residual = functional_equation_residual(mu, probe, grid);
    cp.convention = probe.convention.label();
    cp.probe = probe;
    cp.gamma_s = gamma_s(mu);
    return cp;
}

CriticalPoint locate_critical_point(const CriticalOptions& options)
{
    if (options.anchors.empty())
        throw InvalidInput("critical search needs at least one anchor");
    std::vector<CriticalPoint> found;
    for (const Couplings& anchor : options.anchors) {
        SolveStrategy ms;
        ms.budget = options.budget;
        ms.rng_seed = options.seed;
        const CurveSolution start = solve_curve(anchor, ms);
        SolveStrategy cont;
        cont.kind = SolveStrategy::Kind::continuation;
        cont.from = start;
        cont.stop_fraction = options.stop_fraction;
        const CurveSolution near = solve_curve(options.target, cont);
        found.push_back(find_critical_point(near, options));
    }
    CriticalPoint cp = found.front();
    cp.paths = static_cast<int>(found.size());
    for (const CriticalPoint& other : found) {
        cp.path_difference = std::max(cp.path_difference, Real(abs(other.c_c - cp.c_c) / cp.c_c));
        cp.path_difference = std::max(cp.path_difference, Real(abs(other.g_c - cp.g_c) / cp.g_c));
    }
    return cp;
}

std::vector<InternalCheck> internal_checks(const CriticalPoint& cp, const CriticalOptions& options)
{
    std::vector<InternalCheck> out;
    auto add = [&](std::string name, bool ok, std::string detail) { out.push_back({std::move(name), ok, std::move(detail)}); };
    add("q_degree_x3", cp.q_degree_x3 == 5, "deg_x3 Q = " + std::to_string(cp.q_degree_x3));
    add("taylor_conditions", cp.taylor_residual <= Real("1e-6"), "scaled max |t_nm|, n+m<5: " + to_decimal(cp.taylor_residual, 3));
    add("merged_branch_points", cp.multiplicity_dx_plus >= 3,
        "zeros of dx+/dz at z_c: " + std::to_string(cp.multiplicity_dx_plus));
    add("fit_stability", cp.fit.stability < Real("0.02"), "slope spread " + to_decimal(cp.fit.stability, 3));
    add("off_critical_square_root", abs(cp.off_critical_fit.exponent - Real("0.5")) <= Real("0.05"),
        "off-critical edge exponent " + to_decimal(cp.off_critical_fit.exponent, 6));
    add("functional_equation", cp.functional_residual < Real("1e-10"),
        "residual at selected mu " + to_decimal(cp.functional_residual, 3));
    bool members = !cp.spectrum.members.empty(), others = !cp.spectrum.non_members.empty();
    // The five terms grow like cosh(mu phi_max); below 30 digits their
    // rounding alone can exceed 1e-10.
    const std::vector<Real> grid = cp.probe.grid(64);
    const Real phi_max = grid.empty() ? Real(0) : *std::max_element(grid.begin(), grid.end());
    for (const auto& [mu, r] : cp.spectrum.members) {
        const Real floor = 500 * epsilon() * cosh(mu * phi_max);
        members = members && r < std::max(Real("1e-10"), floor);
    }
    for (const auto& [mu, r] : cp.spectrum.non_members)
        others = others && r > Real("1e-2");
    add("spectrum_members", members, "residual < max(1e-10, rounding floor) at every spectrum member");
    add("spectrum_non_members", others, "residual > 1e-2 at mu = 1, 2");
    add("spectrum_scan", cp.spectrum.minima_on_spectrum, "scan minima only at spectrum members");
    const Real path_tol = std::max(options.agreement, Real(10 * singular_accuracy()));
    add("path_independence", cp.paths < 2 || cp.path_difference <= path_tol,
        "relative spread " + to_decimal(cp.path_difference, 3) + " over " + std::to_string(cp.paths) + " paths");
    return out;
}

} // namespace pottscurve
