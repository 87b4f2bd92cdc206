#include "pottscurve/curve.hpp"

#include <cmath>

namespace pottscurve {

namespace {

struct SupportPoint {
    Real theta;
    Real y;
    Complex z;
};

Real support_mid(const CurveSolution& s) { return (s.support[0] + s.support[1]) / 2; }
Real support_half(const CurveSolution& s) { return (s.support[1] - s.support[0]) / 2; }

bool correct(const RationalFunction& f, const RationalFunction& df, Complex& z, const Real& target, const Real& tol)
{
    for (int it = 0; it < 10; ++it) {
        const Complex d = df(z);
        if (d == Complex(0))
            return false;
        const Complex step = (f(z) - Complex(target)) / d;
        z -= step;
        if (cabs(step) <= tol * (1 + cabs(z)))
            return true;
    }
    return false;
}

// Follows the sheet-3 preimage of y(theta) = mid + half cos(theta) from
// theta0 to theta1. In theta the preimage is analytic through the square-root
// edges, so polynomial extrapolation stays accurate near them.
Complex march(const CurveSolution& s, const RationalFunction& f, const RationalFunction& df,
              std::vector<SupportPoint>& history, const Real& theta1)
{
    const Real mid = support_mid(s), half = support_half(s);
    const Real tol = pow(epsilon(), Real("0.9"));
    Real theta0 = history.back().theta;
    int substeps = 4;
    while (true) {
        std::vector<SupportPoint> local = history;
        bool ok = true;
        for (int k = 1; k <= substeps && ok; ++k) {
            const Real th = theta0 + (theta1 - theta0) * Real(k) / Real(substeps);
            const Real y = mid + half * cos(th);
            // Quadratic extrapolation through the last three points.
            const std::size_t n = local.size();
            Complex pred = local[n - 1].z;
            if (n >= 3) {
                const Real t0 = local[n - 3].theta, t1 = local[n - 2].theta, t2 = local[n - 1].theta;
                const Complex l0((th - t1) * (th - t2) / ((t0 - t1) * (t0 - t2)));
                const Complex l1((th - t0) * (th - t2) / ((t1 - t0) * (t1 - t2)));
                const Complex l2((th - t0) * (th - t1) / ((t2 - t0) * (t2 - t1)));
                pred = l0 * local[n - 3].z + l1 * local[n - 2].z + l2 * local[n - 1].z;
            } else if (n == 2) {
                const Real r = (th - local[1].theta) / (local[1].theta - local[0].theta);
                pred = local[1].z + Complex(r) * (local[1].z - local[0].z);
            }
            Complex z = pred;
            const Real step = n >= 2 ? cabs(local[n - 1].z - local[n - 2].z) : Real(1);
            ok = correct(f, df, z, y, tol) && cabs(z - pred) <= Real("0.25") * step + tol;
            if (ok)
                local.push_back({th, y, z});
        }
        if (ok) {
            history.push_back(local.back());
            if (history.size() > 3)
                history.erase(history.begin(), history.end() - 3);
            return history.back().z;
        }
        substeps *= 2;
        if (substeps > 4096)
            throw SheetTrackingFailure("support tracking: step size underflow");
    }
}

struct SupportSamples {
    std::vector<Real> theta;
    std::vector<Real> y;
    std::vector<Complex> z; // sheet-3 preimage from the upper half plane
};

SupportSamples track_support(const CurveSolution& s, int n)
{
    if (n < 16)
        throw InvalidInput("density needs at least 16 nodes");
    const RationalFunction f = s.parametrization.x_plus();
    const RationalFunction df = f.derivative();
    const Real mid = support_mid(s), half = support_half(s);
    const Real h = pi() / Real(n - 1);
    SupportSamples out;
    out.theta.resize(static_cast<std::size_t>(n));
    out.y.resize(static_cast<std::size_t>(n));
    out.z.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        out.theta[static_cast<std::size_t>(j)] = h * j;
        out.y[static_cast<std::size_t>(j)] = mid + half * cos(h * j);
    }
    out.y.front() = s.support[1];
    out.y.back() = s.support[0];
    out.z.front() = s.z_b;
    out.z.back() = s.z_a;

    const int j0 = (n - 1) / 2;
    const Complex z0 = preimage_sheet3(s, Complex(out.y[static_cast<std::size_t>(j0)]));
    out.z[static_cast<std::size_t>(j0)] = z0;
    for (int dir : {-1, 1}) {
        std::vector<SupportPoint> hist{{out.theta[static_cast<std::size_t>(j0)], out.y[static_cast<std::size_t>(j0)], z0}};
        for (int j = j0 + dir; j > 0 && j < n - 1; j += dir)
            out.z[static_cast<std::size_t>(j)] = march(s, f, df, hist, out.theta[static_cast<std::size_t>(j)]);
    }
    return out;
}

LocalExpansion unit_series(const SpherePoint& c, int order)
{
    std::vector<Complex> one(static_cast<std::size_t>(order + 8), Complex(0));
    one.front() = Complex(1);
    return LocalExpansion(c, 0, std::move(one));
}

// Residue at z = 0 of f, given its expansion.
Complex residue(const LocalExpansion& f) { return f.coefficient(-1); }

} // namespace

SpectralDensity density(const CurveSolution& s, int n)
{
    const SupportSamples t = track_support(s, n);
    const RationalFunction x3 = s.parametrization.x3();
    const Real w = support_half(s) * pi() / Real(n - 1);
    SpectralDensity rho;
    rho.nodes = t.y;
    rho.values.assign(static_cast<std::size_t>(n), Real(0));
    rho.normalization = 0;
    for (int j = 1; j < n - 1; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        rho.values[i] = x3(t.z[i]).imag() / pi();
        rho.normalization += w * sin(t.theta[i]) * rho.values[i];
    }
    return rho;
}

Real density_at(const CurveSolution& s, const Real& y)
{
    if (!(y > s.support[0] && y < s.support[1]))
        throw OutOfDomain("density_at: point outside the open support");
    return s.parametrization.x3()(preimage_sheet3(s, Complex(y))).imag() / pi();
}

MixedResolvent::MixedResolvent(const CurveSolution& s, int nodes) : rho_(pottscurve::density(s, nodes))
{
    const Real w = support_half(s) * pi() / Real(nodes - 1);
    weights_.resize(rho_.nodes.size());
    for (std::size_t i = 0; i < weights_.size(); ++i)
        weights_[i] = w * sin(pi() * Real(static_cast<long>(i)) / Real(nodes - 1)) * rho_.values[i];
}

Complex MixedResolvent::operator()(const Complex& x) const
{
    Complex sum(0);
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] != 0)
            sum += Complex(weights_[i]) / (x - Complex(rho_.nodes[i]));
    return sum;
}

Complex extract_wplus(const CurveSolution& s, const Complex& x)
{
    if (x.imag() == 0 && x.real() >= s.support[0] && x.real() <= s.support[1])
        throw OutOfDomain("extract_wplus: point on the support");
    return MixedResolvent(s)(x);
}

std::vector<Real> planar_moments(const CurveSolution& s, MomentKind kind, int kmax)
{
    if (kmax < 0)
        throw InvalidInput("kmax must be nonnegative");
    const SpherePoint origin = SpherePoint::at(Complex(0));
    const int order = 2 * kmax + 6;
    const LocalExpansion x3 = expand_at(s.parametrization.x3(), origin, order);
    const LocalExpansion xp = expand_at(s.parametrization.x_plus(), origin, order);
    std::vector<Real> m;
    if (kind == MomentKind::fixed) {
        // The large-x circle of the physical x3 sheet is a small clockwise
        // circle around z = 0, and U3'(x3) x3^k dx3 is exact there.
        const LocalExpansion base = xp * derivative(x3);
        LocalExpansion pk = unit_series(origin, order);
        for (int k = 0; k <= kmax; ++k) {
            m.push_back(residue(pk * base).real());
            pk = pk * x3;
        }
    } else {
        // The sheets 1-2 pair at z = 0 carries the large-x behaviour of w+;
        // the residue reproduces the moments of the density.
        const LocalExpansion base = x3 * derivative(xp);
        LocalExpansion pk = unit_series(origin, order);
        for (int k = 0; k <= kmax; ++k) {
            m.push_back(-residue(pk * base).real());
            pk = pk * xp;
        }
    }
    return m;
}

std::vector<Real> mixed_moments_by_quadrature(const CurveSolution& s, int kmax, int nodes)
{
    const SpectralDensity rho = density(s, nodes);
    const Real w = support_half(s) * pi() / Real(nodes - 1);
    std::vector<Real> m(static_cast<std::size_t>(kmax + 1), Real(0));
    for (std::size_t i = 0; i < rho.nodes.size(); ++i) {
        const Real wi = w * sin(pi() * Real(static_cast<long>(i)) / Real(nodes - 1)) * rho.values[i];
        Real p = 1;
        for (int k = 0; k <= kmax; ++k) {
            m[static_cast<std::size_t>(k)] += wi * p;
            p *= rho.nodes[i];
        }
    }
    return m;
}

std::vector<Complex> w3_laurent(const CurveSolution& s, int kmax)
{
    std::vector<Complex> out;
    for (const Real& v : planar_moments(s, MomentKind::fixed, kmax))
        out.emplace_back(v);
    return out;
}

} // namespace pottscurve
