#include "pottscurve/curve.hpp"

#include <algorithm>

namespace pottscurve {

namespace {

struct NewtonStep {
    Complex z;
    bool ok = false;
};

NewtonStep newton_preimage(const RationalFunction& f, const RationalFunction& df, Complex z, const Complex& target)
{
    const Real tol = pow(epsilon(), Real("0.9"));
    for (int it = 0; it < 12; ++it) {
        Complex fz, dz;
        try {
            fz = f(z) - target;
            dz = df(z);
        } catch (const DivisionByZero&) {
            return {z, false};
        }
        if (dz == Complex(0))
            return {z, false};
        const Complex step = fz / dz;
        z -= step;
        if (cabs(step) <= tol * (1 + cabs(z)))
            return {z, true};
    }
    return {z, false};
}

// Images of the finite critical points of f. The local inverse around a path
// point is analytic in the disc reaching the nearest of them.
std::vector<Complex> critical_values(const RationalFunction& f, const RationalFunction& df)
{
    std::vector<Complex> out;
    for (const Root& r : roots(df.numerator(), pow(epsilon(), Real("0.75")))) {
        try {
            out.push_back(f(r.value));
        } catch (const DivisionByZero&) {
            // a higher-order pole of f, not a critical value
        }
    }
    return out;
}

} // namespace

Complex track_preimage(const RationalFunction& f, const RationalFunction& df, Complex z0, const Complex& from,
                       const Complex& to)
{
    NewtonStep start = newton_preimage(f, df, z0, from);
    if (!start.ok)
        throw SheetTrackingFailure("sheet tracking: no preimage at the path start");
    Complex z = start.z;
    const std::vector<Complex> critical = critical_values(f, df);
    const Real length = cabs(to - from);
    Real tau = 0;
    Real h = Real("0.05");
    const Real h_min = Real("1e-14");
    int steps = 0;
    while (tau < 1) {
        if (++steps > 20000)
            throw SheetTrackingFailure("sheet tracking: step budget exhausted");
        const Complex v0 = from + (to - from) * Complex(tau);
        // Stay well inside the disc of analyticity of the inverse, unless the
        // end is within reach (the target itself may be critical).
        Real reach = length * (1 - tau);
        for (const Complex& c : critical)
            reach = std::min(reach, Real(cabs(v0 - c) / 2));
        if (length > 0 && reach < length * (1 - tau) && length * (1 - tau) > sqrt(epsilon()) * (1 + cabs(to)))
            h = std::min(h, Real(reach / length));
        const Real next = (tau + h > 1) ? Real(1) : tau + h;
        const Complex v1 = from + (to - from) * Complex(next);
        Complex pred;
        try {
            pred = z + (v1 - v0) / df(z);
        } catch (const DivisionByZero&) {
            throw SheetTrackingFailure("sheet tracking: path runs into a pole");
        }
        NewtonStep c = newton_preimage(f, df, pred, v1);
        // A corrector that moves far from the predictor has probably jumped
        // to another preimage near a branch point.
        const Real jump = cabs(c.z - pred);
        const Real move = cabs(pred - z);
        if (c.ok && jump <= Real("0.25") * move + pow(epsilon(), Real("0.7")) * (1 + cabs(z))) {
            z = c.z;
            tau = next;
            h = std::min(Real(h * Real("1.5")), Real("0.1"));
        } else {
            h /= 2;
            if (h < h_min)
                throw SheetTrackingFailure("sheet tracking: step size underflow near a branch point");
        }
    }
    return z;
}

namespace {

Real far_radius(const CurveSolution& s, const Complex& x)
{
    Real scale = abs(s.support[0]) + abs(s.support[1]) + abs(s.gamma) + 1;
    return 20 * (scale + cabs(x));
}

} // namespace

Complex preimage_physical_x3(const CurveSolution& s, const Complex& x)
{
    const RationalFunction f = s.parametrization.x3();
    const RationalFunction df = f.derivative();
    const Real sign = (x.imag() < 0) ? Real(-1) : Real(1);
    const Complex start = x + Complex(Real(0), sign * far_radius(s, x));
    // x3 ~ beta0 / z near z = 0.
    const Complex z0 = s.parametrization.beta[0] / start;
    return track_preimage(f, df, z0, start, x);
}

Complex preimage_sheet3(const CurveSolution& s, const Complex& x)
{
    const RationalFunction f = s.parametrization.x_plus();
    const RationalFunction df = f.derivative();
    const Real sign = (x.imag() < 0) ? Real(-1) : Real(1);
    const Complex start = x + Complex(Real(0), sign * far_radius(s, x));
    // x+ ~ A(1) / (z - 1) near z = 1.
    Complex a1(0);
    for (const auto& c : s.parametrization.alpha)
        a1 += c;
    const Complex z0 = Complex(1) + a1 / start;
    return track_preimage(f, df, z0, start, x);
}

Complex x_plus_star(const CurveSolution& s, const Complex& x)
{
    return s.parametrization.x_plus()(preimage_physical_x3(s, x));
}

Complex x3_star(const CurveSolution& s, const Complex& x) { return s.parametrization.x3()(preimage_sheet3(s, x)); }

Complex extract_w3(const CurveSolution& s, const Complex& x) { return s.potentials.u3_prime(x) - x_plus_star(s, x); }

} // namespace pottscurve
