#pragma once

#include "pottscurve/curve.hpp"
#include "pottscurve/symbolic.hpp"

#include <array>
#include <utility>
#include <string>
#include <vector>

namespace pottscurve {

struct FitWindow {
    Real r_min;
    Real r_max;
    Real slope;
};

struct ExponentFit {
    Real exponent;            // slope over all samples
    Real stability;           // max - min slope across windows
    std::vector<FitWindow> windows;
    int order_x_plus = 0;     // vanishing order of x+ - x+(z_c)
    int order_x3 = 0;         // vanishing order of x3 - x3(z_c)
    int order_singular = 0;   // vanishing order after removing the regular part
    Real kappa;               // coefficient of the subtracted multiple of x+ - x+(z_c)
    bool subtracted = false;
};

// Log-log regression of the singular part of x3 - x3(z_c) against
// x+ - x+(z_c) along z = z_c + r on the real axis, r in window. When x3 and
// x+ vanish to the same order the analytic multiple kappa (x+ - x+(z_c)) is
// removed first. Throws if the window reaches another branch point or pole.
ExponentFit edge_exponent(const CurveSolution& s, const Complex& z_c, const std::array<Real, 2>& window,
                          int windows = 5);
// Window scaled to the distance from z_c to the nearest other singular point.
std::array<Real, 2> default_window(const CurveSolution& s, const Complex& z_c);

struct SpectrumPoint {
    Rational mu;
    int n = 0;
    int sign = 1;
    int m = 0;
};

// mu = (sign 4 n + 20 m) / 5 > 0, ascending.
std::vector<SpectrumPoint> mu_spectrum(const std::vector<int>& n_values, int m_min, int m_max);

// Lift of each evaluation slot of the functional equation, in quarter turns
// of the angle variable, relative to the slot f(-zeta).
struct BranchConvention {
    int zeta = 0;      // f(zeta)
    int zeta_bar = 0;  // conj f(zeta)
    int root = 0;      // f(+sqrt(1 - zeta^2))
    int minus_root = 0; // f(-sqrt(1 - zeta^2))
    std::string label() const;
};

std::vector<BranchConvention> branch_conventions();

struct ScalingProbe {
    Real gamma;           // left edge, sets the map x(zeta) = gamma (1 - 2 zeta^2)
    std::array<Real, 2> support;
    Real zeta_scale;      // zeta at the support edge; zeta = zeta_scale cosh(phi)
    Real mu;
    Polynomial p;         // degree-4 polynomial of the auxiliary function; not needed by the residual
    BranchConvention convention; // best convention of the last residual evaluation

    static ScalingProbe from_solution(const CurveSolution& s);
    Real x_of_zeta(const Real& zeta) const;
    Real zeta_of_x(const Real& x) const;
    // Angle grid phi >= 0 covering the image of the support.
    std::vector<Real> grid(int n) const;
};

// Max over the grid of |2 Re f(zeta) + f(-zeta) + f(sqrt(1-zeta^2)) + f(-sqrt(1-zeta^2))|
// for f = cosh(mu phi), minimized over the branch conventions. The grid
// holds angle values phi; the winning convention is stored in the probe.
Real functional_equation_residual(const Real& mu, ScalingProbe& probe, const std::vector<Real>& grid);

// Interior local minima of the residual on mu = step, 2 step, ..., mu_max.
std::vector<Real> scan_residual_minima(ScalingProbe& probe, const std::vector<Real>& grid, const Real& mu_max,
                                       const Real& step);

// Consistency relation chosen by this artifact: gamma_s = 1 - mu/2.
Real gamma_s(const Real& mu);

struct SpectrumCheck {
    std::vector<std::pair<Real, Real>> members;     // (mu, residual) on the spectrum
    std::vector<std::pair<Real, Real>> non_members; // (mu, residual) off it
    std::vector<Real> scan_minima;
    Real scan_step;
    Real scan_max;
    bool minima_on_spectrum = false;
};

// Residuals at 4/5, 8/5, 12/5, 16/5 and at 1, 2, plus a dense scan on
// (0, scan_max] compared against the spectrum.
SpectrumCheck check_spectrum(ScalingProbe& probe, const std::vector<Real>& grid, const Real& scan_max = Real(4),
                             const Real& scan_step = Real("0.01"));

struct MergingResult {
    std::string formulation;
    Real c;
    Real g;
    Real x_plus_c;
    Real x3_c;
    Complex z_c;
    int iterations = 0;
    Real residual;
    Vector coefficients;
};

struct CriticalPoint {
    Real c_c;
    Real g_c;
    Real x_plus_c;
    Real x3_c;
    Complex z_c;
    Real mu;
    Real edge_exponent;
    Real gamma_s;
    ExponentFit fit;
    ExponentFit off_critical_fit;
    MergingResult branch_merging; // formulation (b)
    MergingResult curve_singularity; // formulation (a)
    Real taylor_residual;
    int q_degree_x3 = 0;
    int q_degree_x_plus = 0;
    int multiplicity_dx_plus = 0;
    int multiplicity_dx3 = 0;
    Real functional_residual;
    std::string convention;
    ScalingProbe probe;
    SpectrumCheck spectrum;
    Real path_difference; // relative spread of (c, g) over independent paths
    int paths = 0;
    RationalParametrization parametrization;
    std::vector<std::string> notes;
};

struct CriticalOptions {
    // Continuation anchors and target. The target only steers the path; it
    // never enters a residual.
    std::vector<Couplings> anchors;
    Couplings target;
    Real stop_fraction = Real("1e-8");
    int budget = 200;
    std::uint64_t seed = 1;
    int max_iterations = 40;
    int max_singular_iterations = 150;
    Real agreement = Real("1e-7");

    static CriticalOptions defaults();
};

struct InternalCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Self-consistency checks that use no published value: singularity order
// of Q, fit stability, the off-critical square-root control, spectrum
// residuals and path independence.
std::vector<InternalCheck> internal_checks(const CriticalPoint& cp, const CriticalOptions& options);

// Polishes a near-critical solution by both merging formulations and
// checks that they agree.
CriticalPoint find_critical_point(const CurveSolution& seed, const CriticalOptions& options);
// Full schedule: multistart at each anchor, continuation toward the target,
// polish, cross-path comparison, exponents and spectrum.
CriticalPoint locate_critical_point(const CriticalOptions& options);

} // namespace pottscurve
