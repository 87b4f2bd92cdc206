#pragma once

#include "pottscurve/algebra.hpp"
#include "pottscurve/linalg.hpp"
#include "pottscurve/model.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pottscurve {

struct StructuralError : InvalidInput {
    using InvalidInput::InvalidInput;
};

// x+(z) = A(z) / (z^2 (z-1)),  x3(z) = B(z) / (z (z-1)^2), A = sum alpha_k z^k, B = sum beta_k z^k.
struct RationalParametrization {
    std::array<Complex, 6> alpha;
    std::array<Complex, 6> beta;

    static RationalParametrization from_real(const Vector& v); // alpha then beta
    Vector to_real() const;                                    // throws if not real

    void validate() const; // alpha5, beta5 nonzero
    RationalFunction x_plus() const;
    RationalFunction x3() const;
};

// One matching condition: a Laurent coefficient at one pole.
struct ConditionLabel {
    std::string pole;  // "0", "1" or "inf"
    std::string quantity;
    int order;         // exponent of the local coordinate
};

// All candidate conditions produced by expanding the two saddle-point equations at the poles:
// 4 at z=0, 4 at z=1, and 5 at infinity (one structural, four Laurent).
std::vector<ConditionLabel> candidate_condition_labels();
std::vector<Complex> candidate_conditions(const RationalParametrization& p, const EffectivePotentials& e);
// Index of the candidate dropped to leave 12 independent conditions.
std::size_t redundant_candidate();

// The 12 independent conditions, four per pole.
std::vector<Complex> condition_residuals(const RationalParametrization& p, const EffectivePotentials& e);
std::vector<ConditionLabel> condition_labels();

struct BranchPoint {
    Complex z;
    Complex x_plus;
    int multiplicity = 1;
};

struct SolverTrace {
    std::string strategy;
    int newton_iterations = 0;
    int continuation_steps = 0;
    int continuation_rejections = 0;
    int multistart_attempts = 0;
    int multistart_converged = 0;
    std::uint64_t seed = 0;
    Real jacobian_min_singular_value;
    Real jacobian_condition;
    int jacobian_nullity = 0;
    std::vector<std::string> notes;
};

struct CurveSolution {
    RationalParametrization parametrization;
    Couplings couplings;
    EffectivePotentials potentials;
    Real gamma;                 // left edge of the cut (-inf, gamma] on sheets 1-2
    std::array<Real, 2> support; // [a, b], image of supp rho+
    Complex z_a, z_b, z_gamma;  // branch points realising a, b and gamma
    std::vector<BranchPoint> branch_points;
    Real residual_norm;
    SolverTrace trace;
};

struct SolveStrategy {
    enum class Kind { seed, continuation, multistart };
    Kind kind = Kind::multistart;
    std::optional<RationalParametrization> seed;
    std::optional<CurveSolution> from; // continuation start
    int budget = 200;                  // multistart attempts
    std::uint64_t rng_seed = 1;
    int max_newton_iterations = 80;
    // Continuation stops short of the target by this fraction of the path
    // when set (used near criticality where the end point is a fold).
    Real stop_fraction = 0;
};

CurveSolution solve_curve(const Couplings& k, const SolveStrategy& strategy);

// Checks the sheet structure and density of a converged parametrization and
// fills in the derived data. Throws NonPhysicalSolution with a diagnostic.
CurveSolution classify_solution(const RationalParametrization& p, const EffectivePotentials& e);

// Finite zeros of dx+/dz.
std::vector<Root> branch_points_of_x_plus(const RationalParametrization& p, const Real& tol);
std::vector<Root> branch_points_of_x3(const RationalParametrization& p, const Real& tol);

// Q(x3, x+) = sum q[j][l] x3^j x+^l.
struct SpectralCurve {
    std::vector<std::vector<Complex>> q;
    int degree_x3 = 0;
    int degree_x_plus = 0;

    Complex operator()(const Complex& x3, const Complex& xp) const;
    // |Q| divided by the same sum with absolute values.
    Real scaled_residual(const Complex& x3, const Complex& xp) const;
    // Taylor coefficients t[n][m] of Q(x3c + u, xpc + v) = sum t[n][m] u^n v^m.
    std::vector<std::vector<Complex>> taylor(const Complex& x3c, const Complex& xpc) const;
};

SpectralCurve implicitize(const RationalFunction& x_plus, const RationalFunction& x3);
SpectralCurve implicitize(const RationalParametrization& p);

// Sheet tracking: continue the preimage z of f(z) = value along the straight
// value path from -> to, starting at a point z0 with f(z0) ~ from.
Complex track_preimage(const RationalFunction& f, const RationalFunction& df, Complex z0, const Complex& from,
                       const Complex& to);

// z on the physical x3 sheet (neighbourhood of the pole z=0) with x3(z) = x.
Complex preimage_physical_x3(const CurveSolution& s, const Complex& x);
// z on sheet 3 (neighbourhood of z=1) with x+(z) = x, approached from the
// half plane of Im x (upper when x is real).
Complex preimage_sheet3(const CurveSolution& s, const Complex& x);

Complex x_plus_star(const CurveSolution& s, const Complex& x); // x+ on the physical x3 sheet
Complex x3_star(const CurveSolution& s, const Complex& x);     // x3 on sheet 3

Complex extract_w3(const CurveSolution& s, const Complex& x);

struct SpectralDensity {
    std::vector<Real> nodes;
    std::vector<Real> values;
    Real normalization;
};

// Chebyshev-Lobatto nodes on the support (endpoints included, density zero
// there). The normalization uses the exact quadrature in the angle variable.
SpectralDensity density(const CurveSolution& s, int n);
// rho+(y) at one interior point.
Real density_at(const CurveSolution& s, const Real& y);

// Stieltjes transform of rho+ on a Chebyshev angle grid.
class MixedResolvent {
public:
    MixedResolvent(const CurveSolution& s, int nodes = 256);
    Complex operator()(const Complex& x) const;
    const SpectralDensity& density() const { return rho_; }

private:
    SpectralDensity rho_;
    std::vector<Real> weights_;
};

Complex extract_wplus(const CurveSolution& s, const Complex& x);

enum class MomentKind { fixed, mixed };

// <tr X^k>/N for k <= kmax. Fixed: X3 via the Laurent expansion of w3 at
// infinity. Mixed: X+ (shift included) via a residue at z = 0.
std::vector<Real> planar_moments(const CurveSolution& s, MomentKind kind, int kmax);
// Mixed moments by quadrature of the density, as an independent route.
std::vector<Real> mixed_moments_by_quadrature(const CurveSolution& s, int kmax, int nodes = 256);
// Coefficients of x^(-k-1) of w3 for k <= kmax.
std::vector<Complex> w3_laurent(const CurveSolution& s, int kmax);

} // namespace pottscurve
