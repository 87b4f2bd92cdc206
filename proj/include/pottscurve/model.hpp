#pragma once

#include "pottscurve/algebra.hpp"
#include "pottscurve/symbolic.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pottscurve {

// Potential V(x) = c x^2/2 + g x^3/3 for each of the three colors, with the
// nearest-neighbour coupling -sum_{i<j} X_i X_j.
struct Couplings {
    Real c;
    Real g;
};

// Throws InvalidCouplings unless g != 0 (and c > 2 when require_gaussian).
void validate_couplings(const Couplings& k, bool require_gaussian);
Real shift_of(const Couplings& k); // (c+1)/(2g)

// Symbol indices used by the symbolic derivation.
namespace sym {
inline constexpr int x1 = 0, x2 = 1, x3 = 2, xp = 3, xm = 4, g = 5, s = 6;
}

// Result of substituting the change of variables into the action, with
// c eliminated through c = 2 g s - 1 so all coefficients are polynomial in
// (g, s).
struct SymbolicReduction {
    MultiPoly action;          // original action in x1, x2, x3, g, s
    MultiPoly substituted;     // same action in xp, xm, x3, g, s
    std::vector<MultiPoly> u_plus; // coefficients of xp^0..xp^3
    std::vector<MultiPoly> u3;     // coefficients of x3^0..x3^3 (x3^0 kept in u_plus)
    MultiPoly coupling;            // coefficient of xp*x3
    MultiPoly xminus_quadratic;    // coefficient of xm^2 (polynomial in xp)
};

const SymbolicReduction& symbolic_reduction();

struct EffectivePotentials {
    Couplings couplings;
    Polynomial u_plus;
    Polynomial u_plus_prime;
    Polynomial u3;
    Polynomial u3_prime;
    Real shift;
    Real coupling;            // coefficient of x+ x3 in the action
    Polynomial xminus_quadratic; // coefficient of tr X- (.) X-, equal to (g/4) x+
};

EffectivePotentials derive_effective_potentials(const Couplings& k);

// Inverse of the quadratic form K = (c+1) I - J of the Gaussian sector.
template <class T>
struct GaussianCovariance {
    T c;
    T diagonal;
    T off_diagonal;
    T t1; // variance of a single color
    T t2; // variance of a two-color sum
};

GaussianCovariance<Real> gaussian_covariance(const Real& c);
GaussianCovariance<Rational> gaussian_covariance(const Rational& c);

// (x - sqrt(x^2 - 4t)) / (2t) on the branch decaying like 1/x.
Complex semicircle_resolvent(const Real& t, const Complex& x);
// k-th moment Catalan(k/2) t^(k/2), zero for odd k.
Rational semicircle_moment(const Rational& t, int k);
boost::multiprecision::mpz_int catalan(int n);

struct BoundaryLabel {
    std::string label;
    std::pair<int, int> kac;
    std::vector<std::pair<int, int>> virasoro_modules;
    std::vector<Rational> weights;
    std::optional<int> z3_charge;
    std::optional<std::string> microscopic;
};

std::vector<BoundaryLabel> boundary_table();

} // namespace pottscurve
