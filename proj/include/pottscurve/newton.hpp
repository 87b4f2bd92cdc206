#pragma once

#include "pottscurve/linalg.hpp"

#include <functional>
#include <string>

namespace pottscurve {

using ResidualFn = std::function<Vector(const Vector&)>;

struct NewtonOptions {
    int max_iterations = 60;
    Real tolerance;          // on the infinity norm of the residual
    int max_halvings = 30;   // line-search depth
};

struct NewtonResult {
    Vector x;
    Vector f;
    Real norm;
    int iterations = 0;
    bool converged = false;
    std::size_t rank = 0; // of the last Jacobian
};

// Central-difference Jacobian; the step scales with eps^(1/3).
Matrix jacobian_fd(const ResidualFn& f, const Vector& x);

// Damped Newton (square) or Gauss-Newton (overdetermined) with a
// backtracking line search on the residual norm. Never throws on
// non-convergence; callers inspect `converged`.
NewtonResult newton_solve(const ResidualFn& f, Vector x0, const NewtonOptions& options);

Real default_tolerance(const Real& scale);

} // namespace pottscurve
