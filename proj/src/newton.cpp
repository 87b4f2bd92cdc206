#include "pottscurve/newton.hpp"

namespace pottscurve {

Real default_tolerance(const Real& scale) { return pow(epsilon(), Real("0.8")) * (1 + scale); }

Matrix jacobian_fd(const ResidualFn& f, const Vector& x)
{
    const Real h0 = cbrt(epsilon());
    Matrix j;
    Vector xp = x;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const Real h = h0 * (1 + abs(x[k]));
        xp[k] = x[k] + h;
        const Vector fp = f(xp);
        xp[k] = x[k] - h;
        const Vector fm = f(xp);
        xp[k] = x[k];
        if (k == 0)
            j = Matrix(fp.size(), x.size());
        for (std::size_t i = 0; i < fp.size(); ++i)
            j(i, k) = (fp[i] - fm[i]) / (2 * h);
    }
    return j;
}

NewtonResult newton_solve(const ResidualFn& f, Vector x0, const NewtonOptions& options)
{
    NewtonResult r;
    r.x = std::move(x0);
    r.f = f(r.x);
    r.norm = norm_inf(r.f);
    for (int it = 0; it < options.max_iterations; ++it) {
        if (r.norm <= options.tolerance) {
            r.converged = true;
            return r;
        }
        for (const Real& v : r.f)
            if (!isfinite(v))
                return r;
        const Matrix j = jacobian_fd(f, r.x);
        Vector rhs(r.f.size());
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = -r.f[i];
        LinearSolve step;
        try {
            step = least_squares(j, rhs);
        } catch (const Error&) {
            return r;
        }
        r.rank = step.rank;
        ++r.iterations;
        // Backtracking: accept the first damping that lowers the 2-norm.
        const Real base = norm2(r.f);
        Real lambda = 1;
        bool moved = false;
        for (int h = 0; h <= options.max_halvings; ++h) {
            Vector trial = r.x;
            for (std::size_t k = 0; k < trial.size(); ++k)
                trial[k] += lambda * step.x[k];
            Vector ft;
            try {
                ft = f(trial);
            } catch (const NumericalError&) {
                lambda /= 2;
                continue;
            } catch (const InvalidInput&) {
                lambda /= 2;
                continue;
            }
            bool finite = true;
            for (const Real& v : ft)
                if (!isfinite(v))
                    finite = false;
            if (finite && norm2(ft) < (1 - lambda / 4) * base) {
                r.x = std::move(trial);
                r.f = std::move(ft);
                r.norm = norm_inf(r.f);
                moved = true;
                break;
            }
            lambda /= 2;
        }
        if (!moved)
            break;
    }
    r.converged = r.norm <= options.tolerance;
    return r;
}

} // namespace pottscurve
