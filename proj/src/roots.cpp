#include "pottscurve/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pottscurve {

namespace {

// Horner value together with the running bound sum |a_k| |z|^k used as a
// backward-error yardstick.
struct HornerValue {
    Complex value;
    Complex slope;
    Real scale;
};

HornerValue horner(const Polynomial& p, const Complex& z)
{
    const auto& c = p.coefficients();
    Complex v(0), d(0);
    Real s = 0;
    const Real az = cabs(z);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * z + v;
        v = v * z + *it;
        s = s * az + cabs(*it);
    }
    return {v, d, s};
}

std::vector<Complex> aberth(const Polynomial& p)
{
    const int n = p.degree();
    const auto& a = p.coefficients();
    // Start on a circle whose radius is the geometric mean of the root moduli.
    Real radius = boost::multiprecision::pow(Real(cabs(a.front()) / cabs(a.back())), Real(1) / n);
    if (radius == 0)
        radius = 1;
    std::vector<Complex> z(static_cast<std::size_t>(n));
    const Real two_pi = 2 * pi();
    for (int k = 0; k < n; ++k) {
        const Real ang = two_pi * k / n + Real("0.4");
        z[static_cast<std::size_t>(k)] = Complex(radius * cos(ang), radius * sin(ang));
    }
    std::vector<bool> done(z.size(), false);
    const Real eps = epsilon();
    const Real accept = 16 * (n + 1) * eps;
    const int max_iter = 100 + 40 * n + 4 * static_cast<int>(working_digits());
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (done[k])
                continue;
            HornerValue h = horner(p, z[k]);
            if (cabs(h.value) <= accept * h.scale) {
                done[k] = true;
                continue;
            }
            all = false;
            if (h.slope == Complex(0)) {
                z[k] += Complex(eps * 1000, eps * 1000) * (1 + cabs(z[k]));
                continue;
            }
            const Complex w = h.value / h.slope;
            Complex sum(0);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k && z[j] != z[k])
                    sum += Complex(1) / (z[k] - z[j]);
            const Complex denom = Complex(1) - w * sum;
            z[k] -= (denom == Complex(0)) ? w : w / denom;
        }
        if (all)
            return z;
    }
    std::ostringstream os;
    os << "roots: Aberth iteration did not converge; residuals:";
    for (const auto& r : z)
        os << ' ' << to_decimal(cabs(horner(p, r).value), 6);
    throw NonConvergence(os.str());
}

Complex refine_cluster(const Polynomial& p, const Complex& start, int m, const Real& radius)
{
    if (m <= 1)
        return start;
    const Polynomial d = p.derivative(m - 1);
    const Polynomial dd = d.derivative();
    Complex z = start;
    for (int it = 0; it < 60; ++it) {
        const Complex f = d(z);
        const Complex fp = dd(z);
        if (fp == Complex(0))
            break;
        const Complex step = f / fp;
        z -= step;
        if (cabs(z - start) > 4 * radius)
            return start;
        if (cabs(step) <= epsilon() * (1 + cabs(z)))
            break;
    }
    return z;
}

} // namespace

std::vector<Root> roots(const Polynomial& p, const Real& tol)
{
    if (p.degree() < 1)
        throw InvalidInput("roots: degree must be at least 1");
    std::vector<Complex> found;
    // Exact zero roots first; they also keep the Aberth start radius finite.
    std::vector<Complex> c = p.coefficients();
    std::size_t zeros = 0;
    while (zeros < c.size() && c[zeros] == Complex(0))
        ++zeros;
    found.assign(zeros, Complex(0));
    Polynomial q(std::vector<Complex>(c.begin() + static_cast<long>(zeros), c.end()));
    if (q.degree() == 1) {
        found.push_back(-q.coefficient(0) / q.coefficient(1));
    } else if (q.degree() > 1) {
        std::vector<Complex> z = aberth(q);
        found.insert(found.end(), z.begin(), z.end());
    }

    // Union-find clustering.
    const std::size_t n = found.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cabs(found[i] - found[j]) < tol * (1 + cabs(found[i])))
                parent[find(i)] = find(j);

    std::vector<Root> out;
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (used[r])
            continue;
        used[r] = true;
        Complex mean(0);
        int m = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (find(j) == r) {
                mean += found[j];
                ++m;
            }
        mean /= Real(m);
        bool exact_zero = true;
        for (std::size_t j = 0; j < n; ++j)
            if (find(j) == r && found[j] != Complex(0))
                exact_zero = false;
        Complex value = exact_zero ? Complex(0) : refine_cluster(p, mean, m, tol * (1 + cabs(mean)));
        out.push_back({value, m});
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real())
            return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

} // namespace pottscurve
