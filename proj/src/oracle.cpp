#include "pottscurve/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

namespace pottscurve {

namespace {

constexpr std::array<char, 4> letters{'1', '2', '3', '+'};

int letter_index(char a)
{
    switch (a) {
    case '1':
        return 0;
    case '2':
        return 1;
    case '3':
        return 2;
    case '+':
        return 3;
    default:
        throw InvalidInput(std::string("boundary word letter must be one of 1, 2, 3, +; got '") + a + "'");
    }
}

// Smallest rotation; the trace is cyclic.
std::string canonical(const std::string& w)
{
    std::string best = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
        std::string rot = w.substr(r) + w.substr(0, r);
        if (rot < best)
            best = std::move(rot);
    }
    return best;
}

Rational power(const Rational& x, int n)
{
    Rational r(1);
    for (int i = 0; i < n; ++i)
        r *= x;
    return r;
}

Integer factorial(int n)
{
    Integer r(1);
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a)
    {
        while (parent[static_cast<std::size_t>(a)] != a)
            a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        return a;
    }
    void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Ribbon graph with one boundary vertex of degree L and p cubic vertices.
struct RibbonGraph {
    int legs = 0;
    int vertices = 0;
    std::vector<int> next;  // cyclic order around the owning vertex
    std::vector<int> owner; // vertex of each leg

    RibbonGraph(int boundary, int cubic)
    {
        legs = boundary + 3 * cubic;
        vertices = (boundary > 0 ? 1 : 0) + cubic;
        next.resize(static_cast<std::size_t>(legs));
        owner.resize(static_cast<std::size_t>(legs));
        for (int i = 0; i < boundary; ++i) {
            next[static_cast<std::size_t>(i)] = (i + 1) % boundary;
            owner[static_cast<std::size_t>(i)] = 0;
        }
        const int first = boundary > 0 ? 1 : 0;
        for (int v = 0; v < cubic; ++v)
            for (int j = 0; j < 3; ++j) {
                const int leg = boundary + 3 * v + j;
                next[static_cast<std::size_t>(leg)] = boundary + 3 * v + (j + 1) % 3;
                owner[static_cast<std::size_t>(leg)] = first + v;
            }
    }

    bool connected(const std::vector<int>& pair) const
    {
        UnionFind uf(vertices);
        for (int i = 0; i < legs; ++i)
            uf.join(owner[static_cast<std::size_t>(i)], owner[static_cast<std::size_t>(pair[static_cast<std::size_t>(i)])]);
        const int root = uf.find(0);
        for (int v = 1; v < vertices; ++v)
            if (uf.find(v) != root)
                return false;
        return true;
    }

    // Faces are the cycles of next o pair.
    int faces(const std::vector<int>& pair) const
    {
        std::vector<char> seen(static_cast<std::size_t>(legs), 0);
        int f = 0;
        for (int i = 0; i < legs; ++i) {
            if (seen[static_cast<std::size_t>(i)])
                continue;
            ++f;
            for (int j = i; !seen[static_cast<std::size_t>(j)]; j = next[static_cast<std::size_t>(pair[static_cast<std::size_t>(j)])])
                seen[static_cast<std::size_t>(j)] = 1;
        }
        return f;
    }

    int euler_characteristic(const std::vector<int>& pair) const { return vertices - legs / 2 + faces(pair); }
};

// Visits every perfect matching of n legs.
void for_each_pairing(int n, const std::function<void(const std::vector<int>&)>& visit)
{
    std::vector<int> pair(static_cast<std::size_t>(n), -1);
    std::function<void()> recurse = [&]() {
        int first = -1;
        for (int i = 0; i < n; ++i)
            if (pair[static_cast<std::size_t>(i)] < 0) {
                first = i;
                break;
            }
        if (first < 0) {
            visit(pair);
            return;
        }
        for (int j = first + 1; j < n; ++j) {
            if (pair[static_cast<std::size_t>(j)] >= 0)
                continue;
            pair[static_cast<std::size_t>(first)] = j;
            pair[static_cast<std::size_t>(j)] = first;
            recurse();
            pair[static_cast<std::size_t>(first)] = -1;
            pair[static_cast<std::size_t>(j)] = -1;
        }
    };
    recurse();
}

int pair_slot(char a, char b)
{
    int i = letter_index(a), j = letter_index(b);
    if (i > j)
        std::swap(i, j);
    return i * 4 + j;
}

} // namespace

Propagator::Propagator(const Rational& c) : cov_(gaussian_covariance(c))
{
    // Letters as vectors over the three colours.
    const std::array<std::array<int, 3>, 4> vec{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            Rational sum(0);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    const int w = vec[a][i] * vec[b][j];
                    if (w != 0)
                        sum += Rational(w) * (i == j ? cov_.diagonal : cov_.off_diagonal);
                }
            table_[{letters[a], letters[b]}] = sum;
        }
}

const Rational& Propagator::operator()(char a, char b) const
{
    letter_index(a);
    letter_index(b);
    return table_.at({a, b});
}

void validate_word(const std::string& word)
{
    for (char a : word)
        letter_index(a);
}

Integer enumerate_planar_pairings(int k)
{
    if (k < 0)
        throw InvalidInput("negative boundary length");
    if (k == 0)
        return Integer(1);
    if (k % 2 != 0)
        return Integer(0);
    const RibbonGraph graph(k, 0);
    Integer count(0);
    for_each_pairing(k, [&](const std::vector<int>& pair) {
        if (graph.euler_characteristic(pair) == 2)
            ++count;
    });
    return count;
}

EnumerationCount enumerate_word(const std::string& word, int p, const Rational& c)
{
    validate_word(word);
    if (p < 0)
        throw InvalidInput("negative order");
    const int boundary = static_cast<int>(word.size());
    const int n = boundary + 3 * p;
    EnumerationCount out;
    out.planar = out.all = Rational(0);
    if (boundary == 0) {
        if (p == 0)
            out.planar = out.all = Rational(1);
        return out;
    }
    if (n % 2 != 0)
        return out;

    const Propagator prop(c);
    const RibbonGraph graph(boundary, p);
    using Exponents = std::array<std::uint8_t, 16>;
    std::map<Exponents, long long> planar, all;
    int colourings = 1;
    for (int v = 0; v < p; ++v)
        colourings *= 3;
    std::vector<char> letter(static_cast<std::size_t>(n));
    for (int i = 0; i < boundary; ++i)
        letter[static_cast<std::size_t>(i)] = word[static_cast<std::size_t>(i)];

    for_each_pairing(n, [&](const std::vector<int>& pair) {
        ++out.pairings;
        if (!graph.connected(pair))
            return;
        const bool is_planar = graph.euler_characteristic(pair) == 2;
        if (is_planar)
            ++out.planar_pairings;
        for (int col = 0; col < colourings; ++col) {
            int rest = col;
            for (int v = 0; v < p; ++v) {
                const char ch = letters[static_cast<std::size_t>(rest % 3)];
                rest /= 3;
                for (int j = 0; j < 3; ++j)
                    letter[static_cast<std::size_t>(boundary + 3 * v + j)] = ch;
            }
            Exponents e{};
            for (int i = 0; i < n; ++i) {
                const int j = pair[static_cast<std::size_t>(i)];
                if (i < j)
                    ++e[static_cast<std::size_t>(pair_slot(letter[static_cast<std::size_t>(i)], letter[static_cast<std::size_t>(j)]))];
            }
            ++all[e];
            if (is_planar)
                ++planar[e];
        }
    });

    const auto total = [&](const std::map<Exponents, long long>& counts) {
        Rational sum(0);
        for (const auto& [e, count] : counts) {
            Rational term(count);
            for (int s = 0; s < 16; ++s)
                if (e[static_cast<std::size_t>(s)] != 0)
                    term *= power(prop(letters[static_cast<std::size_t>(s / 4)], letters[static_cast<std::size_t>(s % 4)]),
                                  e[static_cast<std::size_t>(s)]);
            sum += term;
        }
        // exp(-N (g/3) tr X^3) per vertex, vertices unordered.
        return sum * power(Rational(-1, 3), p) / Rational(factorial(p));
    };
    out.planar = total(planar);
    out.all = total(all);
    return out;
}

PlanarOracle::PlanarOracle(const Rational& c, int pmax) : prop_(c), pmax_(pmax)
{
    if (pmax < 0 || pmax > oracle_max_order)
        throw OutOfDomain("oracle order must lie in [0, " + std::to_string(oracle_max_order) + "]");
}

std::vector<Rational> PlanarOracle::series(const std::string& word)
{
    validate_word(word);
    if (word.size() > static_cast<std::size_t>(oracle_max_length))
        throw OutOfDomain("oracle boundary length must not exceed " + std::to_string(oracle_max_length));
    return series(word, pmax_);
}

Rational PlanarOracle::planar_moment(const std::string& word, int p)
{
    if (p < 0 || p > pmax_)
        throw OutOfDomain("order " + std::to_string(p) + " beyond the configured maximum " + std::to_string(pmax_));
    return series(word)[static_cast<std::size_t>(p)];
}

std::vector<Rational> PlanarOracle::series(const std::string& word, int order)
{
    std::vector<Rational> out(static_cast<std::size_t>(order + 1), Rational(0));
    if (word.empty()) {
        out[0] = 1;
        return out;
    }
    const std::string w = canonical(word);
    const auto key = std::make_pair(w, order);
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;

    const char a = w[0];
    for (std::size_t j = 1; j < w.size(); ++j) {
        const Rational& edge = prop_(a, w[j]);
        if (edge == 0)
            continue;
        const std::vector<Rational> inner = series(w.substr(1, j - 1), order);
        const std::vector<Rational> outer = series(w.substr(j + 1), order);
        for (int p = 0; p <= order; ++p)
            for (int q = 0; q <= p; ++q)
                out[static_cast<std::size_t>(p)] += edge * inner[static_cast<std::size_t>(q)] * outer[static_cast<std::size_t>(p - q)];
    }
    if (order >= 1) {
        const std::string rest = w.substr(1);
        for (char b : {'1', '2', '3'}) {
            const Rational& edge = prop_(a, b);
            if (edge == 0)
                continue;
            const std::vector<Rational> grown = series(std::string(2, b) + rest, order - 1);
            for (int p = 1; p <= order; ++p)
                out[static_cast<std::size_t>(p)] -= edge * grown[static_cast<std::size_t>(p - 1)];
        }
    }
    memo_.emplace(key, out);
    return out;
}

Rational planar_moment(const std::string& word, int p, const Rational& c)
{
    PlanarOracle oracle(c, std::max(p, 0));
    return oracle.planar_moment(word, p);
}

Real MomentSeries::evaluate(const Real& g) const
{
    Real sum = 0, gp = 1;
    for (const Rational& q : coefficients) {
        sum += to_real(q) * gp;
        gp *= g;
    }
    return sum;
}

int MomentSeries::first_omitted_order() const
{
    int p = truncation + 1;
    // Leg count k + 3p must be even.
    if ((k + p) % 2 != 0)
        ++p;
    return p;
}

MomentSeries moment_series(MomentKind kind, int k, int pmax, const Rational& c, char color)
{
    if (k < 0 || k > oracle_max_length)
        throw OutOfDomain("oracle boundary length must lie in [0, " + std::to_string(oracle_max_length) + "]");
    if (color != '1' && color != '2' && color != '3')
        throw InvalidInput(std::string("fixed boundary colour must be 1, 2 or 3; got '") + color + "'");
    MomentSeries m;
    m.kind = kind;
    m.k = k;
    m.color = kind == MomentKind::fixed ? color : '+';
    m.word = std::string(static_cast<std::size_t>(k), m.color);
    m.c = c;
    m.truncation = pmax;
    PlanarOracle oracle(c, pmax);
    m.coefficients = oracle.series(m.word);
    return m;
}

std::vector<MomentSeries> moment_series_range(MomentKind kind, int kmax, int pmax, const Rational& c, char color)
{
    if (kmax < 0 || kmax > oracle_max_length)
        throw OutOfDomain("oracle boundary length must lie in [0, " + std::to_string(oracle_max_length) + "]");
    std::vector<MomentSeries> out;
    for (int k = 0; k <= kmax; ++k)
        out.push_back(moment_series(kind, k, pmax, c, color));
    return out;
}

std::vector<Real> unshifted_mixed_moments(const CurveSolution& s, int kmax)
{
    const std::vector<Real> m = planar_moments(s, MomentKind::mixed, kmax);
    const Real minus_shift = -2 * shift_of(s.couplings);
    std::vector<Real> out;
    for (int k = 0; k <= kmax; ++k) {
        Real sum = 0, binom = 1;
        for (int j = 0; j <= k; ++j) {
            sum += binom * m[static_cast<std::size_t>(j)] * pow(minus_shift, k - j);
            binom = binom * (k - j) / (j + 1);
        }
        out.push_back(sum);
    }
    return out;
}

ComparisonReport compare_with_curve(const std::vector<MomentSeries>& series, const std::vector<CurveSolution>& solutions)
{
    if (solutions.empty())
        throw InvalidInput("compare_with_curve needs at least one curve solution");
    ComparisonReport report;
    int kmax = 0;
    for (const MomentSeries& m : series) {
        if (m.kind == MomentKind::fixed && m.color != '3')
            throw InvalidInput("curve-side fixed moments are those of X3");
        kmax = std::max(kmax, m.k);
    }
    std::vector<const CurveSolution*> order;
    for (const CurveSolution& s : solutions)
        order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const CurveSolution* a, const CurveSolution* b) {
        return abs(a->couplings.g) > abs(b->couplings.g);
    });

    std::vector<std::vector<Real>> fixed, mixed;
    for (const CurveSolution* s : order) {
        fixed.push_back(planar_moments(*s, MomentKind::fixed, kmax));
        mixed.push_back(unshifted_mixed_moments(*s, kmax));
    }
    for (const MomentSeries& m : series) {
        std::vector<Real> devs;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const CurveSolution& s = *order[i];
            if (abs(s.couplings.c - to_real(m.c)) > sqrt(epsilon()) * abs(s.couplings.c))
                throw InvalidInput("curve solution at c = " + to_decimal(s.couplings.c, 12) +
                                   " does not match the series coupling");
            ComparisonRow row{m.kind, m.k, s.couplings.g, Real(0), m.evaluate(s.couplings.g), Real(0), Real(0)};
            row.curve = (m.kind == MomentKind::fixed ? fixed : mixed)[i][static_cast<std::size_t>(m.k)];
            row.absolute = abs(row.curve - row.series);
            row.deviation = row.absolute / abs(row.curve);
            devs.push_back(row.absolute);
            report.rows.push_back(row);
        }
        for (std::size_t i = 0; m.k > 0 && i + 1 < order.size(); ++i) {
            ComparisonRate r{m.kind, m.k, order[i]->couplings.g, order[i + 1]->couplings.g, m.first_omitted_order(), Real(0)};
            r.observed_order = log(devs[i] / devs[i + 1]) / log(abs(r.g_large / r.g_small));
            report.rates.push_back(r);
        }
    }
    return report;
}

} // namespace pottscurve
