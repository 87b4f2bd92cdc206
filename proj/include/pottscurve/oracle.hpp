#pragma once

#include "pottscurve/curve.hpp"
#include "pottscurve/model.hpp"
#include "pottscurve/symbolic.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pottscurve {

// Planar perturbation theory of the three-colour model around X = 0.
//
// A boundary word is a string over {'1', '2', '3', '+'}: a letter i stands
// for X_i inside the trace and '+' for the unshifted sum X1 + X2. Edges are
// weighted by the inverse quadratic form, cubic vertices by -g.

inline constexpr int oracle_max_order = 4;
inline constexpr int oracle_max_length = 8;

using Integer = boost::multiprecision::mpz_int;

// Bilinear propagator <a b> between two letters.
class Propagator {
public:
    explicit Propagator(const Rational& c);
    const Rational& operator()(char a, char b) const;
    const GaussianCovariance<Rational>& covariance() const { return cov_; }

private:
    GaussianCovariance<Rational> cov_;
    std::map<std::pair<char, char>, Rational> table_;
};

void validate_word(const std::string& word);

// Number of genus-zero pairings of k legs on one boundary vertex, counted by
// brute force with the Euler characteristic filter.
Integer enumerate_planar_pairings(int k);

struct EnumerationCount {
    Rational planar;     // genus-zero connected graphs only
    Rational all;        // every connected graph, any genus
    long long pairings = 0;
    long long planar_pairings = 0;
};

// Coefficient of g^p by exhaustive Wick enumeration over labelled legs and
// vertex colours, with genus computed from V - E + F. Intended for small
// leg counts (k + 3p <= 14).
EnumerationCount enumerate_word(const std::string& word, int p, const Rational& c);

// Memoized planar recursion on boundary words: the first letter either pairs
// with a later boundary letter, splitting the word, or with a new cubic
// vertex of any colour.
class PlanarOracle {
public:
    explicit PlanarOracle(const Rational& c, int pmax = oracle_max_order);
    // Coefficients of g^0..g^pmax.
    std::vector<Rational> series(const std::string& word);
    Rational planar_moment(const std::string& word, int p);
    const Propagator& propagator() const { return prop_; }
    std::size_t memo_size() const { return memo_.size(); }

private:
    std::vector<Rational> series(const std::string& word, int order);
    Propagator prop_;
    int pmax_;
    std::map<std::pair<std::string, int>, std::vector<Rational>> memo_;
};

// Planar moment of one word at order p (fresh oracle).
Rational planar_moment(const std::string& word, int p, const Rational& c);

struct MomentSeries {
    MomentKind kind = MomentKind::fixed;
    int k = 0;
    char color = '3';
    std::string word;
    Rational c;
    int truncation = 0;
    std::vector<Rational> coefficients; // g^0..g^truncation

    Real evaluate(const Real& g) const;
    // First order above the truncation that can be nonzero by parity.
    int first_omitted_order() const;
};

// Fixed kind uses the word color^k; mixed uses (X1+X2)^k.
MomentSeries moment_series(MomentKind kind, int k, int pmax, const Rational& c, char color = '3');
std::vector<MomentSeries> moment_series_range(MomentKind kind, int kmax, int pmax, const Rational& c,
                                              char color = '3');

struct ComparisonRow {
    MomentKind kind;
    int k;
    Real g;
    Real curve;
    Real series;
    Real absolute;  // |curve - series|
    Real deviation; // relative
};

struct ComparisonRate {
    MomentKind kind;
    int k;
    Real g_large, g_small;
    int expected_order;
    // Decay order of the absolute deviation between the two samples.
    Real observed_order;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::vector<ComparisonRate> rates;
};

// Curve-side moments of X1 + X2 are obtained from those of X+ by removing
// the shift 2(c+1)/(2g) through binomial re-expansion.
std::vector<Real> unshifted_mixed_moments(const CurveSolution& s, int kmax);

// Compares every series against every solution (all at the series' c) and
// forms decay rates between consecutive samples sorted by decreasing g. The
// k = 0 moment is exact on both sides and gets no rate.
ComparisonReport compare_with_curve(const std::vector<MomentSeries>& series,
                                    const std::vector<CurveSolution>& solutions);

} // namespace pottscurve
