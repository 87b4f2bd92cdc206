#include "pottscurve/io.hpp"

#include <locale>
#include <sstream>

namespace pottscurve::io {

namespace {

Json real_array(const std::vector<Real>& v)
{
    Json out = Json::array();
    for (const Real& x : v)
        out.push_back(real_json(x));
    return out;
}

Json couplings_json(const Couplings& k)
{
    return Json{{"c", real_json(k.c)}, {"g", real_json(k.g)}};
}

Json trace_json(const SolverTrace& t)
{
    Json j;
    j["strategy"] = t.strategy;
    j["newton_iterations"] = t.newton_iterations;
    j["continuation_steps"] = t.continuation_steps;
    j["continuation_rejections"] = t.continuation_rejections;
    j["multistart_attempts"] = t.multistart_attempts;
    j["multistart_converged"] = t.multistart_converged;
    j["seed"] = t.seed;
    j["jacobian_min_singular_value"] = real_json(t.jacobian_min_singular_value);
    j["jacobian_condition"] = real_json(t.jacobian_condition);
    j["jacobian_nullity"] = t.jacobian_nullity;
    j["notes"] = t.notes;
    return j;
}

Json fit_json(const ExponentFit& f)
{
    Json windows = Json::array();
    for (const FitWindow& w : f.windows)
        windows.push_back({{"r_min", real_json(w.r_min)}, {"r_max", real_json(w.r_max)}, {"slope", real_json(w.slope)}});
    Json j;
    j["exponent"] = real_json(f.exponent);
    j["stability"] = real_json(f.stability);
    j["order_x_plus"] = f.order_x_plus;
    j["order_x3"] = f.order_x3;
    j["order_singular"] = f.order_singular;
    j["subtracted"] = f.subtracted;
    j["kappa"] = real_json(f.kappa);
    j["windows"] = windows;
    return j;
}

Json merging_json(const MergingResult& m)
{
    Json j;
    j["formulation"] = m.formulation;
    j["c"] = real_json(m.c);
    j["g"] = real_json(m.g);
    j["x_plus_c"] = real_json(m.x_plus_c);
    j["x3_c"] = real_json(m.x3_c);
    j["z_c"] = complex_json(m.z_c);
    j["iterations"] = m.iterations;
    j["residual"] = real_json(m.residual);
    return j;
}

Json pairs_json(const std::vector<std::pair<Real, Real>>& v)
{
    Json out = Json::array();
    for (const auto& [mu, r] : v)
        out.push_back({{"mu", real_json(mu)}, {"residual", real_json(r)}});
    return out;
}

std::string kind_key(MomentKind k) { return kind_name(k); }

} // namespace

Json real_json(const Real& x) { return to_decimal(x); }

Json complex_json(const Complex& z) { return Json{{"re", real_json(z.real())}, {"im", real_json(z.imag())}}; }

Json rational_json(const Rational& q)
{
    return Json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

Real real_from_json(const Json& j)
{
    if (!j.is_string())
        throw InvalidInput("expected a decimal string, got " + j.dump());
    return parse_real(j.get<std::string>());
}

Rational rational_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw InvalidInput("expected {\"num\", \"den\"}, got " + j.dump());
    return parse_rational(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

std::string kind_name(MomentKind k) { return k == MomentKind::fixed ? "fixed" : "mixed"; }

MomentKind kind_from_name(const std::string& name)
{
    if (name == "fixed")
        return MomentKind::fixed;
    if (name == "mixed")
        return MomentKind::mixed;
    throw InvalidInput("unknown moment kind '" + name + "'");
}

Json to_json(const CurveSolution& s)
{
    const Vector coeffs = s.parametrization.to_real();
    Json alpha = Json::array(), beta = Json::array();
    for (int i = 0; i < 6; ++i) {
        alpha.push_back(real_json(coeffs[i]));
        beta.push_back(real_json(coeffs[6 + i]));
    }
    Json branch = Json::array();
    for (const BranchPoint& b : s.branch_points)
        branch.push_back({{"z", complex_json(b.z)}, {"x_plus", complex_json(b.x_plus)}, {"multiplicity", b.multiplicity}});

    Json j;
    j["schema"] = "curve_solution";
    j["schema_version"] = schema_version;
    j["precision_digits"] = working_digits();
    j["couplings"] = couplings_json(s.couplings);
    j["shift"] = real_json(s.potentials.shift);
    j["coefficients"] = {{"alpha", alpha}, {"beta", beta}};
    j["residual_norm"] = real_json(s.residual_norm);
    j["support"] = {real_json(s.support[0]), real_json(s.support[1])};
    j["gamma"] = real_json(s.gamma);
    j["z_a"] = complex_json(s.z_a);
    j["z_b"] = complex_json(s.z_b);
    j["z_gamma"] = complex_json(s.z_gamma);
    j["branch_points"] = branch;
    j["trace"] = trace_json(s.trace);
    return j;
}

RationalParametrization parametrization_from_json(const Json& j)
{
    const Json& c = j.at("coefficients");
    Vector v;
    for (const char* key : {"alpha", "beta"}) {
        const Json& a = c.at(key);
        if (!a.is_array() || a.size() != 6)
            throw InvalidInput(std::string("coefficients.") + key + " must hold 6 entries");
        for (const Json& x : a)
            v.push_back(real_from_json(x));
    }
    return RationalParametrization::from_real(v);
}

Json to_json(const CriticalPoint& cp, const std::vector<InternalCheck>& checks)
{
    Json spectrum;
    spectrum["members"] = pairs_json(cp.spectrum.members);
    spectrum["non_members"] = pairs_json(cp.spectrum.non_members);
    spectrum["scan_minima"] = real_array(cp.spectrum.scan_minima);
    spectrum["scan_step"] = real_json(cp.spectrum.scan_step);
    spectrum["scan_max"] = real_json(cp.spectrum.scan_max);
    spectrum["minima_on_spectrum"] = cp.spectrum.minima_on_spectrum;

    Json check_list = Json::array();
    bool all = true;
    for (const InternalCheck& c : checks) {
        check_list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        all = all && c.passed;
    }

    const Vector coeffs = cp.parametrization.to_real();
    Json j;
    j["schema"] = "critical_point";
    j["schema_version"] = schema_version;
    j["precision_digits"] = working_digits();
    j["c_c"] = real_json(cp.c_c);
    j["g_c"] = real_json(cp.g_c);
    j["x_plus_c"] = real_json(cp.x_plus_c);
    j["x3_c"] = real_json(cp.x3_c);
    j["z_c"] = complex_json(cp.z_c);
    j["edge_exponent"] = real_json(cp.edge_exponent);
    j["mu"] = real_json(cp.mu);
    j["gamma_s"] = real_json(cp.gamma_s);
    j["gamma_s_relation"] = "gamma_s = 1 - mu/2";
    j["edge_fit"] = fit_json(cp.fit);
    j["off_critical_fit"] = fit_json(cp.off_critical_fit);
    j["branch_merging"] = merging_json(cp.branch_merging);
    j["curve_singularity"] = merging_json(cp.curve_singularity);
    j["taylor_residual"] = real_json(cp.taylor_residual);
    j["q_degree_x3"] = cp.q_degree_x3;
    j["q_degree_x_plus"] = cp.q_degree_x_plus;
    j["multiplicity_dx_plus"] = cp.multiplicity_dx_plus;
    j["multiplicity_dx3"] = cp.multiplicity_dx3;
    j["functional_residual"] = real_json(cp.functional_residual);
    j["convention"] = cp.convention;
    j["spectrum_check"] = spectrum;
    j["path_difference"] = real_json(cp.path_difference);
    j["paths"] = cp.paths;
    j["coefficients"] = {{"alpha", real_array(Vector(coeffs.begin(), coeffs.begin() + 6))},
                         {"beta", real_array(Vector(coeffs.begin() + 6, coeffs.end()))}};
    j["notes"] = cp.notes;
    j["checks"] = check_list;
    j["all_checks_passed"] = all;
    return j;
}

Json to_json(const MomentSeries& m)
{
    Json coeffs = Json::array();
    for (const Rational& q : m.coefficients)
        coeffs.push_back(rational_json(q));
    Json j;
    j["kind"] = kind_key(m.kind);
    j["k"] = m.k;
    j["word"] = m.word;
    j["c"] = rational_json(m.c);
    j["truncation"] = m.truncation;
    j["first_omitted_order"] = m.first_omitted_order();
    j["coefficients"] = coeffs;
    return j;
}

MomentSeries moment_series_from_json(const Json& j)
{
    MomentSeries m;
    m.kind = kind_from_name(j.at("kind").get<std::string>());
    m.k = j.at("k").get<int>();
    m.word = j.at("word").get<std::string>();
    m.color = m.kind == MomentKind::fixed && !m.word.empty() ? m.word[0] : '3';
    m.c = rational_from_json(j.at("c"));
    m.truncation = j.at("truncation").get<int>();
    for (const Json& q : j.at("coefficients"))
        m.coefficients.push_back(rational_from_json(q));
    if (static_cast<int>(m.coefficients.size()) != m.truncation + 1)
        throw InvalidInput("moment series: coefficient count does not match the truncation");
    return m;
}

Json to_json(const ComparisonReport& r)
{
    Json rows = Json::array(), rates = Json::array();
    for (const ComparisonRow& row : r.rows)
        rows.push_back({{"kind", kind_key(row.kind)},
                        {"k", row.k},
                        {"g", real_json(row.g)},
                        {"curve", real_json(row.curve)},
                        {"series", real_json(row.series)},
                        {"absolute", real_json(row.absolute)},
                        {"relative", real_json(row.deviation)}});
    for (const ComparisonRate& rate : r.rates)
        rates.push_back({{"kind", kind_key(rate.kind)},
                         {"k", rate.k},
                         {"g_large", real_json(rate.g_large)},
                         {"g_small", real_json(rate.g_small)},
                         {"expected_order", rate.expected_order},
                         {"observed_order", real_json(rate.observed_order)}});
    return Json{{"rows", rows}, {"rates", rates}};
}

Json spectrum_json(const std::vector<SpectrumPoint>& spectrum)
{
    Json out = Json::array();
    for (const SpectrumPoint& p : spectrum)
        out.push_back({{"mu", rational_json(p.mu)},
                       {"mu_decimal", real_json(to_real(p.mu))},
                       {"n", p.n},
                       {"sign", p.sign},
                       {"m", p.m}});
    return out;
}

Json boundary_json(const std::vector<BoundaryLabel>& table)
{
    Json out = Json::array();
    for (const BoundaryLabel& b : table) {
        Json modules = Json::array(), weights = Json::array();
        for (const auto& [r, s] : b.virasoro_modules)
            modules.push_back({r, s});
        for (const Rational& w : b.weights)
            weights.push_back(rational_json(w));
        Json j;
        j["label"] = b.label;
        j["kac"] = {b.kac.first, b.kac.second};
        j["virasoro_modules"] = modules;
        j["weights"] = weights;
        j["z3_charge"] = b.z3_charge ? Json(*b.z3_charge) : Json(nullptr);
        j["microscopic"] = b.microscopic ? Json(*b.microscopic) : Json(nullptr);
        out.push_back(j);
    }
    return out;
}

Json density_json(const SpectralDensity& d)
{
    Json j;
    j["nodes"] = real_array(d.nodes);
    j["values"] = real_array(d.values);
    j["normalization"] = real_json(d.normalization);
    return j;
}

void write_density_csv(std::ostream& out, const SpectralDensity& d)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "x,rho_plus\n";
    // Ascending in x whatever the node order.
    const std::size_t n = d.nodes.size();
    const bool reversed = n > 1 && d.nodes.front() > d.nodes.back();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = reversed ? n - 1 - k : k;
        os << to_decimal(d.nodes[i]) << ',' << to_decimal(d.values[i]) << '\n';
    }
    out << os.str();
}

void write_moment_series_csv(std::ostream& out, const std::vector<MomentSeries>& series)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "kind,k,word,c,p,numerator,denominator\n";
    for (const MomentSeries& m : series)
        for (std::size_t p = 0; p < m.coefficients.size(); ++p)
            os << kind_name(m.kind) << ',' << m.k << ',' << m.word << ',' << m.c.str() << ',' << p << ','
               << numerator(m.coefficients[p]).str() << ',' << denominator(m.coefficients[p]).str() << '\n';
    out << os.str();
}

void write_key_value_csv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "key,value\n";
    for (const auto& [k, v] : rows)
        os << k << ',' << v << '\n';
    out << os.str();
}

} // namespace pottscurve::io
