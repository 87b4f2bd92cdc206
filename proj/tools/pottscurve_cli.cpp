#include "pottscurve/criticality.hpp"
#include "pottscurve/curve.hpp"
#include "pottscurve/io.hpp"
#include "pottscurve/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace pottscurve;
using io::Json;

constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_usage = 2;

struct RunConfig {
    std::string command;
    std::optional<std::string> c;
    std::optional<std::string> g;
    unsigned precision = 50;
    int budget = 200;
    std::uint64_t seed = 1;
    std::string out;
    std::string format; // empty: the command's default
    int kmax = 4;
    int pmax = 4;
    int n_nodes = 256;
};

std::string scalar_text(const Json& j)
{
    return j.is_string() ? j.get<std::string>() : j.dump();
}

// Fills every field that the command line did not set.
void apply_config_file(RunConfig& cfg, const std::string& path, const CLI::App& app)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object())
        throw UsageError("config file '" + path + "' must hold a JSON object");
    auto given = [&](const std::string& flag) { return app.get_option(flag)->count() > 0; };
    try {
        for (const auto& [key, value] : j.items()) {
            const std::string k = key == "n_nodes" ? std::string("n-nodes") : key;
            if (k == "command") {
                if (!value.is_string() || value.get<std::string>() != cfg.command)
                    throw UsageError("config file command '" + scalar_text(value) + "' does not match '" + cfg.command + "'");
            } else if (k == "c" || k == "g") {
                if (!given("--" + k))
                    (k == "c" ? cfg.c : cfg.g) = scalar_text(value);
            } else if (k == "precision") {
                if (!given("--precision"))
                    cfg.precision = value.get<unsigned>();
            } else if (k == "budget") {
                if (!given("--budget"))
                    cfg.budget = value.get<int>();
            } else if (k == "seed") {
                if (!given("--seed"))
                    cfg.seed = value.get<std::uint64_t>();
            } else if (k == "out") {
                if (!given("--out"))
                    cfg.out = value.get<std::string>();
            } else if (k == "format") {
                if (!given("--format"))
                    cfg.format = value.get<std::string>();
            } else if (k == "kmax") {
                if (!given("--kmax"))
                    cfg.kmax = value.get<int>();
            } else if (k == "pmax") {
                if (!given("--pmax"))
                    cfg.pmax = value.get<int>();
            } else if (k == "n-nodes") {
                if (!given("--n-nodes"))
                    cfg.n_nodes = value.get<int>();
            } else {
                throw UsageError("config file: unknown key '" + key + "'");
            }
        }
    } catch (const Json::exception& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
}

void validate(const RunConfig& cfg)
{
    if (cfg.precision < 16)
        throw UsageError("--precision must be at least 16 digits");
    if (cfg.budget < 1)
        throw UsageError("--budget must be at least 1");
    if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv")
        throw UsageError("--format must be json or csv");
}

Real parse_coupling(const std::string& name, const std::string& text)
{
    try {
        if (text.find('/') != std::string::npos)
            return to_real(parse_rational(text));
        return parse_real(text);
    } catch (const InvalidInput&) {
        throw UsageError("--" + name + ": not a number: '" + text + "'");
    }
}

Couplings require_couplings(const RunConfig& cfg)
{
    if (!cfg.c || !cfg.g)
        throw UsageError(cfg.command + " needs both --c and --g");
    Couplings k{parse_coupling("c", *cfg.c), parse_coupling("g", *cfg.g)};
    validate_couplings(k, false);
    return k;
}

// Multistart at the target; if that fails, multistart at a well-conditioned
// anchor followed by continuation, which also reaches the critical point.
CurveSolution solve_at(const Couplings& k, const RunConfig& cfg)
{
    SolveStrategy direct;
    direct.budget = cfg.budget;
    direct.rng_seed = cfg.seed;
    std::string first_failure;
    try {
        return solve_curve(k, direct);
    } catch (const NumericalError& e) {
        first_failure = e.what();
    }
    // The anchor is an internal step with its own budget; --budget only
    // limits the attempts at the requested couplings.
    const Couplings anchor{Real(9), Real(1)};
    SolveStrategy at_anchor;
    at_anchor.rng_seed = cfg.seed;
    const CurveSolution start = solve_curve(anchor, at_anchor);
    SolveStrategy cont;
    cont.kind = SolveStrategy::Kind::continuation;
    cont.from = start;
    cont.rng_seed = cfg.seed;
    CurveSolution s = solve_curve(k, cont);
    s.trace.notes.insert(s.trace.notes.begin(), "direct multistart failed (" + first_failure +
                                                    "); continued from the anchor (c, g) = (9, 1)");
    return s;
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw UsageError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void write_json(const RunConfig& cfg, const Json& j)
{
    Output out(cfg.out);
    out.stream() << j.dump(2) << '\n';
}

std::vector<std::pair<std::string, std::string>> curve_rows(const CurveSolution& s)
{
    std::vector<std::pair<std::string, std::string>> rows{{"c", to_decimal(s.couplings.c)},
                                                          {"g", to_decimal(s.couplings.g)}};
    const Vector v = s.parametrization.to_real();
    for (int i = 0; i < 6; ++i)
        rows.emplace_back("alpha" + std::to_string(i), to_decimal(v[i]));
    for (int i = 0; i < 6; ++i)
        rows.emplace_back("beta" + std::to_string(i), to_decimal(v[6 + i]));
    rows.emplace_back("residual_norm", to_decimal(s.residual_norm));
    rows.emplace_back("support_a", to_decimal(s.support[0]));
    rows.emplace_back("support_b", to_decimal(s.support[1]));
    rows.emplace_back("gamma", to_decimal(s.gamma));
    return rows;
}

int cmd_solve(const RunConfig& cfg)
{
    const CurveSolution s = solve_at(require_couplings(cfg), cfg);
    if (cfg.format == "csv") {
        Output out(cfg.out);
        io::write_key_value_csv(out.stream(), curve_rows(s));
    } else {
        write_json(cfg, io::to_json(s));
    }
    return exit_ok;
}

int cmd_critical(const RunConfig& cfg)
{
    CriticalOptions options = CriticalOptions::defaults();
    options.budget = cfg.budget;
    options.seed = cfg.seed;
    const CriticalPoint cp = locate_critical_point(options);
    const std::vector<InternalCheck> checks = internal_checks(cp, options);
    bool all = true;
    for (const InternalCheck& c : checks) {
        all = all && c.passed;
        if (!c.passed)
            std::cerr << "check failed: " << c.name << " (" << c.detail << ")\n";
    }
    if (cfg.format == "csv") {
        std::vector<std::pair<std::string, std::string>> rows{
            {"c_c", to_decimal(cp.c_c)},          {"g_c", to_decimal(cp.g_c)},
            {"x_plus_c", to_decimal(cp.x_plus_c)}, {"x3_c", to_decimal(cp.x3_c)},
            {"edge_exponent", to_decimal(cp.edge_exponent)}, {"mu", to_decimal(cp.mu)},
            {"gamma_s", to_decimal(cp.gamma_s)},   {"taylor_residual", to_decimal(cp.taylor_residual)}};
        for (const InternalCheck& c : checks)
            rows.emplace_back("check_" + c.name, c.passed ? "pass" : "fail");
        Output out(cfg.out);
        io::write_key_value_csv(out.stream(), rows);
    } else {
        write_json(cfg, io::to_json(cp, checks));
    }
    return all ? exit_ok : exit_numerical;
}

int cmd_density(const RunConfig& cfg)
{
    if (cfg.n_nodes < 3)
        throw UsageError("--n-nodes must be at least 3");
    const CurveSolution s = solve_at(require_couplings(cfg), cfg);
    const SpectralDensity d = density(s, cfg.n_nodes);
    if (cfg.format == "json") {
        Json j;
        j["schema"] = "density";
        j["schema_version"] = io::schema_version;
        j["precision_digits"] = working_digits();
        j["couplings"] = {{"c", io::real_json(s.couplings.c)}, {"g", io::real_json(s.couplings.g)}};
        j["support"] = {io::real_json(s.support[0]), io::real_json(s.support[1])};
        j["density"] = io::density_json(d);
        write_json(cfg, j);
    } else {
        Output out(cfg.out);
        io::write_density_csv(out.stream(), d);
    }
    return exit_ok;
}

int cmd_spectrum(const RunConfig& cfg)
{
    const std::vector<SpectrumPoint> spectrum = mu_spectrum({1, 2}, 0, 1);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os << "mu,mu_decimal,n,sign,m\n";
        for (const SpectrumPoint& p : spectrum)
            os << p.mu.str() << ',' << to_decimal(to_real(p.mu)) << ',' << p.n << ',' << p.sign << ',' << p.m << '\n';
        Output out(cfg.out);
        out.stream() << os.str();
    } else {
        Json j;
        j["schema"] = "spectrum";
        j["schema_version"] = io::schema_version;
        j["rule"] = "5 mu = sign 4 n + 20 m";
        j["spectrum"] = io::spectrum_json(spectrum);
        j["boundary_labels"] = io::boundary_json(boundary_table());
        write_json(cfg, j);
    }
    return exit_ok;
}

int cmd_oracle(const RunConfig& cfg)
{
    if (!cfg.c)
        throw UsageError("oracle needs --c");
    if (cfg.kmax < 0 || cfg.pmax < 0)
        throw UsageError("--kmax and --pmax must be non-negative");
    Rational c;
    try {
        c = parse_rational(*cfg.c);
    } catch (const InvalidInput&) {
        throw UsageError("--c: not an exact rational: '" + *cfg.c + "'");
    }
    std::vector<MomentSeries> series = moment_series_range(MomentKind::fixed, cfg.kmax, cfg.pmax, c);
    for (MomentSeries& m : moment_series_range(MomentKind::mixed, cfg.kmax, cfg.pmax, c))
        series.push_back(std::move(m));

    if (cfg.format == "csv") {
        Output out(cfg.out);
        io::write_moment_series_csv(out.stream(), series);
        return exit_ok;
    }
    Json list = Json::array();
    for (const MomentSeries& m : series)
        list.push_back(io::to_json(m));
    Json j;
    j["schema"] = "moment_series";
    j["schema_version"] = io::schema_version;
    j["enumeration"] = {{"method", "planar loop recursion on boundary words"},
                        {"c", io::rational_json(c)},
                        {"kmax", cfg.kmax},
                        {"pmax", cfg.pmax}};
    j["series"] = list;
    if (cfg.g) {
        // Curve-side comparison at g and g/2.
        const Couplings k{to_real(c), parse_coupling("g", *cfg.g)};
        validate_couplings(k, true);
        std::vector<CurveSolution> solutions{solve_at(k, cfg)};
        SolveStrategy cont;
        cont.kind = SolveStrategy::Kind::continuation;
        cont.from = solutions.front();
        solutions.push_back(solve_curve(Couplings{k.c, k.g / 2}, cont));
        j["comparison"] = io::to_json(compare_with_curve(series, solutions));
    }
    write_json(cfg, j);
    return exit_ok;
}

int run(RunConfig cfg)
{
    validate(cfg);
    PrecisionScope scope(cfg.precision);
    if (cfg.command == "solve")
        return cmd_solve(cfg);
    if (cfg.command == "critical")
        return cmd_critical(cfg);
    if (cfg.command == "density")
        return cmd_density(cfg);
    if (cfg.command == "spectrum")
        return cmd_spectrum(cfg);
    return cmd_oracle(cfg);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral curve, critical point and planar oracle of the three-colour Potts matrix model"};
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string c_text, g_text;
    app.add_option("--c", c_text, "Quadratic coupling c (decimal or p/q)");
    app.add_option("--g", g_text, "Cubic coupling g (decimal or p/q)");
    app.add_option("--precision", cfg.precision, "Working precision in decimal digits (>= 16)");
    app.add_option("--budget", cfg.budget, "Multistart attempts (>= 1)");
    app.add_option("--seed", cfg.seed, "Random seed of the multistart");
    app.add_option("--out", cfg.out, "Output file (default: stdout)");
    app.add_option("--format", cfg.format, "json or csv");
    app.add_option("--kmax", cfg.kmax, "Largest moment order for the oracle");
    app.add_option("--pmax", cfg.pmax, "Largest order in g for the oracle");
    app.add_option("--n-nodes", cfg.n_nodes, "Density sample count");
    app.add_option("--config", config_path, "JSON file mirroring the flags; flags win");

    app.add_subcommand("solve", "Solve the spectral curve at (c, g)");
    app.add_subcommand("critical", "Locate the critical point and its exponents");
    app.add_subcommand("density", "Eigenvalue density of the shifted sum X+");
    app.add_subcommand("spectrum", "Allowed exponents mu with their (n, sign, m) tags");
    app.add_subcommand("oracle", "Planar moment series from diagram enumeration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (app.get_option("--c")->count() > 0)
            cfg.c = c_text;
        if (app.get_option("--g")->count() > 0)
            cfg.g = g_text;
        if (!config_path.empty())
            apply_config_file(cfg, config_path, app);
        if (cfg.format.empty())
            cfg.format = cfg.command == "density" ? "csv" : "json";
        return run(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return exit_numerical;
    }
}
