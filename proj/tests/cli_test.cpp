#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir()
{
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("pottscurve_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Run run(const std::string& args)
{
    const fs::path out = scratch_dir() / "stdout", err = scratch_dir() / "stderr";
    const std::string cmd =
        std::string(POTTSCURVE_CLI) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_file(const std::string& name, const std::string& text)
{
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p;
}

// Full-precision critical couplings 2 + sqrt(47) and sqrt(105)/2.
const char* critical_c = "8.85565460040104412493587144908484896046064346100035";
const char* critical_g = "5.12347538297979919161051934026052599536751633172642";

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("oracle at k = 2, p = 0, c = 3 gives 1/2")
    {
        const Run r = run("oracle --c 3 --kmax 2 --pmax 0");
        REQUIRE(r.status == 0);
        const Json j = Json::parse(r.out);
        bool found = false;
        for (const Json& s : j.at("series"))
            if (s.at("kind") == "fixed" && s.at("k") == 2) {
                found = true;
                CHECK(s.at("coefficients")[0].at("num") == "1");
                CHECK(s.at("coefficients")[0].at("den") == "2");
            }
        CHECK(found);
        CHECK(j.at("enumeration").at("pmax") == 0);
    }

    TEST_CASE("usage errors exit with 2")
    {
        const Run g0 = run("solve --c 9 --g 0");
        CHECK(g0.status == 2);
        CHECK(g0.err.find("shift") != std::string::npos);
        CHECK(run("solve --c 9 --g 1 --budget 0").status == 2);
        CHECK(run("solve --c 9 --g 1 --precision 10").status == 2);
        CHECK(run("solve --c 9").status == 2);
        CHECK(run("solve --c nine --g 1").status == 2);
        CHECK(run("solve --c 9 --g 1 --format xml").status == 2);
        CHECK(run("solve --c 9 --g 1 --no-such-flag").status == 2);
        CHECK(run("").status == 2);
        CHECK(run("oracle --c 3 --pmax 5").status == 2);
        CHECK(run("oracle --c 2 --kmax 2 --pmax 0").status == 2);
        CHECK(run("solve --config /nonexistent/config.json").status == 2);
    }

    TEST_CASE("numerical failure exits with 1")
    {
        // Ten-digit truncation of the critical couplings lies past the fold.
        const Run r = run("solve --c 8.8556546004 --g 5.1234753830 --budget 5");
        CHECK(r.status == 1);
        CHECK(!r.err.empty());
    }

    TEST_CASE("solve writes twelve full-precision coefficients deterministically")
    {
        const Run a = run("solve --c 9 --g 1 --precision 30");
        REQUIRE(a.status == 0);
        const Json j = Json::parse(a.out);
        CHECK(j.at("coefficients").at("alpha").size() == 6);
        CHECK(j.at("coefficients").at("beta").size() == 6);
        for (const Json& x : j.at("coefficients").at("alpha"))
            CHECK(x.get<std::string>().size() >= 30);
        CHECK(j.at("precision_digits") == 30);
        const Run b = run("solve --c 9 --g 1 --precision 30");
        CHECK(a.out == b.out);
    }

    TEST_CASE("solve at the critical couplings")
    {
        const Run r = run(std::string("solve --c ") + critical_c + " --g " + critical_g + " --budget 10");
        REQUIRE(r.status == 0);
        const Json j = Json::parse(r.out);
        CHECK(j.at("coefficients").at("alpha").size() + j.at("coefficients").at("beta").size() == 12);
        CHECK(std::stod(j.at("residual_norm").get<std::string>()) < 1e-30);
    }

    TEST_CASE("config file mirrors the flags and flags win")
    {
        const fs::path cfg = write_file("config.json", R"({"c": "9", "g": 1, "precision": 20, "format": "csv"})");
        const Run r = run("solve --config " + cfg.string() + " --g 0.5");
        REQUIRE(r.status == 0);
        CHECK(r.out.rfind("key,value\n", 0) == 0);
        CHECK(r.out.find("g,5.0000000000000000000") != std::string::npos);
        const fs::path bad = write_file("bad.json", R"({"colour": 3})");
        CHECK(run("solve --config " + bad.string() + " --c 9 --g 1").status == 2);
        const fs::path out = scratch_dir() / "solution.json";
        const fs::path with_out = write_file("out.json", "{\"c\": 9, \"g\": 1, \"out\": \"" + out.string() + "\"}");
        REQUIRE(run("solve --precision 20 --config " + with_out.string()).status == 0);
        CHECK(Json::parse(slurp(out)).at("schema") == "curve_solution");
    }

    TEST_CASE("density CSV integrates to one")
    {
        const Run r = run("density --c 9 --g 1 --precision 20 --n-nodes 256");
        REQUIRE(r.status == 0);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        CHECK(line == "x,rho_plus");
        std::vector<double> x, y;
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            x.push_back(std::stod(line.substr(0, comma)));
            y.push_back(std::stod(line.substr(comma + 1)));
        }
        REQUIRE(x.size() == 256);
        double area = 0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            CHECK(x[i] < x[i + 1]);
            area += (x[i + 1] - x[i]) * (y[i] + y[i + 1]) / 2;
        }
        CHECK(std::abs(area - 1) < 1e-4);
    }

    TEST_CASE("spectrum lists 12/5 with its tags")
    {
        const Run r = run("spectrum");
        REQUIRE(r.status == 0);
        const Json j = Json::parse(r.out);
        bool found = false;
        for (const Json& p : j.at("spectrum"))
            if (p.at("mu").at("num") == "12" && p.at("mu").at("den") == "5") {
                found = true;
                CHECK(p.at("n") == 2);
                CHECK(p.at("sign") == -1);
                CHECK(p.at("m") == 1);
            }
        CHECK(found);
        CHECK(!j.at("boundary_labels").empty());
        CHECK(run("spectrum --format csv").out.rfind("mu,mu_decimal,n,sign,m\n", 0) == 0);
    }

    TEST_CASE("critical run: checks pass and 16 and 50 digits agree")
    {
        const Run hi = run("critical");
        REQUIRE(hi.status == 0);
        const Run lo = run("critical --precision 16");
        REQUIRE(lo.status == 0);
        const Json a = Json::parse(hi.out), b = Json::parse(lo.out);
        CHECK(a.at("all_checks_passed") == true);
        CHECK(std::abs(std::stod(a.at("c_c").get<std::string>()) - 8.8556546) < 1e-6);
        CHECK(std::abs(std::stod(a.at("gamma_s").get<std::string>()) + 0.2) < 1e-6);
        for (const char* key : {"c_c", "g_c", "x_plus_c", "x3_c", "edge_exponent", "mu", "gamma_s"}) {
            const double u = std::stod(a.at(key).get<std::string>()), v = std::stod(b.at(key).get<std::string>());
            CHECK_MESSAGE(std::abs(u - v) <= 1e-6 * std::max(1.0, std::abs(u)), key);
        }
    }
}
