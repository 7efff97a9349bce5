// End-to-end tests for the lpplkit binary. argv[1] is the binary path,
// argv[2] the repo data directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_binary;
std::string g_data_dir;
fs::path g_work;

int run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// drops the leading "# manifest:" comment so runs with different run ids compare equal
std::string body_of(const fs::path& p) {
    const auto text = read_file(p);
    const auto nl = text.find('\n');
    return text.substr(0, 1) == "#" ? text.substr(nl + 1) : text;
}

json load_json(const fs::path& p) { return json::parse(read_file(p)); }

const std::string kFastFit = " --top-k 3 --max-iter 400";

void make_synth() {
    const auto params = g_work / "params.json";
    std::ofstream(params) << R"({"model":"simple","tc":2.1,"m":0.5,"omega":7.0,)"
                          << R"("phi":1.0,"A":5.0,"B":-1.0,"C":0.05})";
    REQUIRE(run("--out-dir " + (g_work / "synth").string() + " --seed 42 synth --params " +
                params.string() + " --sigma 0.01") == 0);
}

std::string synth_csv() { return (g_work / "synth" / "synth.csv").string(); }

}  // namespace

TEST_CASE("synth then fit recovers the generating parameters") {
    make_synth();
    const auto out = g_work / "fit";
    REQUIRE(run("--out-dir " + out.string() + " fit --input " + synth_csv() + kFastFit) == 0);
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "fit.csv"));
    CHECK(fs::exists(out / "fit_curve.csv"));
    const auto j = load_json(out / "fit.json");
    CHECK(j["qualified"].get<bool>());
    CHECK(j["params"]["tc"].get<double>() == doctest::Approx(2.1).epsilon(0.02));
    CHECK(j["params"]["m"].get<double>() == doctest::Approx(0.5).epsilon(0.1));
    CHECK(j["params"]["omega"].get<double>() == doctest::Approx(7.0).epsilon(0.05));
}

TEST_CASE("fit reruns are byte-identical") {
    const auto a = g_work / "fit_a";
    const auto b = g_work / "fit_b";
    REQUIRE(run("--out-dir " + a.string() + " fit --input " + synth_csv() + kFastFit) == 0);
    REQUIRE(run("--out-dir " + b.string() + " fit --input " + synth_csv() + kFastFit) == 0);
    CHECK(read_file(a / "fit.json") == read_file(b / "fit.json"));
    CHECK(read_file(a / "fit_curve.csv") == read_file(b / "fit_curve.csv"));
}

TEST_CASE("scan output is invariant to the worker count") {
    const auto common = " scan --input " + synth_csv() +
                        " --t-start-min 2006-06-01 --t-start-max 2006-10-01"
                        " --t-last 2008-05-31 --step 40" +
                        kFastFit;
    const auto a = g_work / "scan_w1";
    const auto b = g_work / "scan_w4";
    REQUIRE(run("--workers 1 --out-dir " + a.string() + common) == 0);
    REQUIRE(run("--workers 4 --out-dir " + b.string() + common) == 0);
    CHECK(body_of(a / "scan.csv") == body_of(b / "scan.csv"));
    CHECK(body_of(a / "scan.csv").find("2006-06-01,simple,") != std::string::npos);
}

TEST_CASE("weierstrass with one harmonic matches the simple model") {
    const auto simple = g_work / "h_simple";
    const auto one = g_work / "h_one";
    REQUIRE(run("--out-dir " + simple.string() + " fit --input " + synth_csv() + kFastFit) ==
            0);
    REQUIRE(run("--out-dir " + one.string() + " fit --model weierstrass --harmonics 1 "
                "--input " + synth_csv() + kFastFit) == 0);
    const double r0 = load_json(simple / "fit.json")["rmse"].get<double>();
    const double r1 = load_json(one / "fit.json")["rmse"].get<double>();
    CHECK(r1 == doctest::Approx(r0).epsilon(1e-8));
}

TEST_CASE("lomb finds the fixture frequency with a tiny false-alarm probability") {
    const auto out = g_work / "lomb";
    REQUIRE(run("--out-dir " + out.string() + " lomb --input " + g_data_dir +
                "/cosine_fixture.csv") == 0);
    const auto j = load_json(out / "spectrum.json");
    CHECK(j["peak_omega"].get<double>() == doctest::Approx(6.36).epsilon(0.01));
    CHECK(j["p_value"].get<double>() < 1e-10);
    CHECK(fs::exists(out / "spectrum.csv"));
}

TEST_CASE("supply subcommand reproduces the fixture regime shift") {
    const auto out = g_work / "supply";
    REQUIRE(run("--out-dir " + out.string() + " supply --input " + g_data_dir +
                "/supply_demand_fixture.csv --agency-a EIA --agency-b IEA") == 0);
    const auto j = load_json(out / "supply.json");
    CHECK(j["regime"]["pre"].get<double>() == doctest::Approx(1.0));
    CHECK(j["regime"]["post"].get<double>() < 1.0);
    CHECK(fs::exists(out / "gaps.csv"));
    CHECK(fs::exists(out / "discrepancy.csv"));
}

TEST_CASE("convert then fit pipeline runs on the converted series") {
    const auto fx = g_work / "fx.csv";
    {
        std::ifstream in(synth_csv());
        std::ofstream out(fx);
        std::string line;
        std::getline(in, line);  // manifest comment
        std::getline(in, line);  // header
        out << "date,value\n";
        while (std::getline(in, line)) {
            out << line.substr(0, line.find(',')) << ",1.25\n";
        }
    }
    const auto conv = g_work / "convert";
    REQUIRE(run("--out-dir " + conv.string() + " convert --input " + synth_csv() + " --fx " +
                fx.string()) == 0);
    const auto fit = g_work / "fit_converted";
    REQUIRE(run("--out-dir " + fit.string() + " fit --input " +
                (conv / "converted.csv").string() + kFastFit) == 0);
    // dividing every price by a constant shifts A only
    const auto j = load_json(fit / "fit.json");
    CHECK(j["params"]["omega"].get<double>() == doctest::Approx(7.0).epsilon(0.05));
}

TEST_CASE("bootstrap emits a replica distribution around the fitted tc") {
    const auto out = g_work / "boot";
    REQUIRE(run("--seed 5 --workers 2 --out-dir " + out.string() + " bootstrap --input " +
                synth_csv() + " --replicas 12" + kFastFit) == 0);
    const auto j = load_json(out / "bootstrap.json");
    CHECK(j["n_qualified"].get<int>() + j["n_unqualified"].get<int>() == 12);
    const double q50 = j["quantiles"]["q50"].get<double>();
    CHECK(q50 == doctest::Approx(2008.52).epsilon(0.001));
}

TEST_CASE("exit codes follow the contract") {
    CHECK(run("fit --input /nonexistent.csv") == 2);
    CHECK(run("fit --input " + synth_csv() + " --t-start not-a-date") == 2);
    // all scan windows below the minimum size
    CHECK(run("--out-dir " + (g_work / "scan_fail").string() + " scan --input " + synth_csv() +
              " --t-start-min 2008-05-20 --t-start-max 2008-05-25 --t-last 2008-05-31") == 3);
    const auto flat = g_work / "flat.csv";
    {
        std::ofstream out(flat);
        out << "x,y\n";
        for (int i = 0; i < 50; ++i) out << 0.1 * i << ",4.25\n";
    }
    CHECK(run("--out-dir " + (g_work / "lomb_flat").string() + " lomb --input " +
              flat.string()) == 4);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <lpplkit-binary> <data-dir>\n");
        return 1;
    }
    g_binary = argv[1];
    g_data_dir = argv[2];
    g_work = fs::temp_directory_path() / "lpplkit_cli_test";
    fs::remove_all(g_work);
    fs::create_directories(g_work);
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    const int rc = ctx.run();
    fs::remove_all(g_work);
    return rc;
}
