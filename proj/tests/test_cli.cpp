#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "support.hpp"

using namespace pidkit;
using testing_support::fixture;
using testing_support::slurp;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_config(const RunConfig& c) {
    std::ostringstream out, err;
    int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig base(const std::string& command, const fs::path& out, const std::string& action = "") {
    RunConfig c;
    c.command = command;
    c.action = action;
    c.out = out.string();
    return c;
}

int shell(const std::string& args) {
    int status = std::system((std::string(PIDKIT_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, PredictReport) {
    TempDir d("cli_predict");
    auto c = base("scale", d.path() / "o", "predict");
    c.t1 = 28.5;
    c.g1 = 20207.0;
    c.g2 = 23017.0;
    auto r = run_config(c);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = Json::parse(slurp(d.path() / "o" / "report.json"));
    EXPECT_NEAR(j["critical_age_prediction"]["predicted_work_exp"].get<double>(), 30.4171, 1e-4);
    EXPECT_EQ(r.out, slurp(d.path() / "o" / "report.json"));
}

TEST(Cli, MissingFileWritesNothing) {
    TempDir d("cli_missing");
    auto c = base("curve", d.path() / "o");
    c.income = (d.path() / "nope.csv").string();
    auto r = run_config(c);
    EXPECT_EQ(r.code, kExitInvalid);
    EXPECT_NE(r.err.find("nope.csv"), std::string::npos);
    EXPECT_FALSE(fs::exists(d.path() / "o"));
}

TEST(Cli, OutOfRangeLevelExitsThree) {
    TempDir d("cli_range");
    auto c = base("scale", d.path() / "o", "match-year");
    c.gdp = {fixture("gdp_ted.csv")};
    c.country = {"USA"};
    c.level = 1e6;
    auto r = run_config(c);
    EXPECT_EQ(r.code, kExitInsufficient);
    EXPECT_NE(r.err.find("nearest endpoint 2014"), std::string::npos) << r.err;
}

TEST(Cli, TwoCurvesTwoFiles) {
    TempDir d("cli_curves");
    const std::string h = "country,year,currency,age_lo,age_hi,persons,mean_income\n";
    std::string csv = h;
    for (int year : {2000, 2001})
        for (int lo = 20; lo < 60; lo += 5)
            csv += "AAA," + std::to_string(year) + ",X," + std::to_string(lo) + "," + std::to_string(lo + 4) +
                   ",100," + std::to_string(1000 + (lo - 20) * (60 - lo) + year - 2000) + "\n";
    auto c = base("curve", d.path() / "o");
    c.income = d.file("in.csv", csv);
    ASSERT_EQ(run_config(c).code, kExitOk);
    for (const char* name : {"AAA_2000.csv", "AAA_2001.csv"}) {
        auto body = slurp(d.path() / "o" / name);
        EXPECT_EQ(body.substr(0, body.find('\n')), "work_exp,value,normalized") << name;
        auto back = parse_curve_csv((d.path() / "o" / name).string(), "x");
        EXPECT_TRUE(back.normalized);
        EXPECT_EQ(back.points.size(), 8u);
    }
    for (const auto& e : fs::directory_iterator(d.path() / "o"))
        EXPECT_NE(e.path().extension(), ".tmp") << e.path();
}

TEST(Cli, RerunIsByteIdentical) {
    TempDir d("cli_rerun");
    auto c = base("match", d.path() / "a");
    c.income = fixture("uk_income_bins.csv");
    c.country = {"GBR"};
    c.year = 2012;
    c.library = fixture("us_library_1yr.csv");
    c.gdp = {fixture("gdp_ted.csv")};
    ASSERT_EQ(run_config(c).code, kExitOk);
    c.out = (d.path() / "b").string();
    ASSERT_EQ(run_config(c).code, kExitOk);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(d.path() / "a")) {
        ++files;
        EXPECT_EQ(slurp(e.path()), slurp(d.path() / "b" / e.path().filename())) << e.path();
    }
    EXPECT_GE(files, 3u);
    auto j = Json::parse(slurp(d.path() / "a" / "report.json"));
    EXPECT_EQ(j["report"][0]["lag_years"], 20);
}

TEST(Cli, SimulateThenPeakRoundTrip) {
    TempDir d("cli_sim");
    auto sim = base("simulate", d.path() / "s");
    sim.level = 20000.0;
    ASSERT_EQ(run_config(sim).code, kExitOk);
    auto sj = Json::parse(slurp(d.path() / "s" / "report.json"));
    double tc = sj["simulation"]["critical_work_exp"].get<double>();
    auto peak = base("peak", d.path() / "p");
    peak.curve = (d.path() / "s" / "sim_20000.csv").string();
    ASSERT_EQ(run_config(peak).code, kExitOk);
    auto pj = Json::parse(slurp(d.path() / "p" / "report.json"));
    EXPECT_NEAR(pj["peaks"][0]["peak_work_exp"].get<double>(), tc, peak.grid + 1e-9);
}

TEST(Cli, SimulateSamplesAreSeeded) {
    TempDir d("cli_seed");
    auto c = base("simulate", d.path() / "a");
    c.samples = 2000;
    c.seed = 5;
    ASSERT_EQ(run_config(c).code, kExitOk);
    c.out = (d.path() / "b").string();
    ASSERT_EQ(run_config(c).code, kExitOk);
    EXPECT_EQ(slurp(d.path() / "a" / "pareto_sample.csv"), slurp(d.path() / "b" / "pareto_sample.csv"));
}

TEST(Cli, ValidateReportsDiagnostics) {
    TempDir d("cli_validate");
    auto c = base("validate", d.path() / "o");
    c.gdp = {fixture("gdp_ted.csv")};
    c.income = fixture("uk_income_bins.csv");
    auto ok = run_config(c);
    EXPECT_EQ(ok.code, kExitOk);
    EXPECT_EQ(ok.out, "ok\n");

    c.gdp = {d.file("g.csv", "country,year,gdp_pc\nA,2000,-3\nA,2001,4\n")};
    c.income = d.file("b.csv",
                      "country,year,currency,age_lo,age_hi,persons,mean_income\n"
                      "A,2000,X,20,24,1,1\nA,2000,X,22,29,1,1\n");
    auto bad = run_config(c);
    EXPECT_EQ(bad.code, kExitInvalid);
    EXPECT_NE(bad.out.find("g.csv:2:"), std::string::npos) << bad.out;
    EXPECT_NE(bad.out.find("rows 2 and 3"), std::string::npos) << bad.out;
    EXPECT_FALSE(fs::exists(d.path() / "o"));
}

TEST(Cli, UnwritableOutputDirectory) {
    TempDir d("cli_unwritable");
    auto blocker = d.file("file", "x");
    auto c = base("scale", fs::path(blocker) / "sub", "predict");
    c.t1 = 10.0;
    c.g1 = 1.0;
    c.g2 = 4.0;
    EXPECT_EQ(run_config(c).code, kExitInvalid);
}

TEST(Cli, BinaryExitCodes) {
    TempDir d("cli_binary");
    const std::string out = " --out " + (d.path() / "o").string();
    EXPECT_EQ(shell("scale predict --t1 28.5 --g1 20207 --g2 23017" + out), 0);
    EXPECT_EQ(shell("frobnicate"), 2);
    EXPECT_EQ(shell("scale predict --t1 abc"), 2);
    EXPECT_EQ(shell("curve --income " + (d.path() / "missing.csv").string() + out), 2);
    EXPECT_EQ(shell("scale match-year --gdp " + fixture("gdp_ted.csv") + " --country USA --level 1e6" + out), 3);
    EXPECT_EQ(shell("--help"), 0);
}
