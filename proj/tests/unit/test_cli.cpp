#include "qmap_cli/commands.hpp"
#include "qmap_cli/report.hpp"

#include "qmap/grid.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qmap;
using namespace qmap::cli;
namespace fs = std::filesystem;

namespace {

const char* kBase = R"([run]
n = 1
p = 4
seed = 3

[domain]
shape = ball
radius = 1
h = 0.125
psi = 0
f = 1

[solver]
tol = 1e-10
omega = 1.6
)";

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("qmap_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig config_for(const std::string& command, const fs::path& out, const std::string& text = kBase) {
    RunConfig c = parse_config(text);
    c.command = command;
    c.out_dir = out.string();
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
    text.replace(text.find(from), from.size(), to);
    return text;
}

}  // namespace

TEST(Config, RoundTripAndHash) {
    RunConfig c = parse_config(kBase);
    c.deltas = {0.25, 0.5, 0.75};
    c.center = {0.1, 0, 0, 0};
    c.psi = "max(x0, 0) + x1 / 3";
    const RunConfig back = parse_config(dump_config(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(dump_config(back), dump_config(c));
    EXPECT_EQ(config_hash(back), config_hash(c));
    EXPECT_EQ(config_hash(c).size(), 64u);

    RunConfig moved = c;
    moved.out_dir = "elsewhere";
    EXPECT_EQ(config_hash(moved), config_hash(c));
    RunConfig finer = c;
    finer.h = 0.0625;
    EXPECT_NE(config_hash(finer), config_hash(c));

    RunConfig box = c;
    box.shape = Shape::box;
    box.center.clear();
    box.lower = 0;
    box.upper = 1;
    EXPECT_EQ(parse_config(dump_config(box)), box);
}

TEST(Config, ErrorsNameTheField) {
    auto field_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.field() + " | " + e.what();
        }
        return std::string("no error");
    };
    EXPECT_EQ(field_of(replaced(kBase, "n = 1\n", "")).rfind("run.n | run.n: missing required field", 0), 0u);
    const std::string p2 = field_of(replaced(kBase, "p = 4", "p = 2"));
    EXPECT_EQ(p2.rfind("run.p", 0), 0u);
    EXPECT_NE(p2.find("p > 2"), std::string::npos);
    EXPECT_EQ(field_of(replaced(kBase, "p = 4", "p = 5/2")), "no error");
    EXPECT_EQ(field_of(replaced(kBase, "p = 4", "p = inf")), "no error");
    EXPECT_EQ(field_of(replaced(kBase, "h = 0.125", "h = -1")).rfind("domain.h", 0), 0u);
    EXPECT_EQ(field_of(replaced(kBase, "h = 0.125", "h = fine")).rfind("domain.h", 0), 0u);
    EXPECT_EQ(field_of(replaced(kBase, "psi = 0", "psi = x9")).rfind("domain.psi", 0), 0u);
    EXPECT_EQ(field_of(replaced(kBase, "psi = 0", "psi = (x0")).rfind("domain.psi", 0), 0u);
    EXPECT_EQ(field_of(replaced(kBase, "omega = 1.6", "omega = 2.5")).rfind("solver.omega", 0), 0u);
    EXPECT_EQ(field_of(replaced(kBase, "omega = 1.6", "colour = red")).rfind("solver.colour", 0), 0u);
    EXPECT_EQ(field_of(replaced(kBase, "n = 1", "n = 3")).rfind("run.n", 0), 0u);
    EXPECT_THROW(load_config("/nonexistent/qmap.ini"), ConfigError);
}

TEST(Commands, VerifyWritesAllPassIdentities) {
    const fs::path out = scratch("verify");
    EXPECT_EQ(dispatch(config_for("verify", out), std::cout), exit_pass);
    const auto j = read_json((out / "identities.json").string());
    EXPECT_TRUE(j.at("all_pass").get<bool>());
    EXPECT_EQ(j.at("forms").get<int>(), 100);
    for (const auto& row : j.at("identities")) {
        EXPECT_GE(row.at("checked").get<int>(), 100);
        EXPECT_EQ(row.at("failed").get<int>(), 0);
    }
    EXPECT_EQ(j.at("meta").at("c_n"), "1");
    EXPECT_EQ(j.at("meta").at("config_hash"), config_hash(config_for("verify", out)));
}

TEST(Commands, SolveNeedsCalibrationThenMeetsTolerance) {
    const fs::path out = scratch("solve");
    const RunConfig solve = config_for("solve", out);
    EXPECT_THROW(dispatch(solve, std::cout), ConfigError);

    EXPECT_EQ(dispatch(config_for("calibrate", out), std::cout), exit_pass);
    EXPECT_EQ(read_json((out / "calibration.json").string()).at("c_n"), "1");
    ASSERT_EQ(dispatch(solve, std::cout), exit_pass);

    const auto report = read_json((out / "solve.json").string());
    EXPECT_LT(report.at("last_update").get<double>(), 1e-10);
    EXPECT_EQ(report.at("meta").at("c_n"), "1");
    const QGridData g = read_qgrid((out / "u.qgrid").string());
    EXPECT_EQ(g.n, 1u);
    EXPECT_DOUBLE_EQ(g.h, 0.125);
    double lowest = 0.0;
    for (double v : g.values)
        if (std::isfinite(v)) lowest = std::min(lowest, v);
    EXPECT_NEAR(lowest, -1.0 / 8, 1e-8);

    const std::string log = slurp(out / "residual.csv");
    EXPECT_EQ(log.rfind("# command=solve\n# config_hash=" + config_hash(solve), 0), 0u);
    EXPECT_NE(log.find("# c_n=1\nsweep,max_update\n"), std::string::npos);

    const std::string first = slurp(out / "u.qgrid");
    ASSERT_EQ(dispatch(solve, std::cout), exit_pass);
    EXPECT_EQ(slurp(out / "u.qgrid"), first);
}

TEST(Commands, AnalyzeAndCapacityReports) {
    const fs::path out = scratch("analyze");
    const std::string text = replaced(kBase, "psi = 0", "psi = abs(x0)");
    EXPECT_EQ(dispatch(config_for("calibrate", out, text), std::cout), exit_pass);
    EXPECT_EQ(dispatch(config_for("analyze", out, text), std::cout), exit_pass);
    for (const char* f : {"modulus.csv", "holder.csv", "stability.csv", "gaps.csv", "budget.json"})
        EXPECT_TRUE(fs::exists(out / f)) << f;
    std::istringstream gaps(slurp(out / "gaps.csv"));
    std::string line;
    int data_rows = 0;
    while (std::getline(gaps, line)) data_rows += !line.empty() && line[0] != '#';
    EXPECT_EQ(data_rows, 4);  // header and three radii
    const auto budget = read_json((out / "budget.json").string());
    EXPECT_EQ(budget.at("alpha_max_intro"), "2/5");
    EXPECT_EQ(budget.at("gamma_r"), "1/3");
    EXPECT_NE(slurp(out / "stability.csv").find("perturbation,lhs,rhs,gamma,C_fit\nkappa=1.1,"), std::string::npos);

    RunConfig cap = config_for("capacity", out, text);
    cap.h = 0.25;
    cap.radii = {0.5, 0.25};
    EXPECT_EQ(dispatch(cap, std::cout), exit_pass);
    const std::string csv = slurp(out / "capacity.csv");
    EXPECT_NE(csv.find("set,cap_over_K,cap_over_Omega,volume,f_integral\nball_r=0.5,"), std::string::npos);

    setenv("QMAP_THREADS", "2", 1);
    EXPECT_EQ(thread_cap(), 2u);
    EXPECT_EQ(dispatch(cap, std::cout), exit_pass);
    EXPECT_EQ(slurp(out / "capacity.csv"), csv);
    unsetenv("QMAP_THREADS");

    cap.radii = {1.5};
    EXPECT_THROW(dispatch(cap, std::cout), ConfigError);
}
