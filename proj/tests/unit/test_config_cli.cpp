#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "thermobath/config.hpp"
#include "thermobath/csv.hpp"
#include "thermobath/errors.hpp"

using namespace thermobath;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("thermobath_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(THERMOBATH_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

const char* kSmall = R"([temperature]
profile = linear
T0 = 1
slope = 0.2
x0 = -5
[box]
length = 10
[langevin]
model = overdamped1
n_traj = 2000
dt = 0.01
t_final = 1
kappa = 0.5
[fpe]
n_cells = 64
t_final = 1
)";

} // namespace

TEST(Config, DefaultsAndValues) {
    const auto c = parse(kSmall);
    EXPECT_EQ(c.langevin.n_traj, 2000);
    EXPECT_EQ(c.langevin.kappa.value(), 0.5);
    EXPECT_EQ(c.temperature.x0, -5.0);
    EXPECT_EQ(c.bath.family, "ohmic");
    EXPECT_FALSE(c.echo.empty());
}

TEST(Config, ShippedConfigLoads) {
    const auto c = load_config(std::string(THERMOBATH_CONFIG_DIR) + "/default.ini");
    EXPECT_EQ(c.box_length, 10.0);
}

TEST(Config, CollectsEveryIssue) {
    try {
        parse("[langevin]\nn_traj = many\nbogus = 1\n[bath]\nfamily = blue\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_GE(e.issues().size(), 3u);
        const std::string all = e.what();
        EXPECT_NE(all.find("langevin.bogus"), std::string::npos);
        EXPECT_NE(all.find("langevin.n_traj"), std::string::npos);
        EXPECT_NE(all.find("bath.family"), std::string::npos);
    }
}

TEST(Config, SemanticValidation) {
    // linear profile reaching T <= 0 inside the box
    EXPECT_THROW(parse("[temperature]\nprofile = linear\nT0 = 1\nslope = 0.2\n[box]\nlength = 20\n"), ConfigError);
    EXPECT_THROW(parse("[langevin]\ndt = -1\n"), ConfigError);
    EXPECT_THROW(parse("[units]\nk_B = 1.38e-23\n"), ConfigError);
}

TEST(Config, GaussianInitial) {
    const auto g = parse_gaussian_initial("gaussian(1.5, 0.25)");
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->first, 1.5);
    EXPECT_EQ(g->second, 0.25);
    EXPECT_FALSE(parse_gaussian_initial("uniform").has_value());
    EXPECT_THROW(parse_gaussian_initial("gaussian(1)"), Error);
}

TEST(Csv, RoundTripFormatting) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.0}) EXPECT_EQ(std::stod(format_number(v)), v);
    EXPECT_EQ(format_number(std::int64_t{42}), "42");
}

TEST(Csv, WriterLayout) {
    const fs::path dir = scratch("csv");
    {
        CsvWriter w((dir / "a.csv").string(), {"t", "x"});
        w.values(0.5, 2.0);
        w.values(1.0, -0.25);
        w.close();
    }
    EXPECT_EQ(slurp(dir / "a.csv"), "t,x\n0.5,2\n1,-0.25\n");
    CsvWriter w((dir / "b.csv").string(), {"t", "x"});
    EXPECT_THROW(w.row({"1"}), Error);
}

TEST(Cli, BadConfigExitsTwoWithoutOutputs) {
    const fs::path dir = scratch("bad");
    std::ofstream(dir / "bad.ini") << "[langevin]\nn_traj = -3\nnot_a_key = 1\n";
    const fs::path out = dir / "out";
    EXPECT_EQ(run_cli("simulate-langevin --config " + (dir / "bad.ini").string() + " --out " + out.string()), 2);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_EQ(run_cli("simulate-langevin --config " + (dir / "missing.ini").string() + " --out " + out.string()), 2);
    EXPECT_EQ(run_cli("no-such-command"), 2);
}

TEST(Cli, RunWritesCsvAndManifest) {
    const fs::path dir = scratch("good");
    std::ofstream(dir / "run.ini") << kSmall;
    const fs::path out = dir / "out";
    ASSERT_EQ(run_cli("simulate-langevin --config " + (dir / "run.ini").string() + " --seed 7 --out " + out.string()),
              0);
    EXPECT_TRUE(fs::exists(out / "trajectories.csv"));
    EXPECT_TRUE(fs::exists(out / "snapshot.csv"));
    const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(m["subcommand"], "simulate-langevin");
    EXPECT_EQ(m["seed"], 7);
    EXPECT_EQ(m["status"], "ok");
    EXPECT_TRUE(m.contains("config"));
    EXPECT_TRUE(m.contains("wall_time_s"));
    EXPECT_EQ(slurp(out / "trajectories.csv").substr(0, 12), "t,traj_id,x\n");

    ASSERT_EQ(run_cli("solve-fpe --config " + (dir / "run.ini").string() + " --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "density.csv"));
    EXPECT_TRUE(fs::exists(out / "flux.csv"));
    EXPECT_TRUE(fs::exists(out / "steady_state.csv"));
    ASSERT_EQ(run_cli("analyze --config " + (dir / "run.ini").string() + " --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "fit.csv"));
    ASSERT_EQ(run_cli("emit-plots --config " + (dir / "run.ini").string() + " --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "plot_results.py"));
}

TEST(Cli, ReproducibleForFixedSeed) {
    const fs::path dir = scratch("repro");
    std::ofstream(dir / "run.ini") << kSmall;
    for (const char* o : {"a", "b"})
        ASSERT_EQ(run_cli("simulate-langevin --config " + (dir / "run.ini").string() + " --out " + (dir / o).string()),
                  0);
    EXPECT_EQ(slurp(dir / "a" / "trajectories.csv"), slurp(dir / "b" / "trajectories.csv"));
}
