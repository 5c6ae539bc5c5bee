#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ftdiag/app/commands.hpp"
#include "ftdiag/app/config.hpp"
#include "ftdiag/app/svg.hpp"
#include "ftdiag/format.hpp"
#include "support.hpp"

using namespace ftdiag;
using namespace ftdiag::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("ftdiag_app_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig base_config(const fs::path& out) {
    RunConfig c = config_from_json(json{{"netlist", test::source_path("circuits/biquad.cir")},
                                        {"out_dir", out.string()}});
    return c;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

}  // namespace

TEST(Config, Defaults) {
    const auto c = config_from_json(json::object());
    EXPECT_EQ(c.netlist, "circuits/biquad.cir");
    EXPECT_TRUE(c.faults.targets.empty());
    EXPECT_DOUBLE_EQ(c.faults.range_low, 0.6);
    EXPECT_DOUBLE_EQ(c.faults.step, 0.1);
    EXPECT_EQ(c.ga.population_size, 128u);
    EXPECT_EQ(c.ga.generations, 15u);
    EXPECT_DOUBLE_EQ(c.ga.reproduction_rate, 0.5);
    EXPECT_DOUBLE_EQ(c.ga.mutation_rate, 0.4);
    EXPECT_EQ(c.grid, 201u);
    EXPECT_EQ(c.unit, FrequencyUnit::RadPerSec);
    EXPECT_EQ(config_keys().size(), 21u);
}

TEST(Config, TargetsForms) {
    EXPECT_EQ(config_from_json(json{{"targets", "R1, C2"}}).faults.targets,
              (std::vector<std::string>{"R1", "C2"}));
    EXPECT_EQ(config_from_json(json{{"targets", json::array({"R3"})}}).faults.targets,
              (std::vector<std::string>{"R3"}));
}

TEST(Config, MalformedTable) {
    const auto netlist = test::source_path("circuits/biquad.cir");
    struct Case {
        json overlay;
        std::string field;
    };
    const std::vector<Case> cases{
        {{{"bogus", 1}}, "bogus"},
        {{{"seed", -1}}, "seed"},
        {{{"seed", "one"}}, "seed"},
        {{{"unit", "khz"}}, "unit"},
        {{{"grid_spacing", "cubic"}}, "grid_spacing"},
        {{{"targets", 5}}, "targets"},
        {{{"netlist", "/nonexistent/x.cir"}}, "netlist"},
        {{{"range_low", 0.0}}, "range_low"},
        {{{"range_low", 1.2}}, "range_low"},
        {{{"range_high", 0.9}}, "range_high"},
        {{{"step", 0.07}}, "step"},
        {{{"step", -0.1}}, "step"},
        {{{"f_min", 0.0}}, "f_min"},
        {{{"f_max", 0.001}}, "f_max"},
        {{{"grid", 1}}, "grid"},
        {{{"population_size", 1}}, "population_size"},
        {{{"reproduction_rate", 1.5}}, "reproduction_rate"},
        {{{"mutation_rate", -0.2}}, "mutation_rate"},
        {{{"n_frequencies", 0}}, "n_frequencies"},
        {{{"intersection_tol", 0.0}}, "intersection_tol"},
        {{{"origin_tol", -1.0}}, "origin_tol"},
        {{{"ambiguity_margin", -0.1}}, "ambiguity_margin"},
        {{{"out_dir", ""}}, "out_dir"},
        {{{"targets", json::array({"R1", "R1"})}}, "targets"},
    };
    for (const auto& c : cases) {
        json j = {{"netlist", netlist}};
        j.update(c.overlay);
        try {
            validate(config_from_json(j));
            ADD_FAILURE() << "accepted " << c.overlay.dump();
        } catch (const ConfigError& e) {
            EXPECT_EQ(e.field(), c.field) << c.overlay.dump() << ": " << e.what();
        }
    }
}

TEST(Config, TargetsCheckedAgainstNetlist) {
    for (const char* bad : {"E1", "R9", "V1"}) {
        auto c = config_from_json(
            json{{"netlist", test::source_path("circuits/biquad.cir")}, {"targets", bad}});
        validate(c);
        try {
            (void)load_circuit(c);
            ADD_FAILURE() << bad;
        } catch (const ConfigError& e) {
            EXPECT_EQ(e.field(), "targets");
        }
    }
}

TEST(Commands, SimulateDefaults) {
    const auto dir = scratch_dir("simulate");
    std::ostringstream out, err;
    ASSERT_EQ(run_simulate(base_config(dir), out, err), kExitOk) << err.str();
    const auto csv = slurp(dir / "dictionary.csv");
    EXPECT_EQ(count_of(csv, "\n"), 1u + 57u * 201u);
    EXPECT_EQ(count_of(csv, "\n__golden__,"), 201u);
}

TEST(Commands, SimulateGridTen) {
    const auto dir = scratch_dir("grid10");
    auto c = base_config(dir);
    c.grid = 10;
    std::ostringstream out, err;
    ASSERT_EQ(run_simulate(c, out, err), kExitOk) << err.str();
    const auto csv = slurp(dir / "dictionary.csv");
    EXPECT_EQ(count_of(csv, "\n__golden__,"), 10u);
    EXPECT_EQ(count_of(csv, "\nR3,0.20000000000000001,"), 10u);
}

TEST(Commands, MissingNetlist) {
    const auto dir = scratch_dir("missing");
    auto c = base_config(dir);
    c.netlist = (dir / "nope.cir").string();
    std::ostringstream out, err;
    EXPECT_EQ(run_simulate(c, out, err), kExitUsage);
    EXPECT_NE(err.str().find("nope.cir"), std::string::npos) << err.str();
}

TEST(Commands, NetlistSyntaxErrorIsUsage) {
    const auto dir = scratch_dir("badnet");
    {
        std::ofstream(dir / "bad.cir") << "V1 1 0 1\nQ1 1 0 3\n.input V1\n.output 1\n";
    }
    auto c = base_config(dir);
    c.netlist = (dir / "bad.cir").string();
    std::ostringstream out, err;
    EXPECT_EQ(run_simulate(c, out, err), kExitUsage);
}

class Pipeline : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = scratch_dir("pipeline");
        auto c = base_config(dir_);
        c.ga.population_size = 24;
        c.ga.generations = 3;
        std::ostringstream out, err;
        ASSERT_EQ(run_optimize(c, out, err), kExitOk) << err.str();
        config_ = c;
    }
    static fs::path dir_;
    static RunConfig config_;
};
fs::path Pipeline::dir_;
RunConfig Pipeline::config_;

TEST_F(Pipeline, OptimizeOutputs) {
    for (const char* f : {"ga_log.csv", "best_vector.json", "trajectories.csv", "intersections.csv"}) {
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    }
    EXPECT_EQ(count_of(slurp(dir_ / "ga_log.csv"), "\n"), 5u);
    const auto stored = stored_vector_from_json(slurp(dir_ / "best_vector.json"));
    EXPECT_EQ(stored.vector.size(), 2u);
    EXPECT_EQ(stored.fitness, fitness_from_intersections(stored.intersections));
    EXPECT_EQ(stored.seed, 1u);
    EXPECT_EQ(stored_vector_to_json(stored), slurp(dir_ / "best_vector.json"));
    EXPECT_EQ(parse_trajectories_csv(slurp(dir_ / "trajectories.csv")).size(), 7u);
}

TEST_F(Pipeline, DiagnoseMeasuredGoldenIsNominal) {
    const auto stored = stored_vector_from_json(slurp(dir_ / "best_vector.json"));
    const auto golden = evaluate_at(test::biquad(), stored.vector.frequencies);
    DiagnoseRequest req;
    req.measured = format_g17(golden[0]) + "," + format_g17(golden[1]);
    std::ostringstream out, err;
    ASSERT_EQ(run_diagnose(config_, req, out, err), kExitOk) << err.str();
    EXPECT_NE(out.str().find("nominal / no fault"), std::string::npos) << out.str();
}

TEST_F(Pipeline, DiagnoseInject) {
    DiagnoseRequest req;
    req.inject = "R3:+0.2";
    std::ostringstream out, err;
    ASSERT_EQ(run_diagnose(config_, req, out, err), kExitOk) << err.str();
    const auto csv = slurp(dir_ / "diagnosis.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "rank,component,distance_db,est_deviation,via_perpendicular");
    EXPECT_EQ(count_of(csv, "\n"), 8u);
}

TEST_F(Pipeline, DiagnoseUsageErrors) {
    std::ostringstream out, err;
    DiagnoseRequest arity;
    arity.measured = "1,2,3";
    EXPECT_EQ(run_diagnose(config_, arity, out, err), kExitUsage);
    EXPECT_NE(err.str().find("3 values"), std::string::npos) << err.str();
    DiagnoseRequest unknown;
    unknown.inject = "R99:+0.2";
    EXPECT_EQ(run_diagnose(config_, unknown, out, err), kExitUsage);
    DiagnoseRequest opamp;
    opamp.inject = "E1:+0.2";
    EXPECT_EQ(run_diagnose(config_, opamp, out, err), kExitUsage);
    DiagnoseRequest both;
    both.inject = "R1:0.1";
    both.measured = "1,2";
    EXPECT_EQ(run_diagnose(config_, both, out, err), kExitUsage);
    EXPECT_EQ(run_diagnose(config_, DiagnoseRequest{}, out, err), kExitUsage);
    DiagnoseRequest missing_vector;
    missing_vector.inject = "R1:0.1";
    missing_vector.vector_path = (dir_ / "none.json").string();
    EXPECT_EQ(run_diagnose(config_, missing_vector, out, err), kExitUsage);
}

TEST_F(Pipeline, PlotWithQuery) {
    PlotRequest req;
    req.query = "0.5,-0.25";
    std::ostringstream out, err;
    ASSERT_EQ(run_plot(config_, req, out, err), kExitOk) << err.str();
    const auto svg = slurp(dir_ / "trajectories.svg");
    EXPECT_EQ(count_of(svg, "<polyline class=\"trajectory\""), 7u);
    EXPECT_EQ(count_of(svg, "class=\"query\""), 1u);
    EXPECT_EQ(count_of(svg, "class=\"legend\""), 1u);
    EXPECT_EQ(count_of(svg, "class=\"golden\""), 1u);

    PlotRequest plain;
    ASSERT_EQ(run_plot(config_, plain, out, err), kExitOk);
    EXPECT_EQ(count_of(slurp(dir_ / "trajectories.svg"), "class=\"query\""), 0u);
}

TEST(Commands, PlotEmptyInput) {
    const auto dir = scratch_dir("plot_empty");
    { std::ofstream(dir / "empty.csv"); }
    auto c = base_config(dir);
    PlotRequest req;
    req.input = (dir / "empty.csv").string();
    std::ostringstream out, err;
    EXPECT_EQ(run_plot(c, req, out, err), kExitUsage);
    req.input = (dir / "absent.csv").string();
    EXPECT_EQ(run_plot(c, req, out, err), kExitUsage);
}

TEST(StoredVector, RejectsMalformed) {
    EXPECT_THROW((void)stored_vector_from_json("[]"), ConfigError);
    EXPECT_THROW((void)stored_vector_from_json("{\"frequencies\": [1, -2]}"), ConfigError);
    EXPECT_THROW((void)stored_vector_from_json("{\"frequencies\": \"1,2\"}"), ConfigError);
    EXPECT_THROW((void)stored_vector_from_json("{\"frequencies\": [1, 2], \"unit\": \"x\"}"),
                 ConfigError);
}
