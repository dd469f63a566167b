#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "json.hpp"
#include "mtcsim/io/config.hpp"
#include "mtcsim/io/csv.hpp"
#include "test_support.hpp"

namespace mtcsim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const char* kSmallDevice = R"({
  "island": { "width": "40um" },
  "plate": { "thickness": "2um", "material": "GaAs" },
  "bridges": { "length": "20um", "width": "10um" },
  "frame": { "width": "10um", "thickness": "4um" },
  "layers": [ { "material": "SiC", "thickness": "500nm" }, { "material": "NiO", "thickness": "100nm" } ],
  "heater": { "material": "Pt", "thickness": "150nm", "x": ["-15um", "15um"], "y": ["-15um", "15um"] },
  "sensor": { "material": "TiNi", "thickness": "100nm", "x": ["-5um", "5um"], "y": ["-5um", "5um"] },
  "resolution": { "dx": "5um", "dy": "5um", "dz": "1um" }
})";

const char* kScenario = R"({
  "sources": [ { "name": "heater", "region": "heater", "power": "1mW" } ],
  "probes": [ { "name": "sensor_avg", "region": "sensor", "statistic": "average" },
              { "name": "heater_max", "region": "heater", "statistic": "max" } ]
})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("mtcsim_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("device.json", kSmallDevice);
    write("scenario.json", kScenario);
    fs::copy_file(testing::data_dir() / "reference_materials.json", dir_ / "materials.json");
    unsetenv("MTCSIM_THREADS");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  json model_config(json extra) const {
    json c = {{"device", "device.json"}, {"materials", "materials.json"}, {"scenario", "scenario.json"}};
    for (auto& [k, v] : extra.items()) c[k] = v;
    return c;
  }

  int run(const std::string& command, const json& config, const std::string& out_name = "out") {
    write(command + "_config.json", config.dump(2));
    const std::string cfg = (dir_ / (command + "_config.json")).string();
    const std::string outd = (dir_ / out_name).string();
    const char* argv[] = {"mtcsim", command.c_str(), "--config", cfg.c_str(), "--out", outd.c_str()};
    out_.str("");
    err_.str("");
    return run_cli(6, argv, out_, err_);
  }

  static json probe_entry(const json& doc, const std::string& name) {
    for (const auto& p : doc["probes"]) {
      if (p["name"] == name) return p;
    }
    ADD_FAILURE() << "no probe " << name;
    return json::object();
  }

  json read_json(const fs::path& p) const {
    std::ifstream in(dir_ / p);
    return json::parse(in);
  }

  std::string slurp(const fs::path& p) const { return read_text_file(dir_ / p); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, SteadyWritesArtifacts) {
  ASSERT_EQ(run("steady", model_config({})), kExitOk) << err_.str();
  const auto s = read_json("out/steady.json");
  EXPECT_TRUE(s["converged"].get<bool>());
  EXPECT_LT(s["energy_balance"]["relative_error"].get<double>(), 1e-4);
  EXPECT_GT(probe_entry(s, "sensor_avg")["value_K"].get<double>(), 300.0);
  const auto vtk = slurp("out/field.vtk");
  EXPECT_EQ(vtk.rfind("# vtk DataFile Version 3.0\n", 0), 0u);
  EXPECT_NE(vtk.find(s["scenario_hash"].get<std::string>()), std::string::npos);
  const auto meta = read_json("out/run_meta.json");
  EXPECT_EQ(meta["exit_code"].get<int>(), 0);
}

TEST_F(CliTest, SteadyIsByteIdenticalOnRerun) {
  ASSERT_EQ(run("steady", model_config({}), "a"), kExitOk);
  ASSERT_EQ(run("steady", model_config({}), "b"), kExitOk);
  EXPECT_EQ(slurp("a/field.vtk"), slurp("b/field.vtk"));
  EXPECT_EQ(slurp("a/steady.json"), slurp("b/steady.json"));
}

TEST_F(CliTest, ZeroPowerGivesUniformField) {
  write("scenario.json", R"({ "sources": [ { "region": "heater", "power": 0 } ],
    "probes": [ { "name": "sensor_avg", "region": "sensor" } ] })");
  ASSERT_EQ(run("steady", model_config({})), kExitOk) << err_.str();
  const auto s = read_json("out/steady.json");
  EXPECT_EQ(probe_entry(s, "sensor_avg")["value_K"].get<double>(), 300.0);
  EXPECT_EQ(probe_entry(s, "sensor_avg")["max_K"].get<double>(), 300.0);
}

TEST_F(CliTest, MissingMaterialFileIsInputError) {
  auto c = model_config({});
  c["materials"] = "nope.json";
  EXPECT_EQ(run("steady", c), kExitInput);
  EXPECT_NE(err_.str().find("nope.json"), std::string::npos);
}

TEST_F(CliTest, UnknownMaterialIsInputError) {
  write("device.json", std::string(kSmallDevice).replace(std::string(kSmallDevice).find("\"Pt\""), 4, "\"Xx\""));
  EXPECT_EQ(run("steady", model_config({})), kExitInput);
  EXPECT_NE(err_.str().find("Xx"), std::string::npos);
}

TEST_F(CliTest, MissingConfigIsInputError) {
  const char* argv[] = {"mtcsim", "steady", "--config", "/nonexistent/config.json"};
  EXPECT_EQ(run_cli(4, argv, out_, err_), kExitInput);
}

TEST_F(CliTest, NonPositiveTimeStepIsInputError) {
  EXPECT_EQ(run("transient", model_config({{"transient", {{"t_end", "1ms"}, {"dt", 0}}}})), kExitInput);
  EXPECT_EQ(run("transient", model_config({{"transient", {{"t_end", "1ms"}, {"dt", "-1us"}}}})), kExitInput);
}

TEST_F(CliTest, SolverFailureExitCode) {
  auto c = model_config({});
  c["solver"] = {{"max_iterations", 1}};
  EXPECT_EQ(run("steady", c), kExitSolver);
  EXPECT_TRUE(fs::exists(dir_ / "out/steady.json"));
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
  write("blocker", "x");
  EXPECT_EQ(run("steady", model_config({}), "blocker/sub"), kExitIo);
}

TEST_F(CliTest, TransientTraceAndUnsettledWarning) {
  ASSERT_EQ(run("transient", model_config({{"transient", {{"t_end", "50us"}, {"dt", "5us"}}}})), kExitOk)
      << err_.str();
  const auto trace = read_csv_file(dir_ / "out/trace.csv");
  EXPECT_EQ(trace.header, (std::vector<std::string>{"t_seconds", "sensor_avg", "heater_max"}));
  EXPECT_EQ(trace.rows.size(), 11u);
  EXPECT_EQ(trace.rows.front()[1], 300.0);
  EXPECT_DOUBLE_EQ(trace.rows.back()[0], 50e-6);
  const auto tau = read_json("out/tau.json");
  EXPECT_EQ(probe_entry(tau, "sensor_avg")["status"].get<std::string>(), "unsettled");
  EXPECT_NE(err_.str().find("settled"), std::string::npos);
}

TEST_F(CliTest, SweepNeedsThreePowers) {
  EXPECT_EQ(run("sweep", model_config({{"sweep", {{"powers", {"0mW", "1mW"}}}}})), kExitInput);
  EXPECT_NE(err_.str().find("rank"), std::string::npos);
}

TEST_F(CliTest, SweepFitsAndWritesCurve) {
  ASSERT_EQ(run("sweep", model_config({{"sweep", {{"powers", {"0mW", "1mW", "2mW", "3mW"}}}}})), kExitOk)
      << err_.str();
  const auto fit = read_json("out/fit.json");
  EXPECT_GT(fit["c1_K_per_mW"].get<double>(), 0.0);
  EXPECT_GT(fit["c2_K_per_mW2"].get<double>(), 0.0);
  const auto curve = read_csv_file(dir_ / "out/pt_curve.csv");
  EXPECT_EQ(curve.header, (std::vector<std::string>{"power_mW", "temperature_K"}));
  EXPECT_EQ(curve.rows.size(), 4u);
}

TEST_F(CliTest, ImportedCurveRecoversCoefficients) {
  std::string csv = "power_mW,temperature_K\n";
  for (double p : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    csv += format_number(p) + "," + format_number(305.23 + 10.297 * p + 0.262 * p * p) + "\n";
  }
  write("pt.csv", csv);
  ASSERT_EQ(run("sweep", json{{"sweep", {{"import_csv", "pt.csv"}}}}), kExitOk) << err_.str();
  const auto fit = read_json("out/fit.json");
  EXPECT_NEAR(fit["c0_K"].get<double>(), 305.23, 1e-9);
  EXPECT_NEAR(fit["c1_K_per_mW"].get<double>(), 10.297, 1e-9);
  EXPECT_NEAR(fit["c2_K_per_mW2"].get<double>(), 0.262, 1e-9);
  EXPECT_TRUE(fit["model_hash"].is_null());
}

TEST_F(CliTest, ReportRejectsMixedModels) {
  ASSERT_EQ(run("steady", model_config({}), "a"), kExitOk);
  write("device.json", std::string(kSmallDevice).replace(std::string(kSmallDevice).find("40um"), 4, "50um"));
  ASSERT_EQ(run("steady", model_config({}), "b"), kExitOk);
  EXPECT_EQ(run("report", json{{"report", {{"artifacts", {"a/steady.json", "b/steady.json"}}}}}), kExitInput);
  EXPECT_NE(err_.str().find("different models"), std::string::npos);
}

TEST_F(CliTest, ReportAuditsFit) {
  std::string csv = "power_mW,temperature_K\n";
  for (double p : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    csv += format_number(p) + "," + format_number(305.23 + 10.297 * p + 0.262 * p * p) + "\n";
  }
  write("pt.csv", csv);
  ASSERT_EQ(run("sweep", json{{"sweep", {{"import_csv", "pt.csv"}}}}, "fit"), kExitOk);
  ASSERT_EQ(run("report", json{{"report", {{"artifacts", {"fit/fit.json"}},
                                           {"target_temperature", "600K"},
                                           {"power_budget", "20mW"}}}}),
            kExitOk)
      << err_.str();
  EXPECT_NE(out_.str().find("target reached"), std::string::npos) << out_.str();
  EXPECT_TRUE(fs::exists(dir_ / "out/report.json"));
}

TEST_F(CliTest, CalibrationRoundTrip) {
  std::string samples = "temperature_K,voltage_V\n";
  for (double t : {300.0, 350.0, 400.0, 450.0}) samples += format_number(t) + "," + format_number(0.001 * t + 0.2) + "\n";
  write("cal.csv", samples);
  write("readings.csv", "voltage_V\n0.5\n0.6\n");
  ASSERT_EQ(run("calibrate", json{{"calibrate", {{"samples_csv", "cal.csv"}, {"bias_current", "1mA"},
                                                 {"apply_csv", "readings.csv"}}}}),
            kExitOk)
      << err_.str();
  const auto cal = read_json("out/calibration.json");
  EXPECT_NEAR(cal["slope_V_per_K"].get<double>(), 0.001, 1e-15);
  const auto applied = read_csv_file(dir_ / "out/calibrated.csv");
  EXPECT_NEAR(applied.values("temperature_K")[0], 300.0, 1e-9);
  EXPECT_NEAR(applied.values("temperature_K")[1], 400.0, 1e-9);
}

TEST_F(CliTest, InvalidThreadCount) {
  setenv("MTCSIM_THREADS", "zero", 1);
  EXPECT_EQ(run("steady", model_config({})), kExitInput);
  EXPECT_NE(err_.str().find("MTCSIM_THREADS"), std::string::npos);
  setenv("MTCSIM_THREADS", "2", 1);
  EXPECT_EQ(threads_from_environment(), 2u);
  unsetenv("MTCSIM_THREADS");
}

}  // namespace
}  // namespace mtcsim::cli
