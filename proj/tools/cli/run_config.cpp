#include "cli/run_config.hpp"

#include "json.hpp"
#include "mtcsim/error.hpp"
#include "mtcsim/io/config.hpp"
#include "mtcsim/units.hpp"

namespace mtcsim::cli {
namespace {

using nlohmann::json;

double quantity(const json& v, Dimension dim, const std::string& ctx) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_quantity(v.get<std::string>(), dim);
    } catch (const InputError& e) {
      throw InputError(ctx + ": " + e.what());
    }
  }
  throw InputError(ctx + ": expected a number or a quantity string");
}

std::vector<double> quantities(const json& v, Dimension dim, const std::string& ctx) {
  if (!v.is_array()) throw InputError(ctx + ": expected a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(quantity(v[i], dim, ctx + "[" + std::to_string(i) + "]"));
  return out;
}

std::string string_at(const json& obj, const char* key, const std::string& ctx) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw InputError(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::filesystem::path path_at(const json& obj, const char* key, const std::filesystem::path& base,
                              const std::string& ctx) {
  const std::filesystem::path p = string_at(obj, key, ctx);
  return p.is_absolute() ? p : base / p;
}

double positive_number(const json& obj, const char* key, const std::string& ctx) {
  const auto& v = obj.at(key);
  if (!v.is_number() || !(v.get<double>() > 0.0)) throw InputError(ctx + "." + key + ": expected a positive number");
  return v.get<double>();
}

std::size_t count_at(const json& obj, const char* key, const std::string& ctx) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(ctx + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

void parse_solver(const json& s, SteadyOptions& opt) {
  const std::string ctx = "solver";
  if (!s.is_object()) throw InputError("solver: expected an object");
  if (s.contains("tolerance")) opt.cg.tolerance = positive_number(s, "tolerance", ctx);
  if (s.contains("max_iterations")) opt.cg.max_iterations = count_at(s, "max_iterations", ctx);
  if (s.contains("preconditioner")) opt.cg.preconditioner = parse_preconditioner(string_at(s, "preconditioner", ctx));
  if (s.contains("picard_tolerance")) {
    opt.picard_tolerance = quantity(s.at("picard_tolerance"), Dimension::temperature, ctx + ".picard_tolerance");
    if (!(opt.picard_tolerance > 0.0)) throw InputError("solver.picard_tolerance must be positive");
  }
  if (s.contains("max_picard_iterations")) {
    opt.max_picard_iterations = count_at(s, "max_picard_iterations", ctx);
    if (opt.max_picard_iterations == 0) throw InputError("solver.max_picard_iterations must be at least 1");
  }
  if (s.contains("damping")) {
    opt.damping = positive_number(s, "damping", ctx);
    if (opt.damping > 1.0) throw InputError("solver.damping must lie in (0, 1]");
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("run config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("run config: expected a JSON object");

  RunConfig c;
  c.base_dir = base_dir;
  const std::string ctx = "run config";
  try {
    if (doc.contains("output_dir")) c.output_dir = path_at(doc, "output_dir", base_dir, ctx);
    else c.output_dir = base_dir / "out";
    if (doc.contains("device")) c.device = path_at(doc, "device", base_dir, ctx);
    if (doc.contains("materials")) c.materials = path_at(doc, "materials", base_dir, ctx);
    if (doc.contains("scenario")) {
      const auto& s = doc.at("scenario");
      if (s.is_object()) c.scenario_json = s.dump();
      else c.scenario_json = read_text_file(path_at(doc, "scenario", base_dir, ctx));
    }
    if (doc.contains("resolution")) {
      const auto& r = doc.at("resolution");
      c.resolution = parse_resolution(r.is_object() ? r.dump() : read_text_file(path_at(doc, "resolution", base_dir, ctx)));
    }
    if (doc.contains("solver")) parse_solver(doc.at("solver"), c.solver);
    if (doc.contains("gnuplot")) {
      if (!doc.at("gnuplot").is_boolean()) throw InputError("run config.gnuplot: expected true or false");
      c.gnuplot = doc.at("gnuplot").get<bool>();
    }

    if (doc.contains("transient")) {
      const auto& t = doc.at("transient");
      const std::string tc = "transient";
      TransientSettings s;
      if (!t.contains("t_end") || !t.contains("dt")) throw InputError("transient: t_end and dt are required");
      s.t_end = quantity(t.at("t_end"), Dimension::time, tc + ".t_end");
      s.dt = quantity(t.at("dt"), Dimension::time, tc + ".dt");
      if (t.contains("snapshots")) s.snapshot_times = quantities(t.at("snapshots"), Dimension::time, tc + ".snapshots");
      c.transient = s;
    }

    if (doc.contains("sweep")) {
      const auto& w = doc.at("sweep");
      const std::string wc = "sweep";
      SweepSettings s;
      if (w.contains("powers")) s.powers = quantities(w.at("powers"), Dimension::power, wc + ".powers");
      if (w.contains("probe")) s.probe = string_at(w, "probe", wc);
      if (w.contains("rth_powers")) s.rth_powers = quantities(w.at("rth_powers"), Dimension::power, wc + ".rth_powers");
      if (w.contains("import_csv")) s.import_csv = path_at(w, "import_csv", base_dir, wc);
      c.sweep = s;
    }

    if (doc.contains("calibrate")) {
      const auto& k = doc.at("calibrate");
      const std::string kc = "calibrate";
      CalibrateSettings s;
      if (!k.contains("samples_csv")) throw InputError("calibrate: samples_csv is required");
      s.samples_csv = path_at(k, "samples_csv", base_dir, kc);
      if (k.contains("bias_current")) s.bias_current = quantity(k.at("bias_current"), Dimension::current, kc + ".bias_current");
      if (k.contains("apply_csv")) s.apply_csv = path_at(k, "apply_csv", base_dir, kc);
      if (k.contains("voltage_column")) s.voltage_column = string_at(k, "voltage_column", kc);
      c.calibrate = s;
    }

    if (doc.contains("report")) {
      const auto& r = doc.at("report");
      const std::string rc = "report";
      ReportSettings s;
      if (!r.contains("artifacts") || !r.at("artifacts").is_array()) {
        throw InputError("report: artifacts must be a list of paths");
      }
      for (const auto& a : r.at("artifacts")) {
        if (!a.is_string()) throw InputError("report.artifacts: expected path strings");
        const std::filesystem::path p = a.get<std::string>();
        s.artifacts.push_back(p.is_absolute() ? p : base_dir / p);
      }
      if (r.contains("target_temperature")) {
        s.target_temperature = quantity(r.at("target_temperature"), Dimension::temperature, rc + ".target_temperature");
      }
      if (r.contains("power_budget")) s.power_budget = quantity(r.at("power_budget"), Dimension::power, rc + ".power_budget");
      c.report = s;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("run config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  return parse_run_config(text, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

Model load_model(const RunConfig& config) {
  if (!config.device) throw InputError("run config: 'device' is required for this command");
  if (!config.materials) throw InputError("run config: 'materials' is required for this command");
  if (config.scenario_json.empty()) throw InputError("run config: 'scenario' is required for this command");
  Model m;
  auto device = load_device(*config.device);
  m.spec = std::move(device.spec);
  if (config.resolution) m.resolution = *config.resolution;
  else if (device.resolution) m.resolution = *device.resolution;
  else throw InputError("no resolution given in the run config or the device file");
  m.materials = load_materials(*config.materials);
  m.scenario = parse_scenario(config.scenario_json);
  return m;
}

}  // namespace mtcsim::cli
