#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtcsim/analysis/calibration.hpp"
#include "mtcsim/analysis/fit.hpp"
#include "mtcsim/analysis/sweep.hpp"
#include "mtcsim/analysis/time_constant.hpp"
#include "mtcsim/discretization.hpp"
#include "mtcsim/error.hpp"
#include "mtcsim/flux.hpp"
#include "mtcsim/grid_builder.hpp"
#include "mtcsim/io/config.hpp"
#include "mtcsim/io/csv.hpp"
#include "mtcsim/io/hash.hpp"
#include "mtcsim/io/vtk.hpp"
#include "mtcsim/material.hpp"
#include "mtcsim/probe.hpp"
#include "mtcsim/steady.hpp"
#include "mtcsim/transient.hpp"
#include "mtcsim/units.hpp"
#include "mtcsim/version.hpp"

namespace mtcsim::cli {
namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

void write_json(const fs::path& path, const ordered_json& doc) { write_text(path, doc.dump(2) + "\n"); }

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

ordered_json grid_json(const VoxelGrid& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"nz", g.nz}, {"dx_m", g.dx}, {"dy_m", g.dy}, {"dz_m", g.dz}};
}

struct BuiltModel {
  Model model;
  VoxelGrid grid;
};

BuiltModel build(const RunConfig& config) {
  BuiltModel b{load_model(config), {}};
  b.grid = build_grid(b.model.spec, b.model.resolution, b.model.materials);
  return b;
}

ordered_json probes_json(const VoxelGrid& grid, const TemperatureField& field, const ScenarioSpec& scenario) {
  ordered_json probes = ordered_json::array();
  for (const auto& p : scenario.probes) {
    const double mx = probe(grid, field, p.region, Statistic::max);
    const double avg = probe(grid, field, p.region, Statistic::average);
    probes.push_back({{"name", p.name},
                      {"region", p.region.label()},
                      {"statistic", statistic_name(p.statistic)},
                      {"value_K", p.statistic == Statistic::max ? mx : avg},
                      {"max_K", mx},
                      {"average_K", avg}});
  }
  return probes;
}

ordered_json balance_json(const EnergyBalance& b) {
  return {{"injected_W", b.injected}, {"boundary_flux_W", b.boundary_flux}, {"relative_error", b.relative_error}};
}

std::string gnuplot_pt_curve(const QuadraticFit& fit) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel 'P (mW)'\nset ylabel 'T (K)'\n"
    << "f(x) = " << format_number(fit.c0) << " + " << format_number(fit.c1) << "*x + " << format_number(fit.c2)
    << "*x**2\n"
    << "plot 'pt_curve.csv' using 1:2 with points pt 7, f(x) with lines title 'quadratic fit'\n";
  return s.str();
}

std::string gnuplot_trace(const TransientTrace& trace) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel 't (ms)'\nset ylabel 'T (K)'\n"
    << "plot ";
  for (std::size_t i = 0; i < trace.probe_names.size(); ++i) {
    if (i) s << ", ";
    s << "'trace.csv' using ($1*1000):" << i + 2 << " with lines";
  }
  s << '\n';
  return s.str();
}

const char* reason_name(TimeConstantError::Reason r) {
  switch (r) {
    case TimeConstantError::Reason::too_short:
      return "too_short";
    case TimeConstantError::Reason::zero_rise:
      return "zero_rise";
    case TimeConstantError::Reason::unsettled:
      return "unsettled";
  }
  return "error";
}

std::string snapshot_name(double t) { return "field_t" + format_number(t) + "s.vtk"; }

ordered_json read_artifact(const fs::path& path) {
  const auto text = read_text_file(path);
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InputError("artifact '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

QuadraticFit fit_from_artifact(const ordered_json& doc, const fs::path& path) {
  try {
    QuadraticFit f;
    f.c0 = doc.at("c0_K").get<double>();
    f.c1 = doc.at("c1_K_per_mW").get<double>();
    f.c2 = doc.at("c2_K_per_mW2").get<double>();
    f.residual_rms = doc.at("residual_rms_K").get<double>();
    f.samples = doc.at("samples").get<std::size_t>();
    return f;
  } catch (const ordered_json::exception& e) {
    throw InputError("fit artifact '" + path.string() + "' is malformed: " + e.what());
  }
}

}  // namespace

int cmd_steady(const CommandContext& ctx) {
  auto& out = *ctx.out;
  const auto b = build(ctx.config);
  const auto& scenario = b.model.scenario;
  const Discretization disc(b.grid, b.model.materials, scenario);
  const auto clamps_before = clamp_warning_count();
  const auto result = solve_steady(disc, ctx.config.solver);
  const auto m_hash = model_hash(b.grid, b.model.materials, scenario);
  const auto s_hash = scenario_hash(b.grid, b.model.materials, scenario);

  ensure_dir(ctx.out_dir);
  ordered_json doc{{"kind", "steady"}, {"model_hash", m_hash}, {"scenario_hash", s_hash}};
  doc["converged"] = result.converged;
  doc["message"] = result.message;
  doc["grid"] = grid_json(b.grid);
  doc["unknowns"] = disc.size();
  doc["picard_iterations"] = result.field.picard_iterations;
  doc["cg_iterations"] = result.field.cg_iterations;
  doc["preconditioner"] = preconditioner_name(ctx.config.solver.cg.preconditioner);
  ordered_json history = ordered_json::array();
  for (const auto& h : result.history) {
    history.push_back({{"cg_iterations", h.cg_iterations},
                       {"cg_relative_residual", h.cg_residual},
                       {"max_change_K", h.max_change}});
  }
  doc["picard_history"] = history;
  if (!result.converged) {
    write_json(ctx.out_dir / "steady.json", doc);
    throw SolverError(result.message.empty() ? "steady solve did not converge" : result.message);
  }

  const auto power = integrate_power(disc);
  ordered_json sources = ordered_json::array();
  for (std::size_t i = 0; i < disc.sources().size(); ++i) {
    sources.push_back({{"name", disc.sources()[i].name},
                       {"declared_W", disc.sources()[i].declared},
                       {"integrated_W", power.per_source[i].second}});
  }
  doc["sources"] = sources;
  doc["probes"] = probes_json(b.grid, result.field, scenario);
  const auto balance = energy_balance(disc, result.field);
  doc["energy_balance"] = balance_json(balance);
  doc["conductivity_clamp_warnings"] = clamp_warning_count() - clamps_before;

  write_vtk_file(ctx.out_dir / "field.vtk", b.grid, result.field, disc.ambient_temperature(),
                 "mtcsim steady temperature field scenario_hash=" + s_hash);
  write_json(ctx.out_dir / "steady.json", doc);

  out << "steady: " << b.grid.nx << "x" << b.grid.ny << "x" << b.grid.nz << " voxels, " << disc.size()
      << " unknowns, " << result.field.picard_iterations << " Picard / " << result.field.cg_iterations
      << " CG iterations\n";
  for (const auto& p : doc["probes"]) {
    out << "  " << p["name"].get<std::string>() << " (" << p["statistic"].get<std::string>()
        << "): " << fixed(p["value_K"].get<double>(), 4) << " K\n";
  }
  out << "  energy balance: injected " << format_number(balance.injected) << " W, boundary flux "
      << format_number(balance.boundary_flux) << " W, relative error " << format_number(balance.relative_error)
      << "\n";
  return kExitOk;
}

int cmd_transient(const CommandContext& ctx) {
  auto& out = *ctx.out;
  auto& err = *ctx.err;
  if (!ctx.config.transient) throw InputError("run config: 'transient' section is required");
  const auto& ts = *ctx.config.transient;
  if (!(ts.dt > 0.0)) throw InputError("transient.dt must be positive");
  if (!(ts.t_end > 0.0)) throw InputError("transient.t_end must be positive");

  const auto b = build(ctx.config);
  const auto& scenario = b.model.scenario;
  const Discretization disc(b.grid, b.model.materials, scenario);
  TransientOptions opts;
  opts.t_end = ts.t_end;
  opts.dt = ts.dt;
  opts.cg = ctx.config.solver.cg;
  opts.snapshot_times = ts.snapshot_times;
  const auto result = run_transient(b.grid, disc, scenario.probes, {}, opts);
  const auto& trace = result.trace;
  const auto m_hash = model_hash(b.grid, b.model.materials, scenario);
  const auto s_hash = scenario_hash(b.grid, b.model.materials, scenario);

  ensure_dir(ctx.out_dir);
  write_csv_file(ctx.out_dir / "trace.csv", trace_table(trace));
  for (const auto& [t, field] : result.snapshots) {
    write_vtk_file(ctx.out_dir / snapshot_name(t), b.grid, field, disc.ambient_temperature(),
                   "mtcsim transient field t=" + format_number(t) + " s scenario_hash=" + s_hash);
  }
  if (ctx.config.gnuplot) write_text(ctx.out_dir / "trace.gp", gnuplot_trace(trace));

  ordered_json doc{{"kind", "time_constant"}, {"model_hash", m_hash}, {"scenario_hash", s_hash}};
  doc["scheme"] = trace.scheme;
  doc["dt_s"] = ts.dt;
  doc["t_end_s"] = ts.t_end;
  doc["steps"] = trace.step_sizes.size();
  doc["cg_iterations"] = result.cg_iterations;
  doc["trace_ok"] = trace.ok;
  doc["trace_message"] = trace.message;
  doc["trace_file"] = "trace.csv";
  ordered_json probes = ordered_json::array();
  for (const auto& name : trace.probe_names) {
    ordered_json p{{"name", name}};
    try {
      const auto tc = extract_time_constant(trace, name);
      p["status"] = "ok";
      p["tau_crossing_s"] = tc.tau_crossing;
      p["tau_fit_s"] = number_or_null(tc.tau_fit);
      p["initial_K"] = tc.initial;
      p["settled_K"] = tc.settled;
      p["crossings"] = tc.crossings;
      p["warnings"] = tc.warnings;
      for (const auto& w : tc.warnings) err << "warning: probe " << name << ": " << w << '\n';
      out << "  " << name << ": tau = " << fixed(tc.tau_crossing * 1e3, 4) << " ms (63.2% crossing), "
          << (std::isfinite(tc.tau_fit) ? fixed(tc.tau_fit * 1e3, 4) + " ms" : std::string("n/a"))
          << " (exponential fit)\n";
    } catch (const TimeConstantError& e) {
      p["status"] = reason_name(e.reason());
      p["tau_crossing_s"] = nullptr;
      p["tau_fit_s"] = nullptr;
      p["message"] = e.what();
      err << "warning: probe " << name << ": " << e.what() << '\n';
    }
    probes.push_back(p);
  }
  doc["probes"] = probes;
  write_json(ctx.out_dir / "tau.json", doc);

  out << "transient: " << trace.step_sizes.size() << " steps, " << result.cg_iterations << " CG iterations\n";
  if (!trace.ok) throw SolverError(trace.message);
  return kExitOk;
}

int cmd_sweep_fit(const CommandContext& ctx) {
  auto& out = *ctx.out;
  if (!ctx.config.sweep) throw InputError("run config: 'sweep' section is required");
  const auto& ss = *ctx.config.sweep;

  PTCurve curve;
  ordered_json doc{{"kind", "quadratic_fit"}};
  ordered_json sweep_doc;
  if (ss.import_csv) {
    curve = pt_curve_from(read_csv_file(*ss.import_csv));
    curve.validate();
    doc["provenance"] = "imported";
    doc["model_hash"] = nullptr;
    doc["source"] = ss.import_csv->filename().string();
  } else {
    std::set<double> distinct(ss.powers.begin(), ss.powers.end());
    if (distinct.size() < 3) {
      throw InputError("rank deficient: a quadratic fit needs at least 3 distinct powers, got " +
                       std::to_string(distinct.size()));
    }
    const auto b = build(ctx.config);
    const auto& scenario = b.model.scenario;
    SweepOptions opts;
    opts.steady = ctx.config.solver;
    opts.probe = ss.probe;
    opts.threads = ctx.threads;
    const auto result = power_sweep(b.grid, b.model.materials, scenario, ss.powers, opts);
    curve = result.curve;
    const auto m_hash = model_hash(b.grid, b.model.materials, scenario);
    doc["provenance"] = "simulated";
    doc["model_hash"] = m_hash;
    doc["probe"] = result.probe;

    sweep_doc = {{"kind", "power_sweep"}, {"model_hash", m_hash}, {"probe", result.probe}};
    sweep_doc["grid"] = grid_json(b.grid);
    ordered_json points = ordered_json::array();
    ordered_json hashes = ordered_json::array();
    for (const auto& p : result.points) {
      ordered_json values = ordered_json::object();
      for (std::size_t i = 0; i < result.probe_names.size(); ++i) values[result.probe_names[i]] = p.probe_values[i];
      points.push_back({{"power_W", p.power},
                        {"scenario_hash", p.scenario_hash},
                        {"probes_K", values},
                        {"energy_balance", balance_json(p.balance)},
                        {"picard_iterations", p.picard_iterations},
                        {"cg_iterations", p.cg_iterations}});
      hashes.push_back(p.scenario_hash);
    }
    sweep_doc["points"] = points;
    doc["scenario_hashes"] = hashes;
  }

  const auto fit = fit_quadratic(curve);
  doc["units"] = {{"power", "mW"}, {"temperature", "K"}};
  doc["c0_K"] = fit.c0;
  doc["c1_K_per_mW"] = fit.c1;
  doc["c2_K_per_mW2"] = fit.c2;
  doc["residual_rms_K"] = fit.residual_rms;
  doc["samples"] = fit.samples;
  ordered_json pts = ordered_json::array();
  for (const auto& s : curve.samples) {
    const double p_mw = s.power / kMilliwatt;
    pts.push_back({{"power_mW", p_mw}, {"temperature_K", s.temperature}, {"residual_K", s.temperature - fit.evaluate(p_mw)}});
  }
  doc["points"] = pts;

  std::vector<double> rth_powers = ss.rth_powers.empty() ? std::vector<double>{} : ss.rth_powers;
  if (rth_powers.empty()) {
    for (const auto& s : curve.samples) rth_powers.push_back(s.power);
  }
  CsvTable rth{{"power_mW", "rth_K_per_mW"}, {}};
  ordered_json rth_doc = ordered_json::array();
  for (const double p : rth_powers) {
    if (p < 0.0) throw InputError("sweep.rth_powers must be non-negative");
    const double p_mw = p / kMilliwatt;
    const double r = thermal_resistance(fit, p_mw);
    rth.rows.push_back({p_mw, r});
    rth_doc.push_back({{"power_mW", p_mw}, {"rth_K_per_mW", r}});
  }
  doc["rth"] = rth_doc;

  ensure_dir(ctx.out_dir);
  write_csv_file(ctx.out_dir / "pt_curve.csv", pt_curve_table(curve));
  write_csv_file(ctx.out_dir / "rth.csv", rth);
  write_json(ctx.out_dir / "fit.json", doc);
  if (!sweep_doc.is_null()) write_json(ctx.out_dir / "sweep.json", sweep_doc);
  if (ctx.config.gnuplot) write_text(ctx.out_dir / "pt_curve.gp", gnuplot_pt_curve(fit));

  out << "fit (" << doc["provenance"].get<std::string>() << ", " << fit.samples << " samples): T = "
      << format_number(fit.c0) << " + " << format_number(fit.c1) << " P + " << format_number(fit.c2)
      << " P^2  (P in mW), residual rms " << format_number(fit.residual_rms) << " K\n";
  for (const auto& row : rth.rows) {
    out << "  R_th(" << format_number(row[0]) << " mW) = " << fixed(row[1], 4) << " K/mW\n";
  }
  return kExitOk;
}

int cmd_calibrate(const CommandContext& ctx) {
  auto& out = *ctx.out;
  if (!ctx.config.calibrate) throw InputError("run config: 'calibrate' section is required");
  const auto& cs = *ctx.config.calibrate;
  const auto samples = calibration_samples_from(read_csv_file(cs.samples_csv));
  const auto cal = fit_linear_calibration(samples, cs.bias_current);

  ordered_json doc{{"kind", "calibration"}, {"provenance", "imported"}, {"model_hash", nullptr}};
  doc["source"] = cs.samples_csv.filename().string();
  doc["slope_V_per_K"] = cal.slope;
  doc["intercept_V"] = cal.intercept;
  doc["bias_current_A"] = cal.bias_current;
  doc["residual_rms_V"] = cal.residual_rms;
  doc["samples"] = cal.samples;

  CsvTable applied{{cs.voltage_column, "temperature_K"}, {}};
  if (cs.apply_csv) {
    for (const double v : read_csv_file(*cs.apply_csv).values(cs.voltage_column)) {
      applied.rows.push_back({v, voltage_to_temperature(cal, v)});
    }
    doc["applied_file"] = "calibrated.csv";
  }

  ensure_dir(ctx.out_dir);
  write_json(ctx.out_dir / "calibration.json", doc);
  if (cs.apply_csv) write_csv_file(ctx.out_dir / "calibrated.csv", applied);

  out << "calibration: V = " << format_number(cal.slope) << " V/K * T + " << format_number(cal.intercept)
      << " V at " << format_number(cal.bias_current) << " A bias, residual rms " << format_number(cal.residual_rms)
      << " V\n";
  if (cs.apply_csv) out << "  converted " << applied.rows.size() << " voltages\n";
  return kExitOk;
}

int cmd_report(const CommandContext& ctx) {
  auto& out = *ctx.out;
  if (!ctx.config.report) throw InputError("run config: 'report' section is required");
  const auto& rs = *ctx.config.report;
  if (rs.artifacts.empty()) throw InputError("report.artifacts is empty");

  std::vector<ordered_json> docs;
  std::string hash;
  fs::path hash_source;
  for (const auto& path : rs.artifacts) {
    auto doc = read_artifact(path);
    if (!doc.is_object()) throw InputError("artifact '" + path.string() + "' is not a JSON object");
    if (doc.contains("model_hash") && doc["model_hash"].is_string()) {
      const auto h = doc["model_hash"].get<std::string>();
      if (hash.empty()) {
        hash = h;
        hash_source = path;
      } else if (h != hash) {
        throw InputError("artifacts come from different models: '" + hash_source.string() + "' has model_hash " +
                         hash + ", '" + path.string() + "' has " + h);
      }
    }
    docs.push_back(std::move(doc));
  }

  ordered_json report{{"kind", "report"}, {"model_hash", hash.empty() ? ordered_json(nullptr) : ordered_json(hash)}};
  ordered_json inputs = ordered_json::array();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    inputs.push_back({{"file", rs.artifacts[i].filename().string()}, {"kind", docs[i].value("kind", "unknown")}});
  }
  report["artifacts"] = inputs;

  const double budget_mw = rs.power_budget / kMilliwatt;
  ordered_json audits = ordered_json::array();
  bool any = false;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& doc = docs[i];
    const auto kind = doc.value("kind", "");
    if (kind == "quadratic_fit") {
      any = true;
      const auto fit = fit_from_artifact(doc, rs.artifacts[i]);
      const double t_budget = fit.evaluate(budget_mw);
      const bool meets = t_budget >= rs.target_temperature;
      const auto p_target = power_for_temperature(fit, rs.target_temperature);
      const double rth_budget = thermal_resistance(fit, budget_mw);
      ordered_json a{{"file", rs.artifacts[i].filename().string()},
                     {"provenance", doc.value("provenance", "unknown")},
                     {"c0_K", fit.c0},
                     {"c1_K_per_mW", fit.c1},
                     {"c2_K_per_mW2", fit.c2},
                     {"power_budget_mW", budget_mw},
                     {"temperature_at_budget_K", t_budget},
                     {"target_temperature_K", rs.target_temperature},
                     {"target_reached_within_budget", meets},
                     {"rth_at_budget_K_per_mW", rth_budget},
                     {"rth_at_zero_K_per_mW", thermal_resistance(fit, 0.0)},
                     {"power_for_target_mW", p_target ? ordered_json(*p_target) : ordered_json(nullptr)}};
      audits.push_back(a);
      out << "fit " << rs.artifacts[i].filename().string() << " (" << a["provenance"].get<std::string>()
          << "): T = " << format_number(fit.c0) << " + " << format_number(fit.c1) << " P + " << format_number(fit.c2)
          << " P^2  (P in mW)\n";
      out << "  T(" << format_number(budget_mw) << " mW) = " << fixed(t_budget, 2) << " K "
          << (meets ? ">=" : "<") << " " << format_number(rs.target_temperature) << " K target: "
          << (meets ? "target reached within the power budget" : "target NOT reached within the power budget")
          << '\n';
      out << "  R_th(" << format_number(budget_mw) << " mW) = " << fixed(rth_budget, 4) << " K/mW, R_th(0) = "
          << fixed(thermal_resistance(fit, 0.0), 4) << " K/mW\n";
      if (p_target) {
        out << "  power for " << format_number(rs.target_temperature) << " K: " << fixed(*p_target, 3) << " mW\n";
      } else {
        out << "  power for " << format_number(rs.target_temperature) << " K: not reached by the fit\n";
      }
    } else if (kind == "time_constant" && doc.contains("probes")) {
      any = true;
      ordered_json a{{"file", rs.artifacts[i].filename().string()}, {"probes", ordered_json::array()}};
      for (const auto& p : doc["probes"]) {
        a["probes"].push_back({{"name", p.value("name", "")},
                               {"status", p.value("status", "")},
                               {"tau_crossing_s", p.contains("tau_crossing_s") ? p["tau_crossing_s"] : ordered_json()}});
        out << "time constant " << p.value("name", "") << ": ";
        if (p.value("status", "") == "ok") {
          out << fixed(p["tau_crossing_s"].get<double>() * 1e3, 4) << " ms\n";
        } else {
          out << p.value("status", "") << '\n';
        }
      }
      audits.push_back(a);
    } else if (kind == "steady" && doc.contains("probes")) {
      any = true;
      ordered_json a{{"file", rs.artifacts[i].filename().string()}, {"probes", doc["probes"]}};
      if (doc.contains("energy_balance")) a["energy_balance"] = doc["energy_balance"];
      audits.push_back(a);
      for (const auto& p : doc["probes"]) {
        out << "steady " << p.value("name", "") << ": " << fixed(p.value("value_K", 0.0), 4) << " K\n";
      }
    }
  }
  if (!any) throw InputError("report: none of the artifacts is a fit, time-constant, or steady result");
  report["audits"] = audits;

  ensure_dir(ctx.out_dir);
  write_json(ctx.out_dir / "report.json", report);
  return kExitOk;
}

unsigned threads_from_environment() {
  const char* v = std::getenv("MTCSIM_THREADS");
  if (!v || !*v) return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    throw InputError(std::string("MTCSIM_THREADS must be a positive integer, got '") + v + "'");
  }
  return static_cast<unsigned>(n);
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mtcsim: thermal simulation of suspended micro-hotplates"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"steady", "steady temperature field, probes, energy balance"},
      {"transient", "step response trace and time constants"},
      {"sweep", "power sweep and quadratic P-T fit"},
      {"calibrate", "linear sensor calibration"},
      {"report", "audit fit and result artifacts"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
  }
  app.set_version_flag("--version", std::string(kVersion));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  CommandContext ctx;
  ctx.out = &out;
  ctx.err = &err;
  int code = kExitOk;
  std::string error_message;
  try {
    ctx.threads = threads_from_environment();
    ctx.config = load_run_config(config_path);
    ctx.out_dir = out_dir.empty() ? ctx.config.output_dir : fs::path(out_dir);
    if (command == "steady") code = cmd_steady(ctx);
    else if (command == "transient") code = cmd_transient(ctx);
    else if (command == "sweep") code = cmd_sweep_fit(ctx);
    else if (command == "calibrate") code = cmd_calibrate(ctx);
    else code = cmd_report(ctx);
  } catch (const InputError& e) {
    code = kExitInput;
    error_message = e.what();
  } catch (const SolverError& e) {
    code = kExitSolver;
    error_message = e.what();
  } catch (const IoError& e) {
    code = kExitIo;
    error_message = e.what();
  } catch (const std::bad_alloc&) {
    code = kExitSolver;
    error_message = "out of memory";
  } catch (const std::exception& e) {
    code = kExitInput;
    error_message = e.what();
  }
  if (!error_message.empty()) err << "error: " << error_message << '\n';

  // Timestamps live only in this sidecar so the other artifacts stay reproducible.
  if (!ctx.out_dir.empty() && fs::is_directory(ctx.out_dir)) {
    ordered_json meta{{"command", command},
                      {"config", config_path},
                      {"version", kVersion},
                      {"started_utc", started},
                      {"finished_utc", utc_now()},
                      {"elapsed_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                      {"threads", ctx.threads},
                      {"exit_code", code}};
    if (!error_message.empty()) meta["error"] = error_message;
    try {
      write_json(ctx.out_dir / "run_meta.json", meta);
    } catch (const IoError& e) {
      err << "error: " << e.what() << '\n';
      if (code == kExitOk) code = kExitIo;
    }
  }
  return code;
}

}  // namespace mtcsim::cli
