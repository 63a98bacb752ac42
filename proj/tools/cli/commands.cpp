#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cli/svg.hpp"
#include "json.hpp"
#include "krf/analytic_profile.hpp"
#include "krf/chart.hpp"
#include "krf/curvature.hpp"
#include "krf/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace krf::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write '" + p.string() + "'");
  f << text;
}

ordered_json num_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

Profile initial_profile(const RunConfig& cfg, const FlowSchedule& sch) {
  auto grid = make_grid(cfg.m, cfg.kappa);
  if (cfg.initial.kind == "reference") return reference_profile(grid, class_at(sch, 0.0));
  const auto coeffs = cfg.initial.shape_coeffs;
  try {
    return from_shape(grid, cfg.a0, cfg.b0, [&](double x) { return PolynomialProfile::eval(coeffs, x); });
  } catch (const AdmissibilityError& e) {
    throw ConfigError("initial.shape_coeffs", std::string("inadmissible initial profile: ") + e.what());
  }
}

std::vector<double> column(const std::vector<MonitorSet>& rows, double MonitorSet::*field) {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& m : rows) v.push_back(m.*field);
  return v;
}

void write_plots(const fs::path& dir, const RunRecord& rec) {
  LineChart prof;
  prof.title = "momentum profile snapshots";
  prof.xlabel = "x";
  prof.ylabel = "f";
  prof.legend = rec.snapshots.size() <= 24;
  const double T = rec.schedule.T;
  for (const auto& s : rec.snapshots)
    prof.series.push_back({"t=" + fmt(s.t), time_color(T > 0 ? s.t / T : 0.0), s.grid->x, s.f});
  write_file(dir / "profiles.svg", render_svg(prof));

  std::vector<double> tau;
  for (const auto& m : rec.monitors) tau.push_back(T - m.t);
  LineChart mon;
  mon.title = "monitors approaching T";
  mon.xlabel = "T - t";
  mon.ylabel = "value";
  mon.logx = mon.logy = true;
  mon.series.push_back({"K_lead", "#c0392b", tau, column(rec.monitors, &MonitorSet::K_lead)});
  mon.series.push_back({"(T-t) K_lead", "#8e44ad", tau, column(rec.monitors, &MonitorSet::typeI_product)});
  mon.series.push_back({"sup f_rho", "#2471a3", tau, column(rec.monitors, &MonitorSet::sup_f_rho)});
  mon.series.push_back({"fiber_diam", "#229954", tau, column(rec.monitors, &MonitorSet::fiber_diam)});
  mon.series.push_back({"sup|f_rr/f_r|", "#d68910", tau, column(rec.monitors, &MonitorSet::sup_abs_fpp_over_fp)});
  mon.series.push_back({"R_max", "#515a5a", tau, column(rec.monitors, &MonitorSet::R_max)});
  write_file(dir / "monitors.svg", render_svg(mon));

  LineChart sp;
  sp.title = "splitting factors against K_lead";
  sp.xlabel = "K_lead";
  sp.ylabel = "factor";
  sp.logx = sp.logy = true;
  const auto K = column(rec.monitors, &MonitorSet::K_lead);
  sp.series.push_back({"s_orth", "#2471a3", K, column(rec.monitors, &MonitorSet::s_orth)});
  sp.series.push_back({"s1", "#c0392b", K, column(rec.monitors, &MonitorSet::s1)});
  sp.series.push_back({"s2", "#229954", K, column(rec.monitors, &MonitorSet::s2)});
  sp.series.push_back({"s3", "#8e44ad", K, column(rec.monitors, &MonitorSet::s3)});
  write_file(dir / "splitting.svg", render_svg(sp));
}

// RAII-free parse of a csv file of doubles with a header line
std::vector<std::vector<double>> read_csv(const fs::path& p, std::vector<std::string>& header) {
  std::ifstream f(p);
  if (!f) throw Error("cannot open '" + p.string() + "'");
  std::string line;
  std::getline(f, line);
  header.clear();
  {
    std::stringstream ss(line);
    std::string h;
    while (std::getline(ss, h, ',')) header.push_back(h);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> r;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc()) throw Error("bad number '" + cell + "' in " + p.string());
      r.push_back(v);
    }
    if (r.size() != header.size()) throw Error("ragged row in " + p.string());
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::string error_line(int code, const std::string& field, const std::string& msg) {
  std::string m = msg;
  std::replace(m.begin(), m.end(), '\n', ' ');
  return "error code=" + std::to_string(code) + " field=" + field + " msg=" + m + "\n";
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const FlowSchedule s = blow_up_time(cfg.spec, cfg.a0, cfg.b0);
    const ClassState c = class_at(s, s.T);
    out << "case=" << to_string(s.kase) << " T=" << fmt(s.T) << " a_T=" << fmt(c.a) << " b_T=" << fmt(c.b) << "\n";
    return kOk;
  } catch (const DomainError& e) {
    err << error_line(kInvalidConfig, "class", e.what());
    return kInvalidConfig;
  }
}

std::string summary_json(const FlowSchedule& schedule, const std::vector<MonitorSet>& rows,
                         const TypeThresholds& th) {
  ordered_json j;
  j["case"] = to_string(schedule.kase);
  j["T"] = schedule.T;
  ordered_json thr;
  thr["tail_variation"] = th.tail_variation;
  thr["slope"] = th.slope;
  thr["decades"] = th.decades;
  try {
    const Summary s = summarize(schedule, rows, th);
    j["type_verdict"] = to_string(s.verdict.kind);
    j["typeI_limit"] = num_or_null(s.verdict.limsup_estimate);
    j["fiber_diam_exponent"] = num_or_null(s.fiber_diam_exponent);
    j["suprho_exponent"] = num_or_null(s.suprho_exponent);
    j["roundness_final"] = num_or_null(s.roundness_final);
    j["splitting_exponents"] = {{"s_orth", num_or_null(s.s_orth_exponent)},
                                {"s1", num_or_null(s.s1_exponent)},
                                {"s2", num_or_null(s.s2_exponent)},
                                {"s3", num_or_null(s.s3_exponent)}};
  } catch (const InsufficientData&) {
    j["type_verdict"] = to_string(TypeKind::Inconclusive);
    j["typeI_limit"] = nullptr;
    j["fiber_diam_exponent"] = nullptr;
    j["suprho_exponent"] = nullptr;
    j["roundness_final"] = rows.empty() ? ordered_json(nullptr) : num_or_null(rows.back().roundness_ratio);
    j["splitting_exponents"] = {{"s_orth", nullptr}, {"s1", nullptr}, {"s2", nullptr}, {"s3", nullptr}};
  }
  j["thresholds"] = thr;
  return j.dump(2) + "\n";
}

int cmd_run(const RunConfig& cfg, const fs::path& out_dir, bool accept, std::ostream& out, std::ostream& err) {
  FlowSchedule sch;
  Profile p0;
  try {
    sch = blow_up_time(cfg.spec, cfg.a0, cfg.b0);
    if (accept && !is_collapse(sch.kase)) {
      err << error_line(kNotAccepted, "class",
                        "case " + to_string(sch.kase) + " is not a collapsing case; acceptance runs need Collapse1 or Collapse2i");
      return kNotAccepted;
    }
    p0 = initial_profile(cfg, sch);
  } catch (const ConfigError& e) {
    err << error_line(kInvalidConfig, e.field, e.what());
    return kInvalidConfig;
  } catch (const DomainError& e) {
    err << error_line(kInvalidConfig, "class", e.what());
    return kInvalidConfig;
  }

  const RunRecord rec = evolve(p0, cfg.spec, sch, cfg.solver);

  try {
    fs::create_directories(out_dir / "snapshots");
    {
      std::ostringstream os;
      write_monitors_csv(os, rec.monitors);
      write_file(out_dir / "monitors.csv", os.str());
    }
    {
      std::ostringstream os;
      write_splitting_csv(os, rec.monitors);
      write_file(out_dir / "splitting.csv", os.str());
    }
    std::ostringstream idx;
    idx << "index,t,file\n";
    for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%05zu.csv", k);
      const Profile& s = rec.snapshots[k];
      std::ostringstream os;
      try {
        write_snapshot_csv(os, s, derivatives(s, cfg.spec));
      } catch (const AdmissibilityError&) {
        // a failed final state is still written, without derivative columns
        os.str("");
        os << "x,rho,f,f_rho,f_rhorho,logfp_rr\n";
        for (std::size_t i = 0; i < s.f.size(); ++i)
          os << fmt(s.grid->x[i]) << ',' << (std::isinf(s.grid->rho[i]) ? (s.grid->rho[i] < 0 ? "-inf" : "inf")
                                                                         : fmt(s.grid->rho[i]))
             << ',' << fmt(s.f[i]) << ",nan,nan,nan\n";
      }
      write_file(out_dir / "snapshots" / name, os.str());
      idx << k << ',' << fmt(s.t) << ',' << name << '\n';
    }
    write_file(out_dir / "snapshots" / "index.csv", idx.str());
    write_file(out_dir / "summary.json", summary_json(sch, rec.monitors));

    ordered_json run;
    run["termination"] = to_string(rec.termination.kind);
    run["node"] = rec.termination.node;
    run["detail"] = rec.termination.what;
    run["steps"] = rec.steps;
    run["t_final"] = rec.monitors.empty() ? 0.0 : rec.monitors.back().t;
    run["warnings"] = rec.warnings;
    write_file(out_dir / "run.json", run.dump(2) + "\n");
    if (cfg.plots) write_plots(out_dir, rec);
  } catch (const std::exception& e) {
    err << error_line(kInternal, "output.dir", e.what());
    return kInternal;
  }

  for (const auto& w : rec.warnings) err << "warning: " << w << "\n";
  out << "case=" << to_string(sch.kase) << " termination=" << to_string(rec.termination.kind)
      << " steps=" << rec.steps << " t=" << fmt(rec.monitors.empty() ? 0.0 : rec.monitors.back().t)
      << " out=" << out_dir.string() << "\n";
  if (rec.termination.kind == TerminationKind::InvariantViolation) {
    err << error_line(kFailure, "flow",
                      "invariant " + rec.termination.what + " violated at node " + std::to_string(rec.termination.node));
    return kFailure;
  }
  return kOk;
}

int cmd_verify_curvature(const RunConfig& cfg, const fs::path* out_dir, std::ostream& out, std::ostream& err) {
  const VerifyConfig& v = cfg.verify;
  const ExplicitChart chart{1, v.k};
  const BundleSpec spec{1, chart.nu(), chart.lambda()};
  const PolynomialProfile prof(v.profile_coeffs, cfg.kappa);

  std::vector<ChartPoint> pts = v.explicit_points;
  if (pts.empty()) {
    std::mt19937_64 rng(v.seed);
    std::uniform_real_distribution<double> uz(-0.7, 0.7), ur(0.6, 1.4), ua(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < v.points; ++i) {
      const double zr = uz(rng), zi = uz(rng), r = ur(rng), a = ua(rng);
      pts.push_back({{zr, zi}, std::polar(r, a)});
    }
  }

  ordered_json report;
  report["k"] = v.k;
  report["tol"] = v.tol;
  report["profile_coeffs"] = v.profile_coeffs;
  ordered_json entries = ordered_json::array();
  std::vector<std::string> failed;
  std::set<std::string> failed_set;

  auto add = [&](const std::string& id, const ChartPoint& p, cplx cf, cplx orc, double floor, double tol) {
    const double ae = std::abs(cf - orc);
    const double re = ae / std::max({std::abs(cf), std::abs(orc), floor});
    const bool pass = re <= tol;
    entries.push_back({{"id", id},
                       {"point", {p.z.real(), p.z.imag(), p.xi.real(), p.xi.imag()}},
                       {"closed_form", {cf.real(), cf.imag()}},
                       {"oracle", {orc.real(), orc.imag()}},
                       {"abs_err", ae},
                       {"rel_err", re},
                       {"tol", tol},
                       {"pass", pass}});
    if (!pass && failed_set.insert(id).second) failed.push_back(id);
  };

  try {
    for (const auto& p : pts) {
      const ChartData cd = chart_data(chart, p);
      const ProfileJet jet = prof.jet_rho(cd.rho);
      ChartTensors cf = closed_form(jet, chart, p);
      const OracleResult orc = chart_oracle(chart, prof, p);
      auto ce = formula_entries(cf);
      const auto oe = formula_entries(orc.tensors);
      double gmax = 0.0, rmax = 0.0;
      for (std::size_t i = 0; i < ce.size(); ++i) {
        double& mx = ce[i].id.rfind("Gamma", 0) == 0 ? gmax : rmax;
        mx = std::max({mx, std::abs(ce[i].value), std::abs(oe[i].value)});
      }
      for (std::size_t i = 0; i < ce.size(); ++i) {
        if (ce[i].id == v.perturb) ce[i].value = ce[i].value * 1.001 + 1e-3;
        const double scale = ce[i].id.rfind("Gamma", 0) == 0 ? gmax : rmax;
        add(ce[i].id, p, ce[i].value, oe[i].value, 1e-3 * scale, v.tol);
      }
      add("R_scalar", p, scalar_curvature(jet, spec), orc.scalar_R, 1e-3, 1e-6);
      add("nu", p, chart.nu(), orc.nu, 1.0, 1e-8);
      add("trace_base", p, spec.n / (spec.lambda * jet.f), orc.trace_base, 0.0, 1e-8);
      add("det_g", p, spec.lambda * jet.f * jet.f_rho * cd.g_base / std::norm(p.xi), orc.det_g, 0.0, 1e-8);
    }
  } catch (const DomainError& e) {
    err << error_line(kInvalidConfig, "verify", e.what());
    return kInvalidConfig;
  } catch (const ConditioningError& e) {
    err << error_line(kFailure, "verify", e.what());
    return kFailure;
  }

  report["points"] = pts.size();
  report["entries"] = entries;
  report["failed"] = failed;
  report["pass"] = failed.empty();
  const std::string text = report.dump(2) + "\n";
  if (out_dir) {
    try {
      fs::create_directories(*out_dir);
      write_file(*out_dir / "verify_curvature.json", text);
    } catch (const std::exception& e) {
      err << error_line(kInternal, "output.dir", e.what());
      return kInternal;
    }
  }
  out << text;
  if (!failed.empty()) {
    std::string ids;
    for (const auto& id : failed) ids += (ids.empty() ? "" : ",") + id;
    err << error_line(kFailure, "verify", "formula mismatch: " + ids);
    return kFailure;
  }
  return kOk;
}

std::vector<MonitorSet> read_monitor_rows(const fs::path& run_dir) {
  std::vector<std::string> hm, hs;
  const auto mon = read_csv(run_dir / "monitors.csv", hm);
  const auto spl = read_csv(run_dir / "splitting.csv", hs);
  if (mon.size() != spl.size()) throw Error("monitors.csv and splitting.csv disagree on row count");
  std::vector<MonitorSet> rows(mon.size());
  for (std::size_t i = 0; i < mon.size(); ++i) {
    const auto& r = mon[i];
    MonitorSet& m = rows[i];
    m.t = r[0], m.a_t = r[1], m.b_t = r[2], m.sup_f_rho = r[3], m.sup_abs_fpp_over_fp = r[4];
    m.min_f = r[5], m.max_f = r[6], m.vol_proxy = r[7], m.R_min = r[8], m.R_max = r[9];
    m.K_lead = r[10], m.typeI_product = r[11], m.fiber_diam = r[12], m.roundness_ratio = r[13], m.trace_proxy = r[14];
    const auto& s = spl[i];
    m.K_lead_node = static_cast<std::size_t>(s[2]);
    m.base_dev = s[3], m.s_orth = s[4], m.s1 = s[5], m.s2 = s[6], m.s3 = s[7];
  }
  return rows;
}

int cmd_report(const RunConfig& cfg, const fs::path& run_dir, std::ostream& out, std::ostream& err) {
  FlowSchedule sch;
  try {
    sch = blow_up_time(cfg.spec, cfg.a0, cfg.b0);
  } catch (const DomainError& e) {
    err << error_line(kInvalidConfig, "class", e.what());
    return kInvalidConfig;
  }
  std::vector<MonitorSet> rows;
  try {
    rows = read_monitor_rows(run_dir);
  } catch (const std::exception& e) {
    err << error_line(kInvalidConfig, "output.dir", e.what());
    return kInvalidConfig;
  }
  const std::string js = summary_json(sch, rows);
  try {
    write_file(run_dir / "summary.json", js);
  } catch (const std::exception& e) {
    err << error_line(kInternal, "output.dir", e.what());
    return kInternal;
  }
  out << "run: " << run_dir.string() << "\n";
  out << "case: " << to_string(sch.kase) << "  T = " << fmt(sch.T) << "  rows = " << rows.size() << "\n";
  if (!rows.empty()) {
    const auto& m = rows.back();
    out << "final t = " << fmt(m.t) << "  T-t = " << fmt(sch.T - m.t) << "\n";
    out << "final K_lead = " << fmt(m.K_lead) << "  (T-t)K_lead = " << fmt(m.typeI_product) << "\n";
    out << "final fiber_diam = " << fmt(m.fiber_diam) << "  roundness = " << fmt(m.roundness_ratio)
        << "  base_dev = " << fmt(m.base_dev) << "\n";
  }
  try {
    const Summary s = summarize(sch, rows);
    out << "verdict: " << to_string(s.verdict.kind) << "  limit ~ " << fmt(s.verdict.limsup_estimate)
        << "  tail variation = " << fmt(s.verdict.tail_variation) << "\n";
    out << "exponents vs T-t: fiber_diam " << fmt(s.fiber_diam_exponent) << ", sup f_rho " << fmt(s.suprho_exponent)
        << "\n";
    out << "exponents vs K: s_orth " << fmt(s.s_orth_exponent) << ", s1 " << fmt(s.s1_exponent) << ", s2 "
        << fmt(s.s2_exponent) << ", s3 " << fmt(s.s3_exponent) << "\n";
  } catch (const InsufficientData& e) {
    out << "verdict: Inconclusive (" << e.what() << ")\n";
  }
  return kOk;
}

int cmd_sweep(const fs::path& sweep_file, const fs::path* out_base, bool accept, std::ostream& out,
              std::ostream& err) {
  std::ifstream f(sweep_file);
  if (!f) {
    err << error_line(kInvalidConfig, "sweep", "cannot open '" + sweep_file.string() + "'");
    return kInvalidConfig;
  }
  std::vector<fs::path> entries;
  std::string line;
  while (std::getline(f, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    fs::path p = line.substr(b, e - b + 1);
    if (p.is_relative()) p = sweep_file.parent_path() / p;
    entries.push_back(p);
  }
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KRF_THREADS")) {
    unsigned v = 0;
    auto r = std::from_chars(env, env + std::strlen(env), v);
    if (r.ec != std::errc() || v == 0) {
      err << error_line(kInvalidConfig, "KRF_THREADS", "must be a positive integer");
      return kInvalidConfig;
    }
    threads = v;
  }
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, entries.size()));

  std::vector<int> codes(entries.size(), 0);
  std::vector<std::string> outs(entries.size()), errs(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      std::ostringstream o, e;
      try {
        const RunConfig cfg = load_config(entries[i]);
        fs::path dir = cfg.out_dir;
        if (out_base) dir = *out_base / (std::to_string(i) + "_" + entries[i].stem().string());
        codes[i] = cmd_run(cfg, dir, accept, o, e);
      } catch (const ConfigError& ce) {
        e << error_line(kInvalidConfig, ce.field, entries[i].string() + ": " + ce.what());
        codes[i] = kInvalidConfig;
      }
      outs[i] = o.str();
      errs[i] = e.str();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int code = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << outs[i];
    err << errs[i];
    code = std::max(code, codes[i]);
  }
  return code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kahler-Ricci flow momentum-profile simulator"};
  app.require_subcommand(1);
  std::string config_path, out_path, sweep_path;
  bool accept = false;

  auto* classify = app.add_subcommand("classify", "print the trichotomy case and blow-up time");
  classify->add_option("--config", config_path, "config file")->required();

  auto* run = app.add_subcommand("run", "integrate the profile flow and write artifacts");
  run->add_option("--config", config_path, "config file");
  run->add_option("--out", out_path, "output directory (overrides output.dir)");
  run->add_option("--sweep", sweep_path, "file listing config paths to run concurrently");
  run->add_flag("--accept", accept, "require a collapsing case");

  auto* verify = app.add_subcommand("verify-curvature", "compare closed-form curvature with the chart oracle");
  verify->add_option("--config", config_path, "config file")->required();
  verify->add_option("--out", out_path, "directory for verify_curvature.json");

  auto* report = app.add_subcommand("report", "summarize an existing run directory");
  report->add_option("--config", config_path, "config file")->required();
  report->add_option("--out", out_path, "run directory (overrides output.dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << error_line(kInvalidConfig, "args", e.what());
    return kInvalidConfig;
  }

  try {
    if (run->parsed() && !sweep_path.empty()) {
      const fs::path base = out_path;
      return cmd_sweep(sweep_path, out_path.empty() ? nullptr : &base, accept, out, err);
    }
    if (config_path.empty()) {
      err << error_line(kInvalidConfig, "args", "--config is required");
      return kInvalidConfig;
    }
    const RunConfig cfg = load_config(config_path);
    const fs::path dir = out_path.empty() ? fs::path(cfg.out_dir) : fs::path(out_path);
    if (classify->parsed()) return cmd_classify(cfg, out, err);
    if (run->parsed()) return cmd_run(cfg, dir, accept, out, err);
    if (verify->parsed()) return cmd_verify_curvature(cfg, out_path.empty() ? nullptr : &dir, out, err);
    if (report->parsed()) return cmd_report(cfg, dir, out, err);
  } catch (const ConfigError& e) {
    err << error_line(kInvalidConfig, e.field, e.line ? "line " + std::to_string(e.line) + ": " + e.what() : e.what());
    return kInvalidConfig;
  } catch (const std::exception& e) {
    err << error_line(kInternal, "internal", e.what());
    return kInternal;
  }
  return kInternal;
}

}  // namespace krf::cli
