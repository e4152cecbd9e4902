#include "attractor/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "attractor/error.hpp"

namespace attractor {

using nlohmann::json;

namespace {

unsigned sweep_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ATTRACTOR_BOUNDS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, 1024));
  }
  return hw;
}

json constants_to_json(const MethodConstants& k, const CGLParams* p, const Domain& d) {
  json j = {{"n", k.n}, {"omega_n", k.omega_n}, {"C_n", k.C_n}, {"c", k.c}, {"M_n", k.M_n}};
  j["C_star"] = k.C_star ? json(*k.C_star) : json(nullptr);
  if (k.C_star) {
    j["c1"] = constant_c1(k.n, k);
    j["c2"] = constant_c2(k.n, k);
  }
  if (p) j["melas_gamma_threshold"] = melas_gamma_threshold(*p, d, k);
  return j;
}

json summary_to_json(const RunSummary& s, double lambda1, double t_end) {
  return {
      {"delta", s.delta},
      {"delta_trend", s.delta_trend},
      {"empirical_qm", s.qm},
      {"lieb_thirring_witness", s.lieb_thirring_witness},
      {"log_volume", s.log_volume},
      {"Lambda1", lambda1},
      {"t_end", t_end},
      {"l2_norm_sq_initial", s.l2_initial},
      {"l2_norm_sq_final", s.l2_final},
      {"energy_envelope_final", s.energy_envelope_final},
      {"energy_within_envelope", s.l2_final <= s.energy_envelope_final * (1.0 + kEnergyTolerance)},
      {"max_step_energy_ratio", s.max_step_energy_ratio},
      {"trace_inequality_holds", s.trace_inequality_holds},
      {"frame_inequality_holds", s.frame_inequality_holds},
      {"samples_after_burn_in", s.samples_used},
  };
}

std::string diagnostics_text(const RunResult& r) {
  std::ostringstream os;
  write_diagnostics_csv(os, r.samples);
  return os.str();
}

void prepare_output_dir(const std::filesystem::path& dir) { std::filesystem::create_directories(dir); }

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << contents;
    if (!os) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json report_to_json(const DimensionReport& r) {
  return {
      {"Lambda1", r.Lambda1},
      {"regime", std::string(to_string(r.regime))},
      {"delta", r.delta},
      {"A", r.A},
      {"B", r.B},
      {"d_star", r.d_star},
      {"d_star_baseline", r.d_star_baseline},
  };
}

QmCheck check_qm_against_bound(const DimensionReport& report, int n, const RunSummary& summary,
                               double C_star) {
  QmCheck check;
  check.lieb_thirring_consistent = C_star >= summary.lieb_thirring_witness;
  if (report.regime == Regime::trivial) return check;
  check.applicable = true;
  check.first_negative_m = static_cast<std::size_t>(std::floor(report.d_star)) + 1;
  for (std::size_t j = 1; j <= summary.qm.size(); ++j) {
    QmCheck::Row row;
    row.m = j;
    row.empirical_qm = summary.qm[j - 1];
    row.bound = trace_majorant(report.A, report.B, n, static_cast<double>(j));
    row.pass = row.empirical_qm <= row.bound + 1e-9 * std::max(1.0, std::abs(row.bound));
    check.pass = check.pass && row.pass;
    check.rows.push_back(row);
  }
  return check;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
  const auto consts = cfg.constants();
  const auto report = verify_bounds(cfg.domain, cfg.m_max, consts);
  std::ostringstream csv;
  write_verification_csv(csv, report);
  prepare_output_dir(cfg.output_dir);
  write_file_atomic(cfg.output_dir / kSpectrumCsv, csv.str());
  const auto failed = std::count_if(report.rows.begin(), report.rows.end(),
                                    [](const VerificationRow& r) { return !r.pass; });
  log << "spectrum: " << report.rows.size() << " rows, " << failed << " failing -> "
      << (cfg.output_dir / kSpectrumCsv).string() << '\n';
  return report.all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& log) {
  const CGLParams& params = cfg.require_params();
  const auto consts = cfg.constants();
  json warnings = json::array();
  if (!cfg.delta) {
    const std::string w = "bounds.delta not supplied; defaulting to 0 (the beta term of B is dropped)";
    log << "warning: " << w << '\n';
    warnings.push_back(w);
  }
  const double delta = cfg.delta.value_or(0.0);
  const auto report = build_report(cfg.domain, params, delta, consts, cfg.Lambda1);

  // Sweep points are computed up front so that a bad point leaves no files.
  struct PointResult {
    SweepPoint point;
    DimensionReport report;
    std::string json_text;
  };
  std::vector<PointResult> points(cfg.sweep.size());
  if (!cfg.sweep.empty()) {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(points.size());
    auto worker = [&] {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        try {
          auto& pr = points[i];
          pr.point = apply_sweep_entry(cfg, cfg.sweep[i]);
          const auto k = MethodConstants::make(cfg.domain.dimension(), pr.point.c, pr.point.C_star);
          pr.report = build_report(cfg.domain, pr.point.params, pr.point.delta, k, cfg.Lambda1);
          json doc = {{"config", cfg.resolved},
                      {"sweep_index", i},
                      {"sweep_override", cfg.sweep[i]},
                      {"constants", constants_to_json(k, &pr.point.params, cfg.domain)},
                      {"report", report_to_json(pr.report)}};
          pr.json_text = doc.dump(2) + "\n";
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const unsigned nthreads = std::min<unsigned>(sweep_threads(), static_cast<unsigned>(points.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  json doc = {{"config", cfg.resolved},
              {"constants", constants_to_json(consts, &params, cfg.domain)},
              {"report", report_to_json(report)},
              {"warnings", warnings}};
  prepare_output_dir(cfg.output_dir);
  write_file_atomic(cfg.output_dir / kReportJson, doc.dump(2) + "\n");

  if (!points.empty()) {
    std::ostringstream csv;
    csv << "point,lambda,alpha,kappa,beta,gamma,c,C_star,delta,regime,Lambda1,A,B,d_star,d_star_baseline\n";
    csv << std::setprecision(17);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i].point;
      const auto& r = points[i].report;
      csv << i << ',' << pt.params.lambda << ',' << pt.params.alpha << ',' << pt.params.kappa << ','
          << pt.params.beta << ',' << pt.params.gamma << ',' << pt.c << ',' << pt.C_star.value_or(0.0)
          << ',' << pt.delta << ',' << to_string(r.regime) << ',' << r.Lambda1 << ',' << r.A << ','
          << r.B << ',' << r.d_star << ',' << r.d_star_baseline << '\n';
    }
    const auto sweep_dir = cfg.output_dir / "sweep";
    std::filesystem::create_directories(sweep_dir);
    for (std::size_t i = 0; i < points.size(); ++i) {
      write_file_atomic(sweep_dir / ("point_" + std::to_string(i) + ".json"), points[i].json_text);
    }
    write_file_atomic(cfg.output_dir / kSweepCsv, csv.str());
  }

  log << "bounds: regime=" << to_string(report.regime) << " d_star=" << std::setprecision(10)
      << report.d_star << " baseline=" << report.d_star_baseline << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  const CGLSimulator sim(*cfg.sim, cfg.require_params());
  const RunResult result = sim.run();
  json doc = {{"config", cfg.resolved},
              {"summary", summary_to_json(result.summary, sim.lambda1(), cfg.sim->t_end)}};
  prepare_output_dir(cfg.output_dir);
  write_file_atomic(cfg.output_dir / kDiagnosticsCsv, diagnostics_text(result));
  write_file_atomic(cfg.output_dir / kSummaryJson, doc.dump(2) + "\n");
  log << "simulate: " << result.samples.size() << " samples, delta=" << std::setprecision(10)
      << result.summary.delta << '\n';
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& log) {
  const CGLParams& params = cfg.require_params();
  const auto consts = cfg.constants();
  const CGLSimulator sim(*cfg.sim, params);
  const RunResult result = sim.run();
  const auto& summary = result.summary;
  const auto report = build_report(cfg.domain, params, summary.delta, consts, cfg.Lambda1);
  const int n = cfg.domain.dimension();
  const QmCheck check = check_qm_against_bound(report, n, summary, consts.lieb_thirring());

  json table = json::array();
  for (const auto& row : check.rows) {
    table.push_back({{"m", row.m}, {"empirical_qm", row.empirical_qm}, {"bound", row.bound}, {"pass", row.pass}});
  }
  json doc = {
      {"config", cfg.resolved},
      {"constants", constants_to_json(consts, &params, cfg.domain)},
      {"dimension_report", report_to_json(report)},
      {"measured_delta", summary.delta},
      {"delta_trend", summary.delta_trend},
      {"simulation", summary_to_json(summary, sim.lambda1(), cfg.sim->t_end)},
      {"lieb_thirring", {{"witness", summary.lieb_thirring_witness},
                         {"C_star", consts.lieb_thirring()},
                         {"consistent", check.lieb_thirring_consistent}}},
      {"qm_table", table},
      {"advisory_check", {{"applicable", check.applicable}, {"pass", check.pass}}},
  };
  doc["first_m_with_negative_bound"] = check.applicable ? json(check.first_negative_m) : json(nullptr);
  doc["d_star"] = report.d_star;

  prepare_output_dir(cfg.output_dir);
  write_file_atomic(cfg.output_dir / kDiagnosticsCsv, diagnostics_text(result));
  write_file_atomic(cfg.output_dir / kCombinedJson, doc.dump(2) + "\n");
  log << "report: regime=" << to_string(report.regime) << " delta=" << std::setprecision(10)
      << summary.delta << " d_star=" << report.d_star
      << " advisory=" << (check.applicable ? (check.pass ? "pass" : "FAIL") : "n/a") << '\n';
  if (!check.lieb_thirring_consistent) {
    log << "warning: configured C_star = " << consts.lieb_thirring()
        << " is below the observed Lieb-Thirring witness " << summary.lieb_thirring_witness << '\n';
  }
  return check.pass ? kExitOk : kExitCheckFailed;
}

int run_command(const std::string& command, json doc, const Overrides& overrides, std::ostream& log) {
  try {
    if (command != "spectrum" && command != "bounds" && command != "simulate" && command != "report") {
      throw ConfigError("unknown command '" + command + "'");
    }
    apply_overrides(doc, overrides);
    const RunConfig cfg = parse_run_config(doc, command);
    if (command == "spectrum") return cmd_spectrum(cfg, log);
    if (command == "bounds") return cmd_bounds(cfg, log);
    if (command == "simulate") return cmd_simulate(cfg, log);
    return cmd_report(cfg, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const TrivialRegimeError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const json::exception& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const BlowUpError& e) {
    log << "error: " << e.what() << '\n';
    return kExitBlowUp;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace attractor
