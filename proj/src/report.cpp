#include "purposedyn/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "purposedyn/distribution_experiments.hpp"
#include "purposedyn/error.hpp"
#include "purposedyn/format.hpp"
#include "purposedyn/steady_state_analytics.hpp"

namespace purposedyn {

std::string full_precision(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string six_digits(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class RunContext {
 public:
  RunContext(const fs::path& dir, std::ostream& log) : dir_(dir), log_(log) {}

  void write(const std::string& file, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(dir_ / file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / file).string());
    body(out);
    if (!out) throw std::runtime_error("write failed for " + (dir_ / file).string());
    artifacts_.push_back(file);
  }

  void note(const std::string& text) {
    notes_.push_back(text);
    log_ << "note: " << text << '\n';
  }

  std::ostream& log() { return log_; }
  const std::vector<std::string>& artifacts() const { return artifacts_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  fs::path dir_;
  std::ostream& log_;
  std::vector<std::string> artifacts_;
  std::vector<std::string> notes_;
};

void print_row(std::ostream& log, const std::vector<std::pair<std::string, double>>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    log << (i ? "  " : "") << cells[i].first << '=' << six_digits(cells[i].second);
  }
  log << '\n';
}

int dp_horizon_for(const Scenario& s) {
  // Smallest horizon with delta^T < 1e-8, if the scenario's is too short.
  const int needed = static_cast<int>(std::ceil(std::log(1e-8) / std::log(s.params.delta()))) + 1;
  return std::max(s.dp.horizon, needed);
}

void cmd_steady_state(const Scenario& s, const RunOptions& o, RunContext& ctx) {
  const FirmParams& fp = s.params;
  const SteadyState ss = steady_state(fp);
  const double b_ref = fp.moments().m1;
  const double u = steady_state_utility(b_ref, fp);
  const double profit = steady_state_profit(fp);
  DpOptions dpo;
  dpo.grid_size = o.grid.value_or(s.dp.grid);
  dpo.horizon = dp_horizon_for(s);
  const DpResult dp = dp_oracle(fp, dpo);
  if (dpo.horizon != s.dp.horizon) {
    ctx.note("dp horizon raised to " + std::to_string(dpo.horizon) + " so that delta^T < 1e-8");
  }
  ctx.write("steady_state.csv", [&](std::ostream& out) {
    out << "m_star,r_star,k_star,mean_socialization,reference_ability,utility,profit,"
           "saddle_condition,mu_stable,a3_slack,dp_grid,dp_horizon,dp_fixed_point,dp_cell_width\n";
    out << full_precision(ss.m_star) << ',' << full_precision(ss.r_star) << ','
        << full_precision(ss.k_star) << ',' << full_precision(ss.mean_socialization(fp.moments()))
        << ',' << full_precision(b_ref) << ',' << full_precision(u) << ','
        << full_precision(profit) << ',' << full_precision(saddle_condition(fp)) << ','
        << full_precision(characteristic_roots(fp).stable) << ','
        << full_precision(fp.moments().a3_slack()) << ',' << dpo.grid_size << ',' << dpo.horizon
        << ',' << full_precision(dp.fixed_point) << ',' << full_precision(dp.cell_width) << '\n';
  });
  print_row(ctx.log(), {{"m*", ss.m_star},
                        {"r*", ss.r_star},
                        {"k*", ss.k_star},
                        {"u*(b_ref)", u},
                        {"profit", profit},
                        {"dp_m*", dp.fixed_point}});
}

void cmd_path(const Scenario& s, const RunOptions& o, RunContext& ctx) {
  const double m0 = o.m0.value_or(s.initial_meaning);
  const int horizon = o.horizon.value_or(s.horizon);
  const Trajectory path = transition_path(m0, horizon, s.params);
  ctx.write("trajectory.csv", [&](std::ostream& out) { write_trajectory_csv(out, path); });
  ctx.log() << "t  m_bar  r  per_period_profit\n";
  for (const auto& p : path) {
    ctx.log() << p.t << "  " << six_digits(p.m_bar) << "  " << six_digits(p.r) << "  "
              << six_digits(p.per_period_profit) << '\n';
  }
}

void cmd_ownership(const Scenario& s, const RunOptions&, RunContext& ctx) {
  const OwnershipComparison cmp = compare_ownership(s.params);
  ctx.write("ownership.csv", [&](std::ostream& out) { write_ownership_csv(out, cmp); });
  ctx.log() << "investor_owned: ";
  print_row(ctx.log(), {{"m*", cmp.investor.m_star},
                        {"r*", cmp.investor.r_star},
                        {"k*", cmp.investor.k_star},
                        {"u*", cmp.utility_investor},
                        {"profit", cmp.profit_investor}});
  ctx.log() << "worker_owned:   ";
  print_row(ctx.log(), {{"m*", cmp.worker_owned.m_star},
                        {"r*", cmp.worker_owned.r_star},
                        {"k*", cmp.worker_owned.k_star},
                        {"u*", cmp.utility_worker_owned},
                        {"surplus", cmp.surplus_worker_owned}});
}

void cmd_comparative(const Scenario& s, const RunOptions&, RunContext& ctx) {
  std::vector<ComparativeReport> reports;
  for (Parameter p : s.comparative.parameters) {
    reports.push_back(
        comparative_statics(s.params, p, s.comparative.step, s.comparative.reference_ability));
  }
  ctx.write("comparative_statics.csv",
            [&](std::ostream& out) { write_comparative_csv(out, reports); });
  ctx.write("comparative_statics.json",
            [&](std::ostream& out) { out << comparative_json(reports) << '\n'; });
  for (const auto& rep : reports) {
    ctx.log() << to_string(rep.parameter) << ":";
    for (const auto& row : rep.rows) {
      ctx.log() << "  d" << to_string(row.outcome) << '=' << six_digits(row.derivative) << " ["
                << to_string(row.predicted) << (row.agrees ? "" : " MISMATCH") << ']';
    }
    ctx.log() << '\n';
  }
}

void cmd_sosd(const Scenario& s, const RunOptions& o, RunContext& ctx) {
  const std::vector<double>& gammas = o.gammas.empty() ? s.gammas : o.gammas;
  std::vector<SpreadExperiment> runs;
  for (double g : gammas) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("--gamma values must be >= 0");
    runs.push_back(run_spread_experiment(s.params, g));
  }
  ctx.note(kSpreadTranslationNote);
  ctx.write("spread_experiment.csv", [&](std::ostream& out) { write_spread_csv(out, runs); });
  for (const auto& ex : runs) {
    ctx.log() << "gamma=" << six_digits(ex.gamma) << ":";
    for (const auto& row : ex.rows) {
      ctx.log() << "  d" << to_string(row.outcome) << '=' << six_digits(row.delta) << " ["
                << to_string(row.predicted) << (row.agrees ? "" : " MISMATCH") << ']';
    }
    ctx.log() << '\n';
  }
  if (std::abs(s.params.dist().lognormal().power - 1.0) > 1e-12) return;

  std::vector<std::pair<double, AmbiguityResult>> found;
  for (double g : gammas) {
    if (g > 0.0) found.emplace_back(g, profit_ambiguity_search(s.params, g));
  }
  ctx.write("profit_ambiguity.csv", [&](std::ostream& out) {
    out << "gamma,direction,found,a_e,a_k,profit_delta\n";
    for (const auto& [g, res] : found) {
      auto row = [&](const char* dir, const std::optional<AmbiguityWitness>& w) {
        out << full_precision(g) << ',' << dir << ',' << (w ? "true" : "false") << ','
            << (w ? full_precision(w->a_e) : "") << ',' << (w ? full_precision(w->a_k) : "")
            << ',' << (w ? full_precision(w->profit_delta) : "") << '\n';
      };
      row("positive", res.positive);
      row("negative", res.negative);
    }
  });
  for (const auto& [g, res] : found) {
    ctx.log() << "profit ambiguity at gamma=" << six_digits(g) << ":";
    if (res.positive) {
      ctx.log() << "  rises at a_e=" << six_digits(res.positive->a_e)
                << " a_k=" << six_digits(res.positive->a_k);
    }
    if (res.negative) {
      ctx.log() << "  falls at a_e=" << six_digits(res.negative->a_e)
                << " a_k=" << six_digits(res.negative->a_k);
    }
    if (!res.diagnostic.empty()) ctx.log() << "  (" << res.diagnostic << ')';
    ctx.log() << '\n';
  }
}

void cmd_fosd(const Scenario& s, const RunOptions& o, RunContext& ctx) {
  const std::vector<double>& shifts = o.shifts.empty() ? s.shifts : o.shifts;
  std::vector<FosdExperiment> runs;
  for (double sh : shifts) {
    if (!(sh >= 0.0) || !std::isfinite(sh)) throw ValidationError("--shift values must be >= 0");
    runs.push_back(run_fosd_experiment(s.params, sh));
  }
  ctx.write("fosd_experiment.csv", [&](std::ostream& out) { write_fosd_csv(out, runs); });
  for (const auto& ex : runs) {
    ctx.log() << "shift=" << six_digits(ex.shift) << " (" << to_string(ex.verdict) << "):";
    for (const auto& row : ex.rows) {
      ctx.log() << "  d" << to_string(row.outcome) << '=' << six_digits(row.delta)
                << (row.agrees ? "" : " NEGATIVE");
    }
    ctx.log() << '\n';
  }
}

void cmd_validate(const Scenario& s, const RunOptions&, RunContext& ctx) {
  const MomentBundle& mb = s.params.moments();
  const std::vector<std::pair<std::string, double>> rows = {
      {"m13", mb.m13}, {"m23", mb.m23}, {"m1", mb.m1},
      {"m43", mb.m43}, {"m2", mb.m2},   {"a3_slack", mb.a3_slack()}};
  ctx.write("moments.csv", [&](std::ostream& out) {
    out << "quantity,value\n";
    for (const auto& [k, v] : rows) out << k << ',' << full_precision(v) << '\n';
  });
  ctx.log() << "scenario '" << s.name << "' is valid\n";
  print_row(ctx.log(), rows);
  if (!(mb.a3_slack() > 0.0)) {
    ctx.note("condition A3 (m1 - m43/m13 > 0) does not hold; it is reported, not enforced");
  }
}

}  // namespace

void run_command(const std::string& command, const Scenario& scenario, const fs::path& out_dir,
                 const RunOptions& options, std::ostream& log) {
  using Handler = void (*)(const Scenario&, const RunOptions&, RunContext&);
  Handler handler = nullptr;
  if (command == "steady-state") handler = cmd_steady_state;
  if (command == "path") handler = cmd_path;
  if (command == "compare-ownership") handler = cmd_ownership;
  if (command == "comparative-statics") handler = cmd_comparative;
  if (command == "sosd-sweep") handler = cmd_sosd;
  if (command == "fosd-shift") handler = cmd_fosd;
  if (command == "validate") handler = cmd_validate;
  if (!handler) throw ValidationError("unknown command '" + command + "'");

  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  RunContext ctx(out_dir, log);
  handler(scenario, options, ctx);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(scenario.source_hash));
  Json manifest;
  manifest["tool"] = "purposedyn";
  manifest["version"] = kToolVersion;
  manifest["command"] = command;
  manifest["scenario"] = scenario.name;
  manifest["scenario_hash"] = std::string("fnv1a64:") + hash;
  Json opts = Json::object();
  if (options.grid) opts["grid"] = *options.grid;
  if (options.horizon) opts["horizon"] = *options.horizon;
  if (options.m0) opts["m0"] = *options.m0;
  if (!options.gammas.empty()) opts["gammas"] = options.gammas;
  if (!options.shifts.empty()) opts["shifts"] = options.shifts;
  manifest["options"] = opts;
  manifest["artifacts"] = ctx.artifacts();
  manifest["notes"] = ctx.notes();
  manifest["wall_time_seconds"] = wall;
  std::ofstream out(out_dir / "run_manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

}  // namespace purposedyn
