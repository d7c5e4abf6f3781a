#include "purposedyn/distribution_experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "purposedyn/error.hpp"
#include "purposedyn/format.hpp"
#include "purposedyn/parallel.hpp"

namespace purposedyn {

const char* const kSpreadTranslationNote =
    "gamma is a mean-preserving spread of b^power (sigma2 += gamma, mu -= gamma/2); a "
    "second-order dominance improvement is the reverse move, so its predicted effect has the "
    "opposite sign of the deltas reported here";

namespace {

bool near(double x, double target) { return std::abs(x - target) <= 1e-12; }

void require_supported_power(double power) {
  if (!near(power, 1.0 / 3.0) && !near(power, 1.0) && !near(power, 2.0)) {
    throw UnsupportedError("spread experiments need a lognormal power of 1/3, 1 or 2");
  }
}

}  // namespace

bool SpreadExperiment::all_agree() const {
  return std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.agrees; });
}

bool FosdExperiment::all_nonnegative() const {
  return std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.agrees; });
}

Prediction predicted_spread_sign(double power, Outcome outcome) {
  require_supported_power(power);
  if (near(power, 1.0 / 3.0)) return Prediction::positive;
  if (near(power, 2.0)) return Prediction::negative;
  // b itself lognormal: E[b^2] rises with the spread, which pulls static
  // effort profit up while the meaning block falls.
  return outcome == Outcome::profit ? Prediction::none : Prediction::negative;
}

SpreadExperiment run_spread_experiment(const FirmParams& fp, double gamma,
                                       std::optional<double> reference_ability) {
  if (!fp.dist().is_lognormal()) {
    throw UnsupportedError("spread experiments need a lognormal distribution");
  }
  SpreadExperiment ex;
  ex.baseline = fp.dist().lognormal();
  require_supported_power(ex.baseline.power);
  ex.gamma = gamma;
  const FirmParams spread = fp.with_distribution(mean_preserving_spread(ex.baseline, gamma));
  ex.reference_ability = reference_ability.value_or(fp.moments().m1);
  ex.before = steady_state_outcomes(fp, ex.reference_ability);
  ex.after = steady_state_outcomes(spread, ex.reference_ability);
  for (Outcome o : kAllOutcomes) {
    ExperimentRow row;
    row.outcome = o;
    row.before = ex.before.get(o);
    row.after = ex.after.get(o);
    row.delta = row.after - row.before;
    row.predicted = gamma == 0.0 ? Prediction::zero : predicted_spread_sign(ex.baseline.power, o);
    row.agrees = sign_agrees(row.predicted, row.delta, 0.0);
    ex.rows.push_back(row);
  }
  return ex;
}

void write_spread_csv(std::ostream& out, const std::vector<SpreadExperiment>& runs) {
  out << "baseline_power,gamma,outcome,before,after,delta,predicted_sign,agrees\n";
  for (const auto& ex : runs) {
    for (const auto& row : ex.rows) {
      out << full_precision(ex.baseline.power) << ',' << full_precision(ex.gamma) << ','
          << to_string(row.outcome) << ',' << full_precision(row.before) << ','
          << full_precision(row.after) << ',' << full_precision(row.delta) << ','
          << to_string(row.predicted) << ',' << (row.agrees ? "true" : "false") << '\n';
    }
  }
}

AmbiguityResult profit_ambiguity_search(const FirmParams& fp, double gamma,
                                        const AmbiguityGrid& grid) {
  if (!fp.dist().is_lognormal() || !near(fp.dist().lognormal().power, 1.0)) {
    throw UnsupportedError("profit ambiguity search needs a lognormal distribution of b");
  }
  if (grid.points < 2 || !(grid.lo > 0.0) || !(grid.hi > grid.lo)) {
    throw ValidationError("ambiguity grid needs >= 2 points on 0 < lo < hi");
  }
  const std::size_t n = static_cast<std::size_t>(grid.points);
  std::vector<double> axis(n);
  const double log_lo = std::log(grid.lo);
  const double log_step = (std::log(grid.hi) - log_lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) axis[i] = std::exp(log_lo + log_step * static_cast<double>(i));
  axis.front() = grid.lo;
  axis.back() = grid.hi;

  std::vector<double> deltas(n * n);
  parallel_for(n * n, [&](std::size_t idx) {
    const FirmParams p = fp.with(Parameter::a_e, axis[idx / n]).with(Parameter::a_k, axis[idx % n]);
    const SpreadExperiment ex = run_spread_experiment(p, gamma);
    deltas[idx] = ex.after.profit - ex.before.profit;
  });

  AmbiguityResult res;
  double best_pos = 0.0;
  double best_neg = 0.0;
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    const double a_e = axis[idx / n];
    const double a_k = axis[idx % n];
    const double log_ratio = std::log(a_e / a_k);
    if (a_e < a_k && deltas[idx] > 0.0 && (!res.positive || -log_ratio > best_pos)) {
      res.positive = AmbiguityWitness{a_e, a_k, deltas[idx]};
      best_pos = -log_ratio;
    }
    if (a_e > a_k && deltas[idx] < 0.0 && (!res.negative || log_ratio > best_neg)) {
      res.negative = AmbiguityWitness{a_e, a_k, deltas[idx]};
      best_neg = log_ratio;
    }
  }
  if (!res.positive && !res.negative) {
    res.diagnostic = "no grid point with a_e < a_k raises profit and none with a_e > a_k lowers it";
  } else if (!res.positive) {
    res.diagnostic = "no grid point with a_e < a_k raises profit";
  } else if (!res.negative) {
    res.diagnostic = "no grid point with a_e > a_k lowers profit";
  }
  return res;
}

FosdExperiment run_fosd_experiment(const FirmParams& fp, double shift,
                                   std::optional<double> reference_ability) {
  if (!fp.dist().is_empirical()) {
    throw UnsupportedError("support shifts need an empirical distribution");
  }
  const Empirical& base = fp.dist().empirical();
  const Empirical moved = base.shifted(shift);
  FosdExperiment ex;
  ex.shift = shift;
  ex.verdict = fosd_check(base, moved);
  ex.reference_ability = reference_ability.value_or(fp.moments().m1);
  ex.before = steady_state_outcomes(fp, ex.reference_ability);
  ex.after = steady_state_outcomes(fp.with_distribution(moved), ex.reference_ability);
  for (Outcome o : kAllOutcomes) {
    ExperimentRow row;
    row.outcome = o;
    row.before = ex.before.get(o);
    row.after = ex.after.get(o);
    row.delta = row.after - row.before;
    row.predicted = shift == 0.0 ? Prediction::zero : Prediction::positive;
    row.agrees = row.delta >= -1e-12 * std::max(1.0, std::abs(row.before));
    ex.rows.push_back(row);
  }
  return ex;
}

void write_fosd_csv(std::ostream& out, const std::vector<FosdExperiment>& runs) {
  out << "shift,dominance,outcome,before,after,delta,predicted_sign,agrees\n";
  for (const auto& ex : runs) {
    for (const auto& row : ex.rows) {
      out << full_precision(ex.shift) << ',' << to_string(ex.verdict) << ','
          << to_string(row.outcome) << ',' << full_precision(row.before) << ','
          << full_precision(row.after) << ',' << full_precision(row.delta) << ','
          << (ex.shift == 0.0 ? "zero" : "nonnegative") << ',' << (row.agrees ? "true" : "false")
          << '\n';
    }
  }
}

}  // namespace purposedyn
