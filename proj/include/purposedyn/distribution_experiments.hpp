#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "purposedyn/steady_state_analytics.hpp"

namespace purposedyn {

/// How the spread knob relates to dominance statements: a larger gamma is a
/// mean-preserving spread of b^power, i.e. the reverse of a second-order
/// improvement. A statement "an SOSD shift raises X" therefore predicts that
/// gamma lowers X.
extern const char* const kSpreadTranslationNote;

struct ExperimentRow {
  Outcome outcome = Outcome::m_star;
  double before = 0.0;
  double after = 0.0;
  double delta = 0.0;
  Prediction predicted = Prediction::none;
  bool agrees = true;
};

struct SpreadExperiment {
  Lognormal baseline;
  double gamma = 0.0;
  double reference_ability = 0.0;  ///< held fixed across the spread
  OutcomeSet before;
  OutcomeSet after;
  std::vector<ExperimentRow> rows;

  bool all_agree() const;
};

/// Predicted sign of (outcome after spread - before) for b^power lognormal
/// and gamma > 0. power must be 1/3, 1 or 2.
Prediction predicted_spread_sign(double power, Outcome outcome);

/// Steady-state outcomes before and after a mean-preserving spread of size
/// gamma. The utility is evaluated at `reference_ability` (default: mean
/// ability under the baseline). Throws UnsupportedError for a non-lognormal
/// distribution or a power outside {1/3, 1, 2}.
SpreadExperiment run_spread_experiment(const FirmParams& fp, double gamma,
                                       std::optional<double> reference_ability = std::nullopt);

void write_spread_csv(std::ostream& out, const std::vector<SpreadExperiment>& runs);

struct AmbiguityWitness {
  double a_e = 0.0;
  double a_k = 0.0;
  double profit_delta = 0.0;
};

struct AmbiguityResult {
  std::optional<AmbiguityWitness> positive;  ///< a_e < a_k, profit rises
  std::optional<AmbiguityWitness> negative;  ///< a_e > a_k, profit falls
  std::string diagnostic;                     ///< empty when both were found
};

struct AmbiguityGrid {
  double lo = 1e-2;
  double hi = 1e2;
  int points = 9;  ///< per axis, log-spaced
};

/// Searches a log-spaced (a_e, a_k) grid for points where the spread moves
/// profit in opposite directions. Among qualifying points the one with the
/// most extreme a_e/a_k ratio is reported. Requires a power-1 lognormal.
AmbiguityResult profit_ambiguity_search(const FirmParams& fp, double gamma,
                                        const AmbiguityGrid& grid = {});

struct FosdExperiment {
  double shift = 0.0;
  double reference_ability = 0.0;
  Dominance verdict = Dominance::equal;  ///< fosd_check(before, after)
  OutcomeSet before;
  OutcomeSet after;
  std::vector<ExperimentRow> rows;  ///< agrees <=> delta >= -1e-12 * max(1, |before|)

  bool all_nonnegative() const;
};

/// Moves every support point up by `shift` and compares steady states.
/// Requires an empirical distribution.
FosdExperiment run_fosd_experiment(const FirmParams& fp, double shift,
                                   std::optional<double> reference_ability = std::nullopt);

void write_fosd_csv(std::ostream& out, const std::vector<FosdExperiment>& runs);

}  // namespace purposedyn
