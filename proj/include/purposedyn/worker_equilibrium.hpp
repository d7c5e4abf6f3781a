#pragma once

#include "purposedyn/talent_distribution.hpp"

namespace purposedyn {

struct WorkerParams {
  double alpha = 0.5;  ///< worker's output share, in (0, 1)
  double beta = 0.5;   ///< weight on meaning, > 0
  double a_e = 1.0;    ///< work-effort cost coefficient
  double a_k = 1.0;    ///< socialization cost coefficient

  /// Throws ValidationError naming the violated bound.
  void validate() const;
};

/// What the worker takes as given within a period.
struct PeriodState {
  double r = 0.0;       ///< purpose flow chosen by the firm
  double m_prev = 0.0;  ///< average meaning carried from last period
  double lambda = 0.0;  ///< persistence of meaning, in [0, 1)

  void validate() const;
};

// Closed-form within-period equilibrium. Ability b >= 0; b = 0 maps to zero
// effort, socialization, meaning from purpose, and output.

double optimal_work_effort(double b, const WorkerParams& p);

/// Common socialization factor k_t; worker i exerts b_i^{2/3} k_t.
double common_socialization(double r, const WorkerParams& p, const MomentBundle& mb);

double individual_socialization(double b, double r, const WorkerParams& p,
                                const MomentBundle& mb);

/// Aggregate socialization input, the integral of k_j^{1/2} over workers.
double socialization_aggregate(double r, const WorkerParams& p, const MomentBundle& mb);

double individual_meaning(double b, const PeriodState& s, const WorkerParams& p,
                          const MomentBundle& mb);

double individual_output(double b, const PeriodState& s, const WorkerParams& p,
                         const MomentBundle& mb);

/// Utility at the equilibrium efforts.
double worker_utility(double b, const PeriodState& s, const WorkerParams& p,
                      const MomentBundle& mb);

/// Utility for arbitrary own choices (effort, socialization) given the
/// aggregate of others' socialization.
double worker_utility_at(double b, double effort, double socialization, double k_others,
                         const PeriodState& s, const WorkerParams& p);

// First-order-condition residuals of the worker problem.
double effort_foc_residual(double b, double effort, const WorkerParams& p);
double socialization_foc_residual(double b, double socialization, double k_others,
                                  const PeriodState& s, const WorkerParams& p);

struct BestResponse {
  double effort = 0.0;
  double socialization = 0.0;
};

/// Numerical best response: golden-section search on each own choice with the
/// aggregate k_others held fixed. The search interval for each variable is
/// the region where that variable's utility contribution is nonnegative,
/// widened tenfold. Throws NumericalError if a coarse scan finds a point
/// beating the search result (non-concavity). Test oracle only.
BestResponse best_response_oracle(double b, double k_others, const PeriodState& s,
                                  const WorkerParams& p);

}  // namespace purposedyn
