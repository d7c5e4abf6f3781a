#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "purposedyn/talent_distribution.hpp"
#include "purposedyn/worker_equilibrium.hpp"

namespace purposedyn {

enum class Parameter { alpha, beta, delta, lambda, c, a_e, a_k };

inline constexpr Parameter kAllParameters[] = {Parameter::alpha, Parameter::beta,
                                               Parameter::delta, Parameter::lambda,
                                               Parameter::c,     Parameter::a_e,
                                               Parameter::a_k};

const char* to_string(Parameter p);
std::optional<Parameter> parse_parameter(std::string_view name);

/// Everything the firm's problem depends on. Validated on construction; the
/// moment bundle of the distribution is computed once and cached.
class FirmParams {
 public:
  FirmParams(WorkerParams worker, double delta, double lambda, double c,
             TalentDistribution dist, A3Policy a3 = A3Policy::report);

  const WorkerParams& worker() const { return worker_; }
  double alpha() const { return worker_.alpha; }
  double beta() const { return worker_.beta; }
  double a_e() const { return worker_.a_e; }
  double a_k() const { return worker_.a_k; }
  double delta() const { return delta_; }
  double lambda() const { return lambda_; }
  double c() const { return c_; }
  const TalentDistribution& dist() const { return dist_; }
  const MomentBundle& moments() const { return moments_; }
  A3Policy a3_policy() const { return a3_; }

  double get(Parameter p) const;
  /// Copy with one scalar replaced; revalidates.
  FirmParams with(Parameter p, double value) const;
  FirmParams with_distribution(TalentDistribution dist) const;

 private:
  WorkerParams worker_;
  double delta_;
  double lambda_;
  double c_;
  TalentDistribution dist_;
  A3Policy a3_;
  MomentBundle moments_;
};

/// Meaning produced per unit of purpose: (alpha+beta)/(2 A_k) * m13^3.
double purpose_yield(const FirmParams& fp);

double law_of_motion(double m_prev, double r, const FirmParams& fp);

/// Purpose needed to move meaning from m_prev to m_next. Throws
/// InfeasibilityError when m_next < lambda * m_prev.
double purpose_from_meaning(double m_prev, double m_next, const FirmParams& fp);

/// Aggregate output of the workforce at purpose r, before the firm's share.
double aggregate_output(double m_prev, double r, const FirmParams& fp);

/// Firm's per-period payoff written in (m_prev, r): share of output minus
/// the cost of purpose.
double period_profit(double m_prev, double r, const FirmParams& fp);

/// The same payoff with r substituted out through the law of motion.
double reduced_objective(double m_prev, double m_next, const FirmParams& fp);

struct ObjectivePartials {
  double d_prev = 0.0;  ///< derivative in m_prev
  double d_next = 0.0;  ///< derivative in m_next
};

ObjectivePartials objective_partials(double m_prev, double m_next, const FirmParams& fp);

/// Constant second derivatives of the (quadratic) reduced objective.
struct ObjectiveHessian {
  double prev_prev = 0.0;
  double next_next = 0.0;
  double cross = 0.0;
};

ObjectiveHessian objective_hessian(const FirmParams& fp);

/// d/dm_now [F(m_prev, m_now) + delta F(m_now, m_next)], from closed-form
/// partials.
double euler_residual(double m_prev, double m_now, double m_next, const FirmParams& fp);

struct SteadyState {
  double m_star = 0.0;
  double r_star = 0.0;
  double k_star = 0.0;  ///< common socialization factor at r_star

  /// Workforce-average socialization, m23 * k_star.
  double mean_socialization(const MomentBundle& mb) const { return mb.m23 * k_star; }
};

/// Retained shares: `worker` enters the worker's problem (alpha for an
/// investor-owned firm), `firm` multiplies output in the firm's objective
/// (1 - alpha).
struct OutputShares {
  double worker = 0.5;
  double firm = 0.5;
};

SteadyState steady_state(const FirmParams& fp);
SteadyState steady_state(const FirmParams& fp, const OutputShares& shares);

struct TrajectoryPoint {
  int t = 0;
  double m_bar = 0.0;
  double r = 0.0;
  double per_period_profit = 0.0;
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Optimal path m_t = m* + mu2^t (m0 - m*) for t = 1..horizon, with purpose
/// recovered from consecutive meanings. Throws ValidationError for m0 < 0 or
/// horizon < 1 and InfeasibilityError if any r_t would be negative.
Trajectory transition_path(double m0, int horizon, const FirmParams& fp);

void write_trajectory_csv(std::ostream& out, const Trajectory& path);

struct CharacteristicRoots {
  double unstable = 0.0;  ///< mu1 > 1
  double stable = 0.0;    ///< mu2, governs convergence
};

/// Roots of delta*c*mu^2 + (b + delta*a)*mu + c = 0 built from the objective
/// Hessian. With lambda = 0 the cross term vanishes; the convention is then
/// stable = 0 (immediate adjustment) and unstable = +infinity.
CharacteristicRoots characteristic_roots(const FirmParams& fp);

/// F_next,next + delta F_prev,prev + |F_cross| (1 + delta); negative means
/// the steady state is a saddle point.
double saddle_condition(const FirmParams& fp);

struct DpOptions {
  std::size_t grid_size = 2001;
  int horizon = 60;
  std::optional<double> grid_max;  ///< default 3 * m* (closed form)
  double m0 = 0.0;
  int path_length = 30;
};

struct DpResult {
  std::vector<double> grid;
  std::vector<std::size_t> policy;  ///< index of next-period meaning
  std::vector<double> value;
  double cell_width = 0.0;
  double fixed_point = 0.0;  ///< grid-stationary meaning
  std::vector<double> path;  ///< greedy path from m0 snapped to the grid, path[0] = start
};

/// Brute-force backward induction on a meaning grid with feasible moves
/// m' >= lambda m. Throws ValidationError when the grid is degenerate, does not
/// reach past the closed-form steady state, or delta^horizon >= 1e-8.
DpResult dp_oracle(const FirmParams& fp, const DpOptions& options = {});

}  // namespace purposedyn
