#include "purposedyn/worker_equilibrium.hpp"

#include <cmath>
#include <functional>

#include "purposedyn/error.hpp"

namespace purposedyn {

namespace {

void require_ability(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("ability b must be finite and >= 0");
}

// Maximizer of a unimodal function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double search_own_choice(const std::function<double(double)>& f, double hi) {
  if (!(hi > 0.0)) return 0.0;
  const double x = golden_section_max(f, 0.0, hi, 1e-12 * std::max(1.0, hi));
  const double fx = f(x);
  constexpr int kScan = 64;
  for (int i = 0; i <= kScan; ++i) {
    const double y = hi * static_cast<double>(i) / kScan;
    if (f(y) > fx + 1e-12 * std::max(1.0, std::abs(fx))) {
      throw NumericalError("best-response search found a non-concave objective");
    }
  }
  return x;
}

}  // namespace

void WorkerParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must satisfy 0 < alpha < 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be > 0");
  if (!(a_e > 0.0) || !std::isfinite(a_e)) throw ValidationError("a_e must be > 0");
  if (!(a_k > 0.0) || !std::isfinite(a_k)) throw ValidationError("a_k must be > 0");
}

void PeriodState::validate() const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("purpose r must be >= 0");
  if (!(m_prev >= 0.0) || !std::isfinite(m_prev)) {
    throw ValidationError("previous meaning must be >= 0");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw ValidationError("lambda must satisfy 0 <= lambda < 1");
  }
}

double optimal_work_effort(double b, const WorkerParams& p) {
  require_ability(b);
  return b * p.alpha / p.a_e;
}

double common_socialization(double r, const WorkerParams& p, const MomentBundle& mb) {
  if (!(r >= 0.0)) throw ValidationError("purpose r must be >= 0");
  return (p.alpha + p.beta) / (2.0 * p.a_k) * std::sqrt(r) * mb.m13;
}

double individual_socialization(double b, double r, const WorkerParams& p,
                                const MomentBundle& mb) {
  require_ability(b);
  return std::cbrt(b * b) * common_socialization(r, p, mb);
}

double socialization_aggregate(double r, const WorkerParams& p, const MomentBundle& mb) {
  return std::sqrt(common_socialization(r, p, mb)) * mb.m13;
}

double individual_meaning(double b, const PeriodState& s, const WorkerParams& p,
                          const MomentBundle& mb) {
  require_ability(b);
  return (p.alpha + p.beta) / (2.0 * p.a_k) * s.r * std::cbrt(b) * mb.m13 * mb.m13 +
         s.lambda * s.m_prev;
}

double individual_output(double b, const PeriodState& s, const WorkerParams& p,
                         const MomentBundle& mb) {
  return b * (optimal_work_effort(b, p) + individual_meaning(b, s, p, mb));
}

double worker_utility_at(double b, double effort, double socialization, double k_others,
                         const PeriodState& s, const WorkerParams& p) {
  const double meaning =
      std::sqrt(socialization) * k_others * std::sqrt(s.r) + s.lambda * s.m_prev;
  return (p.alpha + p.beta) * b * meaning + p.alpha * b * effort -
         0.5 * p.a_e * effort * effort - 0.5 * p.a_k * socialization * socialization;
}

double worker_utility(double b, const PeriodState& s, const WorkerParams& p,
                      const MomentBundle& mb) {
  return worker_utility_at(b, optimal_work_effort(b, p),
                           individual_socialization(b, s.r, p, mb),
                           socialization_aggregate(s.r, p, mb), s, p);
}

double effort_foc_residual(double b, double effort, const WorkerParams& p) {
  return p.alpha * b - p.a_e * effort;
}

double socialization_foc_residual(double b, double socialization, double k_others,
                                  const PeriodState& s, const WorkerParams& p) {
  return 0.5 * (p.alpha + p.beta) * b * std::sqrt(s.r) * k_others / std::sqrt(socialization) -
         p.a_k * socialization;
}

BestResponse best_response_oracle(double b, double k_others, const PeriodState& s,
                                  const WorkerParams& p) {
  require_ability(b);
  if (!(k_others >= 0.0)) throw ValidationError("aggregate socialization must be >= 0");

  // Each choice enters utility separably; search each piece on its own.
  const auto effort_part = [&](double e) {
    return p.alpha * b * e - 0.5 * p.a_e * e * e;
  };
  const double gain = (p.alpha + p.beta) * b * std::sqrt(s.r) * k_others;
  const auto social_part = [&](double k) {
    return gain * std::sqrt(k) - 0.5 * p.a_k * k * k;
  };

  // Past these points the respective piece is negative, below its value at 0.
  const double effort_hi = 2.0 * p.alpha * b / p.a_e;
  const double social_hi = std::cbrt(std::pow(2.0 * gain / p.a_k, 2.0));

  BestResponse out;
  out.effort = search_own_choice(effort_part, 10.0 * effort_hi);
  out.socialization = search_own_choice(social_part, 10.0 * social_hi);
  return out;
}

}  // namespace purposedyn
