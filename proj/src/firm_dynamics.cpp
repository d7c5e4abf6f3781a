#include "purposedyn/firm_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "purposedyn/error.hpp"
#include "purposedyn/format.hpp"
#include "purposedyn/parallel.hpp"

namespace purposedyn {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

double yield_for(double worker_share, const FirmParams& fp) {
  const double m13 = fp.moments().m13;
  return (worker_share + fp.beta()) / (2.0 * fp.a_k()) * m13 * m13 * m13;
}

// m_next - lambda m_prev, with roundoff-sized negatives treated as zero.
double meaning_increment(double m_prev, double m_next, const FirmParams& fp) {
  const double carried = fp.lambda() * m_prev;
  const double diff = m_next - carried;
  if (diff >= 0.0) return diff;
  if (diff >= -kFeasibilitySlack * std::max({1.0, std::abs(m_next), carried})) return 0.0;
  std::ostringstream msg;
  msg.precision(10);
  msg << "infeasible transition: meaning " << m_next << " is below the carried-over "
      << carried << " and would need negative purpose";
  throw InfeasibilityError(msg.str());
}

void require_meaning(double m, const char* what) {
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw ValidationError(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

const char* to_string(Parameter p) {
  switch (p) {
    case Parameter::alpha: return "alpha";
    case Parameter::beta: return "beta";
    case Parameter::delta: return "delta";
    case Parameter::lambda: return "lambda";
    case Parameter::c: return "c";
    case Parameter::a_e: return "a_e";
    case Parameter::a_k: return "a_k";
  }
  return "unknown";
}

std::optional<Parameter> parse_parameter(std::string_view name) {
  for (Parameter p : kAllParameters) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

FirmParams::FirmParams(WorkerParams worker, double delta, double lambda, double c,
                       TalentDistribution dist, A3Policy a3)
    : worker_(worker), delta_(delta), lambda_(lambda), c_(c), dist_(std::move(dist)), a3_(a3) {
  worker_.validate();
  if (!(delta_ > 0.0 && delta_ < 1.0)) throw ValidationError("delta must satisfy 0 < delta < 1");
  if (!(lambda_ >= 0.0 && lambda_ < 1.0)) {
    throw ValidationError("lambda must satisfy 0 <= lambda < 1");
  }
  if (!(delta_ * lambda_ < 1.0)) throw ValidationError("delta*lambda must be < 1");
  if (!(c_ > 0.0) || !std::isfinite(c_)) throw ValidationError("c must be > 0");
  moments_ = moment_bundle(dist_, a3_);
}

double FirmParams::get(Parameter p) const {
  switch (p) {
    case Parameter::alpha: return worker_.alpha;
    case Parameter::beta: return worker_.beta;
    case Parameter::delta: return delta_;
    case Parameter::lambda: return lambda_;
    case Parameter::c: return c_;
    case Parameter::a_e: return worker_.a_e;
    case Parameter::a_k: return worker_.a_k;
  }
  throw ValidationError("unknown parameter");
}

FirmParams FirmParams::with(Parameter p, double value) const {
  WorkerParams w = worker_;
  double delta = delta_;
  double lambda = lambda_;
  double c = c_;
  switch (p) {
    case Parameter::alpha: w.alpha = value; break;
    case Parameter::beta: w.beta = value; break;
    case Parameter::delta: delta = value; break;
    case Parameter::lambda: lambda = value; break;
    case Parameter::c: c = value; break;
    case Parameter::a_e: w.a_e = value; break;
    case Parameter::a_k: w.a_k = value; break;
  }
  return FirmParams(w, delta, lambda, c, dist_, a3_);
}

FirmParams FirmParams::with_distribution(TalentDistribution dist) const {
  return FirmParams(worker_, delta_, lambda_, c_, std::move(dist), a3_);
}

double purpose_yield(const FirmParams& fp) { return yield_for(fp.alpha(), fp); }

double law_of_motion(double m_prev, double r, const FirmParams& fp) {
  require_meaning(m_prev, "previous meaning");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("purpose r must be >= 0");
  return purpose_yield(fp) * r + fp.lambda() * m_prev;
}

double purpose_from_meaning(double m_prev, double m_next, const FirmParams& fp) {
  require_meaning(m_prev, "previous meaning");
  require_meaning(m_next, "next meaning");
  return meaning_increment(m_prev, m_next, fp) / purpose_yield(fp);
}

double aggregate_output(double m_prev, double r, const FirmParams& fp) {
  const MomentBundle& mb = fp.moments();
  const double ab = fp.alpha() + fp.beta();
  return mb.m2 * fp.alpha() / fp.a_e() + ab / (2.0 * fp.a_k()) * r * mb.m43 * mb.m13 * mb.m13 +
         fp.lambda() * mb.m1 * m_prev;
}

double period_profit(double m_prev, double r, const FirmParams& fp) {
  return (1.0 - fp.alpha()) * aggregate_output(m_prev, r, fp) - 0.5 * fp.c() * r * r;
}

double reduced_objective(double m_prev, double m_next, const FirmParams& fp) {
  const MomentBundle& mb = fp.moments();
  const double inc = meaning_increment(m_prev, m_next, fp);
  const double r = inc / purpose_yield(fp);
  const double output = mb.m2 * fp.alpha() / fp.a_e() + inc * mb.m43 / mb.m13 +
                        fp.lambda() * mb.m1 * m_prev;
  return (1.0 - fp.alpha()) * output - 0.5 * fp.c() * r * r;
}

ObjectivePartials objective_partials(double m_prev, double m_next, const FirmParams& fp) {
  const MomentBundle& mb = fp.moments();
  const double inc = meaning_increment(m_prev, m_next, fp);
  const double g = purpose_yield(fp);
  const double share = 1.0 - fp.alpha();
  const double cost_slope = fp.c() * inc / (g * g);
  ObjectivePartials out;
  out.d_prev = share * fp.lambda() * (mb.m1 - mb.m43 / mb.m13) + fp.lambda() * cost_slope;
  out.d_next = share * mb.m43 / mb.m13 - cost_slope;
  return out;
}

ObjectiveHessian objective_hessian(const FirmParams& fp) {
  const double g = purpose_yield(fp);
  const double curv = fp.c() / (g * g);
  ObjectiveHessian h;
  h.prev_prev = -curv * fp.lambda() * fp.lambda();
  h.next_next = -curv;
  h.cross = curv * fp.lambda();
  return h;
}

double euler_residual(double m_prev, double m_now, double m_next, const FirmParams& fp) {
  return objective_partials(m_prev, m_now, fp).d_next +
         fp.delta() * objective_partials(m_now, m_next, fp).d_prev;
}

SteadyState steady_state(const FirmParams& fp) {
  return steady_state(fp, OutputShares{fp.alpha(), 1.0 - fp.alpha()});
}

SteadyState steady_state(const FirmParams& fp, const OutputShares& shares) {
  const MomentBundle& mb = fp.moments();
  const double ab = shares.worker + fp.beta();
  const double dl = fp.delta() * fp.lambda();
  const double lam = fp.lambda();
  const double m13_5 = std::pow(mb.m13, 5.0);
  const double denom = 4.0 * fp.c() * fp.a_k() * fp.a_k() * (1.0 - lam);

  SteadyState ss;
  ss.m_star = shares.firm * ab * ab * mb.m43 * m13_5 / denom +
              shares.firm * dl * mb.m1 * ab * ab * m13_5 * mb.m13 / (denom * (1.0 - dl));
  ss.r_star = (1.0 - lam) * ss.m_star / yield_for(shares.worker, fp);
  ss.k_star = ab / (2.0 * fp.a_k()) * std::sqrt(ss.r_star) * mb.m13;
  return ss;
}

Trajectory transition_path(double m0, int horizon, const FirmParams& fp) {
  require_meaning(m0, "initial meaning");
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  const double m_star = steady_state(fp).m_star;
  const double mu = characteristic_roots(fp).stable;

  Trajectory path;
  path.reserve(static_cast<std::size_t>(horizon));
  double prev = m0;
  double decay = 1.0;
  for (int t = 1; t <= horizon; ++t) {
    decay *= mu;
    const double m = m_star + decay * (m0 - m_star);
    const double r = purpose_from_meaning(prev, m, fp);
    path.push_back({t, m, r, period_profit(prev, r, fp)});
    prev = m;
  }
  return path;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& path) {
  out << "t,m_bar,r,per_period_profit\n";
  for (const auto& p : path) {
    out << p.t << ',' << full_precision(p.m_bar) << ',' << full_precision(p.r) << ','
        << full_precision(p.per_period_profit) << '\n';
  }
}

CharacteristicRoots characteristic_roots(const FirmParams& fp) {
  const ObjectiveHessian h = objective_hessian(fp);
  const double d = fp.delta();
  if (h.cross == 0.0) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  // delta c mu^2 + (b + delta a) mu + c = 0  <=>  mu^2 - q mu + 1/delta = 0.
  const double q = -(h.next_next + d * h.prev_prev) / (d * h.cross);
  const double disc = q * q - 4.0 / d;
  if (disc < 0.0) throw NumericalError("characteristic roots are complex");
  CharacteristicRoots roots;
  roots.unstable = 0.5 * (q + std::sqrt(disc));
  // Product of the roots is 1/delta; dividing avoids cancellation in q - sqrt.
  roots.stable = 1.0 / (d * roots.unstable);
  return roots;
}

double saddle_condition(const FirmParams& fp) {
  const ObjectiveHessian h = objective_hessian(fp);
  return h.next_next + fp.delta() * h.prev_prev + std::abs(h.cross) * (1.0 + fp.delta());
}

DpResult dp_oracle(const FirmParams& fp, const DpOptions& options) {
  const std::size_t n = options.grid_size;
  if (n < 3) throw ValidationError("dp grid needs at least 3 points");
  if (options.horizon < 1) throw ValidationError("dp horizon must be >= 1");
  if (!(std::pow(fp.delta(), options.horizon) < 1e-8)) {
    throw ValidationError("dp horizon too short: delta^horizon must be < 1e-8");
  }
  const double m_star = steady_state(fp).m_star;
  const double top = options.grid_max.value_or(3.0 * m_star);
  if (!(top > 0.0) || !std::isfinite(top)) throw ValidationError("dp grid_max must be > 0");
  const double h = top / static_cast<double>(n - 1);
  if (!(top >= m_star + h)) {
    throw ValidationError("dp grid does not bracket the steady state: grid_max must exceed m* "
                          "by at least one cell");
  }
  require_meaning(options.m0, "dp initial meaning");
  if (options.m0 > top) throw ValidationError("dp initial meaning lies beyond the grid");

  DpResult res;
  res.cell_width = h;
  res.grid.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.grid[i] = h * static_cast<double>(i);
  res.grid.back() = top;

  // Per-period profit through purpose r = (m' - lambda m)/g and the output
  // share minus purpose cost, expanded so the inner loop is a polynomial.
  const MomentBundle& mb = fp.moments();
  const double share = 1.0 - fp.alpha();
  const double g = purpose_yield(fp);
  const double lam = fp.lambda();
  const double ab = fp.alpha() + fp.beta();
  const double static_part = share * mb.m2 * fp.alpha() / fp.a_e();
  const double per_r = share * ab / (2.0 * fp.a_k()) * mb.m43 * mb.m13 * mb.m13;
  const double per_m = share * lam * mb.m1;
  const double half_c = 0.5 * fp.c();

  // First feasible next index for each state.
  std::vector<std::size_t> first(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double floor = lam * res.grid[i];
    std::size_t j = static_cast<std::size_t>(std::max(0.0, std::floor(floor / h)));
    while (j < n && res.grid[j] < floor) ++j;
    while (j > 0 && res.grid[j - 1] >= floor) --j;
    first[i] = j;
  }

  std::vector<double> value(n, 0.0);
  std::vector<double> next(n, 0.0);
  res.policy.assign(n, 0);
  const double delta = fp.delta();
  for (int step = 0; step < options.horizon; ++step) {
    parallel_for(n, [&](std::size_t i) {
      const double x = res.grid[i];
      const double base = static_part + per_m * x;
      const double carried = lam * x;
      const std::size_t j0 = first[i];
      if (j0 >= n) {
        next[i] = -std::numeric_limits<double>::infinity();
        res.policy[i] = i;
        return;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t j = j0; j < n; ++j) {
        const double r = (res.grid[j] - carried) / g;
        const double v = base + per_r * r - half_c * r * r + delta * value[j];
        best = v > best ? v : best;
      }
      std::size_t arg = j0;
      for (std::size_t j = j0; j < n; ++j) {
        const double r = (res.grid[j] - carried) / g;
        const double v = base + per_r * r - half_c * r * r + delta * value[j];
        if (v == best) {
          arg = j;
          break;
        }
      }
      next[i] = best;
      res.policy[i] = arg;
    });
    value.swap(next);
  }
  res.value = value;

  std::size_t lo = n;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (res.policy[i] == i) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  if (lo < n) {
    res.fixed_point = 0.5 * (res.grid[lo] + res.grid[hi]);
  } else {
    bool found = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (res.policy[i] > i && res.policy[i + 1] < i + 1) {
        res.fixed_point = res.grid[i] + 0.5 * h;
        found = true;
        break;
      }
    }
    if (!found) throw NumericalError("dp policy has no stationary point on the grid");
  }

  std::size_t at = static_cast<std::size_t>(std::lround(options.m0 / h));
  at = std::min(at, n - 1);
  res.path.reserve(static_cast<std::size_t>(options.path_length) + 1);
  res.path.push_back(res.grid[at]);
  for (int t = 0; t < options.path_length; ++t) {
    at = res.policy[at];
    res.path.push_back(res.grid[at]);
  }
  return res;
}

}  // namespace purposedyn
