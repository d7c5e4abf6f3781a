#include "purposedyn/talent_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "purposedyn/error.hpp"

namespace purposedyn {

namespace {

constexpr double kWeightTolerance = 1e-12;
constexpr double kCompareTolerance = 1e-12;
constexpr double kLogConvexTolerance = 1e-10;

void validate_lognormal(const Lognormal& d) {
  if (!std::isfinite(d.mu)) throw ValidationError("lognormal mu must be finite");
  if (!(d.sigma2 >= 0.0) || !std::isfinite(d.sigma2)) {
    throw ValidationError("lognormal sigma2 must be finite and >= 0");
  }
  if (!(d.power > 0.0) || !std::isfinite(d.power)) {
    throw ValidationError("lognormal power must be finite and > 0");
  }
}

std::vector<double> merged_support(const Empirical& x, const Empirical& y) {
  std::vector<double> pts;
  pts.reserve(x.support().size() + y.support().size());
  std::merge(x.support().begin(), x.support().end(), y.support().begin(),
             y.support().end(), std::back_inserter(pts));
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// CDF evaluated at each of the (sorted) query points.
std::vector<double> cdf_at(const Empirical& d, const std::vector<double>& pts) {
  std::vector<double> out(pts.size());
  std::size_t j = 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (j < d.support().size() && d.support()[j] <= pts[i]) {
      acc += d.weights()[j];
      ++j;
    }
    out[i] = acc;
  }
  return out;
}

// Integral of the CDF from -inf up to each point.
std::vector<double> integrated_cdf_at(const std::vector<double>& cdf,
                                      const std::vector<double>& pts) {
  std::vector<double> out(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    out[i] = out[i - 1] + cdf[i - 1] * (pts[i] - pts[i - 1]);
  }
  return out;
}

Dominance compare_pointwise(const std::vector<double>& fx, const std::vector<double>& fy,
                            double tol) {
  bool y_below = true;  // fy <= fx everywhere
  bool x_below = true;  // fx <= fy everywhere
  for (std::size_t i = 0; i < fx.size(); ++i) {
    if (fy[i] > fx[i] + tol) y_below = false;
    if (fx[i] > fy[i] + tol) x_below = false;
  }
  if (y_below && x_below) return Dominance::equal;
  if (y_below) return Dominance::y_dominates;
  if (x_below) return Dominance::x_dominates;
  return Dominance::incomparable;
}

}  // namespace

Empirical::Empirical(std::vector<double> support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty()) throw ValidationError("empirical support must be non-empty");
  if (support_.size() != weights_.size()) {
    throw ValidationError("empirical support and weights must have equal length");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!(support_[i] > 0.0) || !std::isfinite(support_[i])) {
      throw ValidationError("empirical support points must be finite and > 0");
    }
    if (i > 0 && !(support_[i] > support_[i - 1])) {
      throw ValidationError("empirical support must be strictly increasing");
    }
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw ValidationError("empirical weights must be finite and > 0");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > kWeightTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "empirical weights must sum to 1 (got " << total << ")";
    throw ValidationError(msg.str());
  }
}

Empirical Empirical::point_mass(double b) { return Empirical({b}, {1.0}); }

Empirical Empirical::from_samples(std::span<const double> samples) {
  if (samples.empty()) throw ValidationError("cannot build a distribution from no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> support;
  std::vector<std::size_t> counts;
  for (double v : sorted) {
    if (!support.empty() && support.back() == v) {
      ++counts.back();
    } else {
      support.push_back(v);
      counts.push_back(1);
    }
  }
  std::vector<double> weights(counts.size());
  std::transform(counts.begin(), counts.end(), weights.begin(),
                 [n](std::size_t c) { return static_cast<double>(c) / n; });
  return Empirical(std::move(support), std::move(weights));
}

Empirical Empirical::shifted(double shift) const {
  if (!(shift >= 0.0)) throw ValidationError("support shift must be >= 0");
  std::vector<double> moved(support_);
  for (double& s : moved) s += shift;
  return Empirical(std::move(moved), weights_);
}

TalentDistribution::TalentDistribution(Lognormal law) : law_(law) { validate_lognormal(law); }

TalentDistribution::TalentDistribution(Empirical law) : law_(std::move(law)) {}

const Lognormal& TalentDistribution::lognormal() const {
  if (const auto* p = std::get_if<Lognormal>(&law_)) return *p;
  throw UnsupportedError("distribution is not lognormal");
}

const Empirical& TalentDistribution::empirical() const {
  if (const auto* p = std::get_if<Empirical>(&law_)) return *p;
  throw UnsupportedError("distribution is not empirical");
}

double fractional_moment(const TalentDistribution& dist, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("moment exponent must be > 0");
  if (dist.is_lognormal()) {
    const Lognormal& d = dist.lognormal();
    const double q = p / d.power;
    return std::exp(q * d.mu + 0.5 * d.sigma2 * q * q);
  }
  const Empirical& d = dist.empirical();
  double acc = 0.0;
  for (std::size_t i = 0; i < d.support().size(); ++i) {
    acc += d.weights()[i] * std::pow(d.support()[i], p);
  }
  return acc;
}

MomentBundle validated_bundle(MomentBundle mb, A3Policy policy) {
  for (double m : {mb.m13, mb.m23, mb.m1, mb.m43, mb.m2}) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw ValidationError("moments must be finite and > 0");
    }
  }
  // Cauchy-Schwarz on E[b^p]: p -> log E[b^p] is convex.
  if (mb.m23 * mb.m23 > mb.m13 * mb.m1 * (1.0 + kLogConvexTolerance) ||
      mb.m1 * mb.m1 > mb.m23 * mb.m43 * (1.0 + kLogConvexTolerance)) {
    throw ValidationError("moments violate log-convexity");
  }
  if (policy == A3Policy::enforce && !(mb.a3_slack() > 0.0)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "condition A3 violated: m1 - m43/m13 = " << mb.a3_slack() << " must be > 0";
    throw ValidationError(msg.str());
  }
  return mb;
}

MomentBundle moment_bundle(const TalentDistribution& dist, A3Policy policy) {
  MomentBundle mb;
  mb.m13 = fractional_moment(dist, 1.0 / 3.0);
  mb.m23 = fractional_moment(dist, 2.0 / 3.0);
  mb.m1 = fractional_moment(dist, 1.0);
  mb.m43 = fractional_moment(dist, 4.0 / 3.0);
  mb.m2 = fractional_moment(dist, 2.0);
  return validated_bundle(mb, policy);
}

Lognormal mean_preserving_spread(const Lognormal& dist, double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("spread gamma must be finite and >= 0");
  }
  return Lognormal{dist.mu - 0.5 * gamma, dist.sigma2 + gamma, dist.power};
}

TalentDistribution mean_preserving_spread(const TalentDistribution& dist, double gamma) {
  if (!dist.is_lognormal()) {
    throw UnsupportedError("mean-preserving spread is only defined for lognormal distributions");
  }
  return TalentDistribution(mean_preserving_spread(dist.lognormal(), gamma));
}

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::y_dominates: return "y_dominates";
    case Dominance::x_dominates: return "x_dominates";
    case Dominance::incomparable: return "incomparable";
    case Dominance::equal: return "equal";
  }
  return "unknown";
}

Dominance fosd_check(const Empirical& x, const Empirical& y) {
  const auto pts = merged_support(x, y);
  return compare_pointwise(cdf_at(x, pts), cdf_at(y, pts), kCompareTolerance);
}

Dominance sosd_check(const Empirical& x, const Empirical& y) {
  const auto pts = merged_support(x, y);
  const auto gx = integrated_cdf_at(cdf_at(x, pts), pts);
  const auto gy = integrated_cdf_at(cdf_at(y, pts), pts);
  // Past the last point both CDFs are 1, so the gap stays constant.
  const double scale = std::max(1.0, pts.back());
  return compare_pointwise(gx, gy, kCompareTolerance * scale);
}

}  // namespace purposedyn
