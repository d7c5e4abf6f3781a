#pragma once

#include <span>
#include <variant>
#include <vector>

namespace purposedyn {

/// b^power is lognormal with underlying normal N(mu, sigma2).
struct Lognormal {
  double mu = 0.0;
  double sigma2 = 0.0;
  double power = 1.0;

  bool operator==(const Lognormal&) const = default;
};

/// Finite-support probability law over strictly increasing positive points.
class Empirical {
 public:
  Empirical(std::vector<double> support, std::vector<double> weights);

  static Empirical point_mass(double b);
  /// Equal-weight law over the samples; repeated values are merged.
  static Empirical from_samples(std::span<const double> samples);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Same weights, every support point moved up by `shift` (>= 0).
  Empirical shifted(double shift) const;

  bool operator==(const Empirical&) const = default;

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
};

/// Ability distribution of the (unit-mass) workforce.
class TalentDistribution {
 public:
  /* implicit */ TalentDistribution(Lognormal law);
  /* implicit */ TalentDistribution(Empirical law);

  bool is_lognormal() const { return std::holds_alternative<Lognormal>(law_); }
  bool is_empirical() const { return std::holds_alternative<Empirical>(law_); }
  const Lognormal& lognormal() const;
  const Empirical& empirical() const;

  bool operator==(const TalentDistribution&) const = default;

 private:
  std::variant<Lognormal, Empirical> law_;
};

/// E[b^p] for p > 0.
double fractional_moment(const TalentDistribution& dist, double p);

enum class A3Policy { report, enforce };

/// The five moments entering every closed form: E[b^p] for
/// p in {1/3, 2/3, 1, 4/3, 2}.
struct MomentBundle {
  double m13 = 1.0;
  double m23 = 1.0;
  double m1 = 1.0;
  double m43 = 1.0;
  double m2 = 1.0;

  /// m1 - m43/m13. Never positive: b and b^{1/3} are comonotone, so
  /// E[b^{4/3}] >= E[b] E[b^{1/3}], with equality only for a point mass.
  double a3_slack() const { return m1 - m43 / m13; }
};

/// Throws ValidationError when a moment is non-positive, when log-convexity
/// fails beyond roundoff, or (under A3Policy::enforce) when a3_slack() <= 0.
MomentBundle moment_bundle(const TalentDistribution& dist,
                           A3Policy policy = A3Policy::report);
MomentBundle validated_bundle(MomentBundle mb, A3Policy policy = A3Policy::report);

/// sigma2 -> sigma2 + gamma, mu -> mu - gamma/2: keeps E[b^power] fixed.
Lognormal mean_preserving_spread(const Lognormal& dist, double gamma);
/// Throws UnsupportedError for empirical distributions.
TalentDistribution mean_preserving_spread(const TalentDistribution& dist, double gamma);

enum class Dominance { y_dominates, x_dominates, incomparable, equal };

const char* to_string(Dominance d);

/// First-order dominance from pointwise CDF comparison on the merged support.
Dominance fosd_check(const Empirical& x, const Empirical& y);
/// Second-order dominance from the integrated CDFs, which are piecewise
/// linear with kinks only at support points, so comparing at the merged
/// support is exact.
Dominance sosd_check(const Empirical& x, const Empirical& y);

}  // namespace purposedyn
