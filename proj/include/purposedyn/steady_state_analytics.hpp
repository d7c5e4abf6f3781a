#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "purposedyn/firm_dynamics.hpp"

namespace purposedyn {

enum class OwnershipMode { investor_owned, worker_owned };

const char* to_string(OwnershipMode mode);

/// Output shares implied by an ownership mode. A worker-owned firm keeps all
/// output on both sides of the problem.
OutputShares shares_for(OwnershipMode mode, const FirmParams& fp);

/// Steady-state utility of a worker with ability b:
///   b^{4/3} 3(w+beta)^2/(8A_k) m13^2 r* + lambda (w+beta) b m* + b^2 w^2/(2A_e)
/// with w the worker's share.
double steady_state_utility(double b, const FirmParams& fp,
                            OwnershipMode mode = OwnershipMode::investor_owned);

/// Discounted steady-state payoff [share * Z(m*, r*) - (C/2) r*^2] / (1 - delta),
/// with Z the aggregate output. For a worker-owned firm this is the surplus
/// the cooperative maximizes.
double steady_state_profit(const FirmParams& fp,
                           OwnershipMode mode = OwnershipMode::investor_owned);

/// Coefficients multiplying m13^4 m43^2, m13^5 m1 m43 and m13^6 m1^2 in the
/// closed form of steady-state profit.
struct ProfitCoefficients {
  double quadratic = 0.0;
  double cross = 0.0;
  double persistence = 0.0;
};

/// Coefficients obtained by substituting the steady state into the payoff.
ProfitCoefficients derived_profit_coefficients(double delta, double lambda);

/// The printed variant whose cross coefficient is
/// lambda(1 + 2 delta - 3 delta lambda)/((1 - lambda)(1 - delta lambda)).
/// It overstates profit (29/36 instead of 13/18 at the unit scenario) and is
/// kept only so the discrepancy stays visible in tests and reports.
ProfitCoefficients uncorrected_profit_coefficients(double delta, double lambda);

/// (1-a) a m2/((1-d) A_e) + (1-a)^2 (a+b)^2/((1-d) 4 C A_k^2) * bracket.
double profit_closed_form(const FirmParams& fp, const ProfitCoefficients& coef);

enum class Outcome { m_star, r_star, k_star, utility, profit };

inline constexpr std::array<Outcome, 5> kAllOutcomes = {
    Outcome::m_star, Outcome::r_star, Outcome::k_star, Outcome::utility, Outcome::profit};

const char* to_string(Outcome o);

struct OutcomeSet {
  double m_star = 0.0;
  double r_star = 0.0;
  double k_star = 0.0;
  double utility = 0.0;  ///< at the reference ability
  double profit = 0.0;

  double get(Outcome o) const;
};

OutcomeSet steady_state_outcomes(const FirmParams& fp, double reference_ability);

enum class Prediction { positive, negative, zero, none };

const char* to_string(Prediction p);

/// Sign of d(outcome)/d(parameter) stated by the theory at this point, or
/// Prediction::none where it makes no claim.
Prediction predicted_sign(const FirmParams& fp, Parameter param, Outcome outcome);

/// Whether a numeric value is consistent with a prediction. `zero_tol` is the
/// band inside which a value counts as zero.
bool sign_agrees(Prediction p, double value, double zero_tol);

struct SensitivityRow {
  Outcome outcome = Outcome::m_star;
  double base = 0.0;
  double derivative = 0.0;
  Prediction predicted = Prediction::none;
  bool agrees = true;
};

struct ComparativeReport {
  Parameter parameter = Parameter::alpha;
  double base_value = 0.0;
  double step = 0.0;  ///< absolute step actually used
  double reference_ability = 0.0;
  std::vector<SensitivityRow> rows;

  bool all_agree() const;
};

inline constexpr double kDefaultRelativeStep = 1e-5;

/// Central finite differences of every outcome in one parameter, with step
/// relative_step * |value| (relative_step when the value is 0). The utility
/// is taken at `reference_ability`, by default the mean ability. Throws
/// ValidationError when either evaluation point leaves the valid domain.
ComparativeReport comparative_statics(const FirmParams& fp, Parameter param,
                                      double relative_step = kDefaultRelativeStep,
                                      std::optional<double> reference_ability = std::nullopt);

void write_comparative_csv(std::ostream& out, const std::vector<ComparativeReport>& reports);
std::string comparative_json(const std::vector<ComparativeReport>& reports);

/// Steady state with both retained shares set to one.
SteadyState worker_owned_steady_state(const FirmParams& fp);

struct OwnershipComparison {
  double reference_ability = 0.0;
  SteadyState investor;
  SteadyState worker_owned;
  double utility_investor = 0.0;
  double utility_worker_owned = 0.0;
  double profit_investor = 0.0;
  double surplus_worker_owned = 0.0;
};

OwnershipComparison compare_ownership(const FirmParams& fp,
                                      std::optional<double> reference_ability = std::nullopt);

void write_ownership_csv(std::ostream& out, const OwnershipComparison& cmp);

}  // namespace purposedyn
