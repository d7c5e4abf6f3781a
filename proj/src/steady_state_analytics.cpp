#include "purposedyn/steady_state_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "purposedyn/error.hpp"
#include "purposedyn/format.hpp"

namespace purposedyn {

namespace {

void require_ability(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("ability b must be finite and >= 0");
}

double signum_with_band(double v, double tol) {
  if (v > tol) return 1.0;
  if (v < -tol) return -1.0;
  return 0.0;
}

Prediction from_sign(double s) {
  if (s > 0.0) return Prediction::positive;
  if (s < 0.0) return Prediction::negative;
  return Prediction::zero;
}

}  // namespace

const char* to_string(OwnershipMode mode) {
  switch (mode) {
    case OwnershipMode::investor_owned: return "investor_owned";
    case OwnershipMode::worker_owned: return "worker_owned";
  }
  return "unknown";
}

OutputShares shares_for(OwnershipMode mode, const FirmParams& fp) {
  if (mode == OwnershipMode::worker_owned) return {1.0, 1.0};
  return {fp.alpha(), 1.0 - fp.alpha()};
}

double steady_state_utility(double b, const FirmParams& fp, OwnershipMode mode) {
  require_ability(b);
  const OutputShares sh = shares_for(mode, fp);
  const SteadyState ss = steady_state(fp, sh);
  const MomentBundle& mb = fp.moments();
  const double ab = sh.worker + fp.beta();
  return std::pow(b, 4.0 / 3.0) * 3.0 * ab * ab / (8.0 * fp.a_k()) * mb.m13 * mb.m13 * ss.r_star +
         fp.lambda() * ab * b * ss.m_star + b * b * sh.worker * sh.worker / (2.0 * fp.a_e());
}

double steady_state_profit(const FirmParams& fp, OwnershipMode mode) {
  const OutputShares sh = shares_for(mode, fp);
  const SteadyState ss = steady_state(fp, sh);
  const MomentBundle& mb = fp.moments();
  const double ab = sh.worker + fp.beta();
  const double output = mb.m2 * sh.worker / fp.a_e() +
                        ab / (2.0 * fp.a_k()) * ss.r_star * mb.m43 * mb.m13 * mb.m13 +
                        fp.lambda() * mb.m1 * ss.m_star;
  return (sh.firm * output - 0.5 * fp.c() * ss.r_star * ss.r_star) / (1.0 - fp.delta());
}

ProfitCoefficients derived_profit_coefficients(double delta, double lambda) {
  const double dl = delta * lambda;
  return {0.5, lambda / (1.0 - lambda),
          dl * lambda * (2.0 - delta - dl) / (2.0 * (1.0 - dl) * (1.0 - dl) * (1.0 - lambda))};
}

ProfitCoefficients uncorrected_profit_coefficients(double delta, double lambda) {
  ProfitCoefficients c = derived_profit_coefficients(delta, lambda);
  const double dl = delta * lambda;
  c.cross = lambda * (1.0 + 2.0 * delta - 3.0 * dl) / ((1.0 - lambda) * (1.0 - dl));
  return c;
}

double profit_closed_form(const FirmParams& fp, const ProfitCoefficients& coef) {
  const MomentBundle& mb = fp.moments();
  const double a = fp.alpha();
  const double ab = a + fp.beta();
  const double d = fp.delta();
  const double m13_4 = std::pow(mb.m13, 4.0);
  const double bracket = coef.quadratic * m13_4 * mb.m43 * mb.m43 +
                         coef.cross * m13_4 * mb.m13 * mb.m1 * mb.m43 +
                         coef.persistence * m13_4 * mb.m13 * mb.m13 * mb.m1 * mb.m1;
  return (1.0 - a) * a * mb.m2 / ((1.0 - d) * fp.a_e()) +
         (1.0 - a) * (1.0 - a) * ab * ab / ((1.0 - d) * 4.0 * fp.c() * fp.a_k() * fp.a_k()) *
             bracket;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::m_star: return "m_star";
    case Outcome::r_star: return "r_star";
    case Outcome::k_star: return "k_star";
    case Outcome::utility: return "utility";
    case Outcome::profit: return "profit";
  }
  return "unknown";
}

double OutcomeSet::get(Outcome o) const {
  switch (o) {
    case Outcome::m_star: return m_star;
    case Outcome::r_star: return r_star;
    case Outcome::k_star: return k_star;
    case Outcome::utility: return utility;
    case Outcome::profit: return profit;
  }
  return 0.0;
}

OutcomeSet steady_state_outcomes(const FirmParams& fp, double reference_ability) {
  const SteadyState ss = steady_state(fp);
  return {ss.m_star, ss.r_star, ss.k_star, steady_state_utility(reference_ability, fp),
          steady_state_profit(fp)};
}

const char* to_string(Prediction p) {
  switch (p) {
    case Prediction::positive: return "positive";
    case Prediction::negative: return "negative";
    case Prediction::zero: return "zero";
    case Prediction::none: return "none";
  }
  return "unknown";
}

Prediction predicted_sign(const FirmParams& fp, Parameter param, Outcome outcome) {
  const double a = fp.alpha();
  const double b = fp.beta();
  const bool meaning_block = outcome == Outcome::m_star || outcome == Outcome::r_star ||
                             outcome == Outcome::k_star;
  switch (param) {
    case Parameter::beta:
    case Parameter::delta:
    case Parameter::lambda:
      return Prediction::positive;
    case Parameter::c:
    case Parameter::a_k:
      return Prediction::negative;
    case Parameter::a_e:
      return meaning_block ? Prediction::zero : Prediction::negative;
    case Parameter::alpha:
      switch (outcome) {
        case Outcome::m_star: return from_sign(2.0 - 3.0 * a - b);
        case Outcome::r_star: return from_sign(1.0 - 2.0 * a - b);
        case Outcome::k_star: return from_sign(3.0 - 4.0 * a - b);
        case Outcome::utility:
          return a < (1.0 - b) / 2.0 ? Prediction::positive : Prediction::none;
        case Outcome::profit:
          if (1.0 - 2.0 * a - b > 0.0) return Prediction::positive;
          if (1.0 - 2.0 * a < 0.0) return Prediction::negative;
          return Prediction::none;
      }
  }
  return Prediction::none;
}

bool sign_agrees(Prediction p, double value, double zero_tol) {
  switch (p) {
    case Prediction::positive: return value > 0.0;
    case Prediction::negative: return value < 0.0;
    case Prediction::zero: return std::abs(value) <= zero_tol;
    case Prediction::none: return true;
  }
  return false;
}

bool ComparativeReport::all_agree() const {
  for (const auto& row : rows) {
    if (!row.agrees) return false;
  }
  return true;
}

ComparativeReport comparative_statics(const FirmParams& fp, Parameter param,
                                      double relative_step,
                                      std::optional<double> reference_ability) {
  if (!(relative_step > 0.0) || !std::isfinite(relative_step)) {
    throw ValidationError("finite-difference step must be > 0");
  }
  ComparativeReport rep;
  rep.parameter = param;
  rep.base_value = fp.get(param);
  rep.reference_ability = reference_ability.value_or(fp.moments().m1);
  require_ability(rep.reference_ability);
  rep.step = rep.base_value != 0.0 ? relative_step * std::abs(rep.base_value) : relative_step;

  auto evaluate_at = [&](double v) {
    try {
      return steady_state_outcomes(fp.with(param, v), rep.reference_ability);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("finite-difference step leaves the valid domain of ") +
                            to_string(param) + ": " + e.what());
    }
  };
  const OutcomeSet up = evaluate_at(rep.base_value + rep.step);
  const OutcomeSet down = evaluate_at(rep.base_value - rep.step);
  const OutcomeSet base = steady_state_outcomes(fp, rep.reference_ability);

  for (Outcome o : kAllOutcomes) {
    SensitivityRow row;
    row.outcome = o;
    row.base = base.get(o);
    row.derivative = (up.get(o) - down.get(o)) / (2.0 * rep.step);
    row.predicted = predicted_sign(fp, param, o);
    row.agrees = sign_agrees(row.predicted, row.derivative,
                             1e-8 * std::max(1.0, std::abs(row.base)));
    rep.rows.push_back(row);
  }
  return rep;
}

void write_comparative_csv(std::ostream& out, const std::vector<ComparativeReport>& reports) {
  out << "parameter,base_value,step,reference_ability,outcome,outcome_value,derivative,"
         "numeric_sign,predicted_sign,agrees\n";
  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      const double s = signum_with_band(row.derivative, 1e-8 * std::max(1.0, std::abs(row.base)));
      out << to_string(rep.parameter) << ',' << full_precision(rep.base_value) << ','
          << full_precision(rep.step) << ',' << full_precision(rep.reference_ability) << ','
          << to_string(row.outcome) << ',' << full_precision(row.base) << ','
          << full_precision(row.derivative) << ',' << to_string(from_sign(s)) << ','
          << to_string(row.predicted) << ',' << (row.agrees ? "true" : "false") << '\n';
    }
  }
}

std::string comparative_json(const std::vector<ComparativeReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    nlohmann::ordered_json j;
    j["parameter"] = to_string(rep.parameter);
    j["base_value"] = rep.base_value;
    j["step"] = rep.step;
    j["reference_ability"] = rep.reference_ability;
    j["all_agree"] = rep.all_agree();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rep.rows) {
      rows.push_back({{"outcome", to_string(row.outcome)},
                      {"value", row.base},
                      {"derivative", row.derivative},
                      {"predicted_sign", to_string(row.predicted)},
                      {"agrees", row.agrees}});
    }
    j["outcomes"] = std::move(rows);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

SteadyState worker_owned_steady_state(const FirmParams& fp) {
  return steady_state(fp, shares_for(OwnershipMode::worker_owned, fp));
}

OwnershipComparison compare_ownership(const FirmParams& fp,
                                      std::optional<double> reference_ability) {
  OwnershipComparison cmp;
  cmp.reference_ability = reference_ability.value_or(fp.moments().m1);
  cmp.investor = steady_state(fp);
  cmp.worker_owned = worker_owned_steady_state(fp);
  cmp.utility_investor = steady_state_utility(cmp.reference_ability, fp);
  cmp.utility_worker_owned =
      steady_state_utility(cmp.reference_ability, fp, OwnershipMode::worker_owned);
  cmp.profit_investor = steady_state_profit(fp);
  cmp.surplus_worker_owned = steady_state_profit(fp, OwnershipMode::worker_owned);
  return cmp;
}

void write_ownership_csv(std::ostream& out, const OwnershipComparison& cmp) {
  out << "quantity,investor_owned,worker_owned\n";
  auto row = [&](const char* name, double inv, double wo) {
    out << name << ',' << full_precision(inv) << ',' << full_precision(wo) << '\n';
  };
  row("m_star", cmp.investor.m_star, cmp.worker_owned.m_star);
  row("r_star", cmp.investor.r_star, cmp.worker_owned.r_star);
  row("k_star", cmp.investor.k_star, cmp.worker_owned.k_star);
  row("utility", cmp.utility_investor, cmp.utility_worker_owned);
  row("profit_or_surplus", cmp.profit_investor, cmp.surplus_worker_owned);
  row("reference_ability", cmp.reference_ability, cmp.reference_ability);
}

}  // namespace purposedyn
