#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "purposedyn/firm_dynamics.hpp"

namespace purposedyn {

struct DpBlock {
  std::size_t grid = 2001;
  int horizon = 60;
};

struct ComparativeBlock {
  std::vector<Parameter> parameters{std::begin(kAllParameters), std::end(kAllParameters)};
  double step = 1e-5;  ///< relative
  std::optional<double> reference_ability;
};

/// A validated run description. Unknown JSON keys are rejected.
///
/// {
///   "name": "s0",
///   "params": {"alpha": .5, "beta": .5, "a_e": 1, "a_k": 1, "c": 1,
///              "delta": .5, "lambda": .5,
///              "distribution": {"lognormal": {"mu": 0, "sigma2": 0, "power": 1}}},
///   "initial_meaning": 0, "horizon": 30,
///   "enforce_a3": false,
///   "dp": {"grid": 2001, "horizon": 60},
///   "comparative_statics": {"parameters": ["alpha"], "step": 1e-5,
///                           "reference_ability": 1},
///   "sosd_sweep": {"gammas": [0.1, 0.5]},
///   "fosd_shift": {"shifts": [0.5]}
/// }
///
/// Everything except "params" is optional. An empirical distribution is
/// written {"empirical": {"support": [...], "weights": [...]}}.
struct Scenario {
  Scenario(std::string name_, FirmParams params_)
      : name(std::move(name_)), params(std::move(params_)) {}

  std::string name;
  FirmParams params;
  double initial_meaning = 0.0;
  int horizon = 30;
  DpBlock dp;
  ComparativeBlock comparative;
  std::vector<double> gammas{0.1, 0.25, 0.5};
  std::vector<double> shifts{0.5};
  std::uint64_t source_hash = 0;  ///< FNV-1a 64 of the source text
};

/// Throws ValidationError with the offending field path on malformed JSON,
/// unknown or mistyped fields, and out-of-range values.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace purposedyn
