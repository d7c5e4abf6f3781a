#include "purposedyn/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "purposedyn/error.hpp"

namespace purposedyn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!keys.count(item.key())) {
      fail(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
    }
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& required(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(join(path, key), "missing required field");
  return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

long long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long long>();
}

std::vector<double> as_numbers(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

TalentDistribution parse_distribution(const json& v, const std::string& path) {
  reject_unknown(v, path, {"lognormal", "empirical"});
  if (v.size() != 1) fail(path, "expected exactly one of \"lognormal\" or \"empirical\"");
  try {
    if (v.contains("lognormal")) {
      const std::string p = path + ".lognormal";
      const json& d = v.at("lognormal");
      reject_unknown(d, p, {"mu", "sigma2", "power"});
      Lognormal law;
      law.mu = as_number(required(d, p, "mu"), p + ".mu");
      law.sigma2 = as_number(required(d, p, "sigma2"), p + ".sigma2");
      if (d.contains("power")) law.power = as_number(d.at("power"), p + ".power");
      return TalentDistribution(law);
    }
    const std::string p = path + ".empirical";
    const json& d = v.at("empirical");
    reject_unknown(d, p, {"support", "weights"});
    return TalentDistribution(Empirical(as_numbers(required(d, p, "support"), p + ".support"),
                                        as_numbers(required(d, p, "weights"), p + ".weights")));
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    // Field errors raised above already carry their path.
    if (msg.rfind(path, 0) == 0) throw;
    fail(path + (v.contains("lognormal") ? ".lognormal" : ".empirical"), msg);
  }
}

// Which scalar a FirmParams validation message is about, from its first word.
std::string field_of(const std::string& message) {
  const std::string first = message.substr(0, message.find(' '));
  for (const char* key : {"alpha", "beta", "a_e", "a_k", "c", "delta", "lambda"}) {
    if (first == key) return std::string("params.") + key;
  }
  return "params";
}

Scenario parse_json(const json& root) {
  reject_unknown(root, "", {"name", "params", "initial_meaning", "horizon", "enforce_a3", "dp",
                            "comparative_statics", "sosd_sweep", "fosd_shift"});

  std::string name = "unnamed";
  if (root.contains("name")) {
    if (!root.at("name").is_string()) fail("name", "expected a string");
    name = root.at("name").get<std::string>();
  }

  A3Policy a3 = A3Policy::report;
  if (root.contains("enforce_a3")) {
    if (!root.at("enforce_a3").is_boolean()) fail("enforce_a3", "expected true or false");
    if (root.at("enforce_a3").get<bool>()) a3 = A3Policy::enforce;
  }

  const json& p = required(root, "", "params");
  reject_unknown(p, "params", {"alpha", "beta", "a_e", "a_k", "c", "delta", "lambda",
                               "distribution"});
  WorkerParams w;
  w.alpha = as_number(required(p, "params", "alpha"), "params.alpha");
  w.beta = as_number(required(p, "params", "beta"), "params.beta");
  w.a_e = as_number(required(p, "params", "a_e"), "params.a_e");
  w.a_k = as_number(required(p, "params", "a_k"), "params.a_k");
  const double c = as_number(required(p, "params", "c"), "params.c");
  const double delta = as_number(required(p, "params", "delta"), "params.delta");
  const double lambda = as_number(required(p, "params", "lambda"), "params.lambda");
  TalentDistribution dist =
      parse_distribution(required(p, "params", "distribution"), "params.distribution");

  std::optional<FirmParams> fp;
  try {
    fp.emplace(w, delta, lambda, c, std::move(dist), a3);
  } catch (const ValidationError& e) {
    fail(field_of(e.what()), e.what());
  }

  Scenario s(name, *fp);
  if (root.contains("initial_meaning")) {
    s.initial_meaning = as_number(root.at("initial_meaning"), "initial_meaning");
    if (s.initial_meaning < 0.0) fail("initial_meaning", "must be >= 0");
  }
  if (root.contains("horizon")) {
    const long long h = as_integer(root.at("horizon"), "horizon");
    if (h < 1 || h > 1000000) fail("horizon", "must be in [1, 1000000]");
    s.horizon = static_cast<int>(h);
  }
  if (root.contains("dp")) {
    const json& d = root.at("dp");
    reject_unknown(d, "dp", {"grid", "horizon"});
    if (d.contains("grid")) {
      const long long g = as_integer(d.at("grid"), "dp.grid");
      if (g < 3 || g > 100000) fail("dp.grid", "must be in [3, 100000]");
      s.dp.grid = static_cast<std::size_t>(g);
    }
    if (d.contains("horizon")) {
      const long long h = as_integer(d.at("horizon"), "dp.horizon");
      if (h < 1 || h > 100000) fail("dp.horizon", "must be in [1, 100000]");
      s.dp.horizon = static_cast<int>(h);
    }
  }
  if (root.contains("comparative_statics")) {
    const json& cs = root.at("comparative_statics");
    reject_unknown(cs, "comparative_statics", {"parameters", "step", "reference_ability"});
    if (cs.contains("parameters")) {
      const json& list = cs.at("parameters");
      if (!list.is_array()) fail("comparative_statics.parameters", "expected an array of names");
      s.comparative.parameters.clear();
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "comparative_statics.parameters[" + std::to_string(i) + "]";
        if (!list[i].is_string()) fail(path, "expected a parameter name");
        const auto param = parse_parameter(list[i].get<std::string>());
        if (!param) fail(path, "unknown parameter '" + list[i].get<std::string>() + "'");
        s.comparative.parameters.push_back(*param);
      }
    }
    if (cs.contains("step")) {
      s.comparative.step = as_number(cs.at("step"), "comparative_statics.step");
      if (!(s.comparative.step > 0.0)) fail("comparative_statics.step", "must be > 0");
    }
    if (cs.contains("reference_ability")) {
      const double b = as_number(cs.at("reference_ability"), "comparative_statics.reference_ability");
      if (!(b >= 0.0)) fail("comparative_statics.reference_ability", "must be >= 0");
      s.comparative.reference_ability = b;
    }
  }
  if (root.contains("sosd_sweep")) {
    const json& sw = root.at("sosd_sweep");
    reject_unknown(sw, "sosd_sweep", {"gammas"});
    if (sw.contains("gammas")) {
      s.gammas = as_numbers(sw.at("gammas"), "sosd_sweep.gammas");
      for (std::size_t i = 0; i < s.gammas.size(); ++i) {
        if (!(s.gammas[i] >= 0.0)) {
          fail("sosd_sweep.gammas[" + std::to_string(i) + "]", "must be >= 0");
        }
      }
    }
  }
  if (root.contains("fosd_shift")) {
    const json& fs = root.at("fosd_shift");
    reject_unknown(fs, "fosd_shift", {"shifts"});
    if (fs.contains("shifts")) {
      s.shifts = as_numbers(fs.at("shifts"), "fosd_shift.shifts");
      for (std::size_t i = 0; i < s.shifts.size(); ++i) {
        if (!(s.shifts[i] >= 0.0)) {
          fail("fosd_shift.shifts[" + std::to_string(i) + "]", "must be >= 0");
        }
      }
    }
  }
  return s;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario s = parse_json(root);
  s.source_hash = fnv1a64(json_text);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace purposedyn
