#include "dimtrunc/experiment.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dimtrunc/errors.hpp"

namespace dimtrunc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw ArgumentError("experiment: " + what);
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) fail(std::string("'") + key + "' must be a number");
  return it->get<double>();
}

std::string text(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

MeasureSpec parse_measure(const json& j) {
  const std::string type = text(j, "type");
  if (type == "uniform01") return MeasureSpec::uniform01();
  if (type == "uniform_sym") return MeasureSpec::uniform_sym();
  if (type == "exponential") return MeasureSpec::exponential(number(j, "lambda"));
  if (type == "logistic") return MeasureSpec::logistic(number(j, "lambda"));
  if (type == "gaussian") return MeasureSpec::gaussian(number(j, "sigma2"));
  fail("unknown measure type '" + type + "'");
}

CoefficientSequence parse_sequence(const json& j) {
  const std::string type = text(j, "type");
  if (type == "power_law") return CoefficientSequence::power(number(j, "a"));
  if (type == "finite_list") {
    const json& vals = require(j, "values");
    if (!vals.is_array()) fail("'values' must be an array");
    std::vector<double> values;
    values.reserve(vals.size());
    for (const json& v : vals) {
      if (!v.is_number()) fail("'values' entries must be numbers");
      values.push_back(v.get<double>());
    }
    return CoefficientSequence::finite(std::move(values));
  }
  fail("unknown sequence type '" + type + "'");
}

WeightFunction parse_weight(const json& j) {
  const std::string type = text(j, "type");
  if (type == "polynomial") return WeightFunction::polynomial(number(j, "alpha"));
  if (type == "geometric") return WeightFunction::geometric(number(j, "q"));
  fail("unknown weight type '" + type + "'");
}

FoldMode parse_fold_mode(const std::string& mode) {
  if (mode == "bounded") return FoldMode::Bounded;
  if (mode == "unbounded") return FoldMode::Unbounded;
  fail("unknown mode '" + mode + "'");
}

SweepTarget parse_target(const json& j) {
  const std::string type = text(j, "type");
  if (type == "fractional_wiener") {
    return SweepTarget::for_kernel(KernelSpec::fractional_wiener(number(j, "beta")));
  }
  if (type == "r_folded" || type == "two_sided") {
    const int r = static_cast<int>(number(j, "r"));
    SweepTarget t = SweepTarget::for_kernel(
        type == "r_folded" ? KernelSpec::r_folded(r) : KernelSpec::two_sided(r));
    if (j.contains("mode")) t.fold_mode = parse_fold_mode(text(j, "mode"));
    return t;
  }
  if (type == "korobov") {
    const double tol = number_or(j, "tail_tol", 1e-12);
    return SweepTarget::for_kernel(
        KernelSpec::korobov(parse_weight(require(j, "weight")), tol));
  }
  if (type == "hermite") {
    const double tol = number_or(j, "tail_tol", 1e-12);
    const double env = number_or(j, "env_radius", 4.0);
    SweepTarget t = SweepTarget::for_kernel(
        KernelSpec::hermite(parse_weight(require(j, "weight")), tol, env));
    if (j.contains("mode")) {
      const std::string mode = text(j, "mode");
      if (mode == "bounded_exp") {
        t.hermite_mode = HermiteMode::BoundedExp;
      } else if (mode == "split_exp") {
        t.hermite_mode = HermiteMode::SplitExp;
      } else {
        fail("unknown hermite mode '" + mode + "'");
      }
    }
    return t;
  }
  if (type == "holder") {
    return SweepTarget::for_holder(
        HolderClass::make(number(j, "C"), number(j, "beta")));
  }
  if (type == "gp_space") {
    const json& p = require(j, "p");
    if (p.is_string() && p.get<std::string>() == "inf") {
      return SweepTarget::for_holder(
          gp_space_params(std::numeric_limits<double>::infinity()));
    }
    if (!p.is_number()) fail("'p' must be a number or \"inf\"");
    return SweepTarget::for_holder(gp_space_params(p.get<double>()));
  }
  fail("unknown target type '" + type + "'");
}

McConfig parse_mc(const json& j) {
  McConfig mc;
  mc.samples = static_cast<long long>(number(j, "samples"));
  mc.ref_level = static_cast<long long>(number(j, "ref_level"));
  mc.seed = require(j, "seed").get<std::uint64_t>();
  const json& grid = require(j, "k_grid");
  if (!grid.is_array()) fail("'k_grid' must be an array");
  for (const json& v : grid) {
    if (!v.is_number_integer()) fail("'k_grid' entries must be integers");
    mc.k_grid.push_back(v.get<long long>());
  }
  mc.validate();
  return mc;
}

}  // namespace

ExperimentSpec parse_experiment_text(const std::string& content) {
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  ExperimentSpec spec;
  spec.measure = parse_measure(require(j, "measure"));
  spec.sequence = parse_sequence(require(j, "sequence"));
  spec.target = parse_target(require(j, "target"));
  spec.mc = parse_mc(require(j, "mc"));
  if (j.contains("outputs")) {
    const json& outs = j["outputs"];
    if (!outs.is_array()) fail("'outputs' must be an array");
    spec.outputs.clear();
    for (const json& o : outs) {
      const std::string name = o.get<std::string>();
      if (name != "table" && name != "json" && name != "plotdata") {
        fail("unknown output '" + name + "'");
      }
      spec.outputs.push_back(name);
    }
  }
  if (j.contains("constants")) {
    const json& c = j["constants"];
    spec.constants_m_max = static_cast<int>(number_or(c, "m_max", 8));
    spec.constants_r_max = static_cast<int>(number_or(c, "r_max", 10));
    if (spec.constants_m_max < 1 || spec.constants_m_max > 24 ||
        spec.constants_r_max < 1) {
      fail("constants ranges out of bounds");
    }
  }
  return spec;
}

ExperimentSpec load_experiment_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_text(buf.str());
}

}  // namespace dimtrunc
