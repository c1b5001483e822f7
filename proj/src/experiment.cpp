#include "nlslab/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlslab/initial_data.hpp"

namespace nlslab {

namespace cfgv {

namespace {

const nlohmann::json* walk(const nlohmann::json& j, const std::string& path) {
  const nlohmann::json* cur = &j;
  std::stringstream ss(path);
  std::string key;
  while (std::getline(ss, key, '.')) {
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &(*cur)[key];
  }
  return cur;
}

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::config, "config error at " + path + ": " + what);
}

}  // namespace

const nlohmann::json* find(const nlohmann::json& j, const std::string& path) {
  return walk(j, path);
}

double num(const nlohmann::json& j, const std::string& path, double lo,
           double hi) {
  const nlohmann::json* v = walk(j, path);
  if (!v) bad(path, "missing required key");
  if (!v->is_number()) bad(path, "expected a number");
  const double x = v->get<double>();
  if (!(x >= lo && x <= hi)) {
    std::ostringstream os;
    os << "value " << x << " outside [" << lo << ", " << hi << "]";
    bad(path, os.str());
  }
  return x;
}

double num_or(const nlohmann::json& j, const std::string& path, double fallback,
              double lo, double hi) {
  return walk(j, path) ? num(j, path, lo, hi) : fallback;
}

long long integer(const nlohmann::json& j, const std::string& path,
                  long long lo, long long hi) {
  const nlohmann::json* v = walk(j, path);
  if (!v) bad(path, "missing required key");
  if (!v->is_number_integer()) bad(path, "expected an integer");
  const long long x = v->get<long long>();
  if (!(x >= lo && x <= hi)) {
    std::ostringstream os;
    os << "value " << x << " outside [" << lo << ", " << hi << "]";
    bad(path, os.str());
  }
  return x;
}

long long integer_or(const nlohmann::json& j, const std::string& path,
                     long long fallback, long long lo, long long hi) {
  return walk(j, path) ? integer(j, path, lo, hi) : fallback;
}

std::string str(const nlohmann::json& j, const std::string& path) {
  const nlohmann::json* v = walk(j, path);
  if (!v) bad(path, "missing required key");
  if (!v->is_string()) bad(path, "expected a string");
  return v->get<std::string>();
}

std::string str_or(const nlohmann::json& j, const std::string& path,
                   const std::string& fallback) {
  return walk(j, path) ? str(j, path) : fallback;
}

bool flag_or(const nlohmann::json& j, const std::string& path, bool fallback) {
  const nlohmann::json* v = walk(j, path);
  if (!v) return fallback;
  if (!v->is_boolean()) bad(path, "expected a boolean");
  return v->get<bool>();
}

std::vector<double> num_list(const nlohmann::json& j, const std::string& path) {
  const nlohmann::json* v = walk(j, path);
  if (!v) bad(path, "missing required key");
  if (!v->is_array() || v->empty()) bad(path, "expected a non-empty array");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) bad(path, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace cfgv

ExperimentKind parse_kind(const std::string& s) {
  if (s == "propagate") return ExperimentKind::propagate;
  if (s == "split") return ExperimentKind::split;
  if (s == "evolve") return ExperimentKind::evolve;
  if (s == "globalize") return ExperimentKind::globalize;
  if (s == "verify") return ExperimentKind::verify;
  if (s == "report") return ExperimentKind::report;
  fail(ErrorCode::config, "config error at kind: unknown kind '" + s + "'");
}

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::propagate: return "propagate";
    case ExperimentKind::split: return "split";
    case ExperimentKind::evolve: return "evolve";
    case ExperimentKind::globalize: return "globalize";
    case ExperimentKind::verify: return "verify";
    case ExperimentKind::report: return "report";
  }
  return "?";
}

ExperimentConfig parse_experiment(const nlohmann::json& j) {
  using namespace cfgv;
  ExperimentConfig cfg;
  cfg.raw = j;
  cfg.name = str(j, "name");
  cfg.kind = parse_kind(str(j, "kind"));

  cfg.n_points = static_cast<std::size_t>(
      integer_or(j, "grid.n_points", 4096, 4, 1 << 24));
  if ((cfg.n_points & (cfg.n_points - 1)) != 0)
    fail(ErrorCode::config,
         "config error at grid.n_points: must be a power of two");
  cfg.half_width = num_or(j, "grid.half_width", 100.0, 1e-6, 1e9);

  cfg.solver.dt = num_or(j, "solver.dt", 1e-4, 1e-12, 1.0);
  const std::string scheme =
      str_or(j, "solver.scheme", "strang_splitstep");
  if (scheme == "strang_splitstep") {
    cfg.solver.scheme = Scheme::strang_splitstep;
  } else if (scheme == "picard_duhamel") {
    cfg.solver.scheme = Scheme::picard_duhamel;
  } else {
    fail(ErrorCode::config,
         "config error at solver.scheme: expected strang_splitstep or "
         "picard_duhamel");
  }
  cfg.solver.picard_max_iter = static_cast<int>(
      integer_or(j, "solver.picard_max_iter", 50, 1, 10000));
  cfg.solver.picard_tol =
      num_or(j, "solver.picard_tol", 1e-10, 1e-16, 1.0);
  cfg.solver.blowup_factor =
      num_or(j, "solver.blowup_factor", 1e6, 1.0, 1e300);
  cfg.solver.store_slices = static_cast<std::size_t>(
      integer_or(j, "solver.store_slices", 512, 0, 1 << 22));
  cfg.solver.defocusing = flag_or(j, "solver.defocusing", false);

  cfg.domain_tolerance = num_or(j, "domain_tolerance", 1e-6, 0.0, 1.0);
  cfg.seed = static_cast<std::uint64_t>(
      integer_or(j, "seed", 1, 0, 9223372036854775807LL));

  if (const auto* outputs = find(j, "outputs")) {
    if (!outputs->is_array())
      fail(ErrorCode::config,
           "config error at outputs: expected an array of output kinds");
    cfg.write_csv_outputs = false;
    cfg.write_json_report = false;
    for (const auto& o : *outputs) {
      const std::string s = o.is_string() ? o.get<std::string>() : "";
      if (s == "csv") {
        cfg.write_csv_outputs = true;
      } else if (s == "json_report") {
        cfg.write_json_report = true;
      } else {
        fail(ErrorCode::config,
             "config error at outputs: unknown output kind '" + s + "'");
      }
    }
  }
  return cfg;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io,
          "load_experiment: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::config,
         "config error in " + path + ": " + e.what());
  }
  return parse_experiment(j);
}

nlohmann::json default_config(ExperimentKind kind) {
  using nlohmann::json;
  json j;
  j["kind"] = kind_name(kind);
  j["grid"] = {{"n_points", 4096}, {"half_width", 100.0}};
  j["solver"] = {{"dt", 1e-4}, {"scheme", "strang_splitstep"}};
  switch (kind) {
    case ExperimentKind::propagate:
      j["name"] = "propagate_gaussian_default";
      j["initial_data"] = {{"type", "gaussian"}, {"a", 1.0}};
      j["propagate"] = {{"horizon", 1.0}, {"slices", 201}, {"p", 2.1}};
      break;
    case ExperimentKind::split:
      j["name"] = "split_powerlaw_default";
      j["initial_data"] = {{"type", "power_law"},
                           {"beta", 0.49},
                           {"amplitude", 1.0},
                           {"claimed_p", 2.1}};
      j["split"] = {{"p0", 2.9},
                    {"alpha_from_p", 2.1},
                    {"n_values", {2, 4, 8, 16, 32, 64, 128, 256}}};
      break;
    case ExperimentKind::evolve:
      j["name"] = "evolve_soliton_default";
      j["initial_data"] = {{"type", "soliton"}};
      j["evolve"] = {{"horizon", 1.0}};
      break;
    case ExperimentKind::globalize:
      j["name"] = "globalize_powerlaw_default";
      j["initial_data"] = {{"type", "power_law"},
                           {"beta", 0.49},
                           {"amplitude", 1.0},
                           {"claimed_p", 2.1}};
      j["globalize"] = {{"p0", 2.9},
                        {"alpha_from_p", 2.1},
                        {"n_values", {4, 8, 16}},
                        {"m", 4.0},
                        {"c_small", 1.0},
                        {"t_cap", 1.0}};
      break;
    case ExperimentKind::verify:
      j["name"] = "verify_default";
      break;
    case ExperimentKind::report:
      j["name"] = "report_default";
      break;
  }
  return j;
}

Field make_initial_data(const ExperimentConfig& cfg) {
  using namespace cfgv;
  const nlohmann::json& j = cfg.raw;
  const GridSpec grid = cfg.grid();
  const std::string type = str(j, "initial_data.type");
  if (type == "gaussian") {
    return gaussian_data(grid, num_or(j, "initial_data.a", 1.0, 1e-9, 1e9));
  }
  if (type == "soliton") {
    return soliton_data(grid);
  }
  if (type == "power_law") {
    const double beta = num(j, "initial_data.beta", 1e-9, 1.0 - 1e-9);
    const double amplitude =
        num_or(j, "initial_data.amplitude", 1.0, 1e-12, 1e12);
    // Integrability window: the claim phi in L^p \ L^2 needs
    // beta in (1/p, 1/2).
    if (const auto* claimed = find(j, "initial_data.claimed_p")) {
      const double p = claimed->is_number() ? claimed->get<double>() : 0.0;
      if (!(p > 2.0) || !(beta > 1.0 / p) || !(beta < 0.5)) {
        fail(ErrorCode::config,
             "config error at initial_data.beta: claimed_p requires beta in "
             "(1/p, 1/2)");
      }
    }
    return power_law_data(grid, beta, amplitude);
  }
  if (type == "random_smooth") {
    const auto seed = static_cast<std::uint64_t>(
        integer_or(j, "initial_data.seed",
                   static_cast<long long>(cfg.seed), 0,
                   9223372036854775807LL));
    return random_smooth_data(
        grid, seed, num_or(j, "initial_data.x_width", 1.0, 1e-9, 1e9),
        num_or(j, "initial_data.band", 2.0, 1e-9, 1e9));
  }
  if (type == "zero") {
    return Field(grid);
  }
  fail(ErrorCode::config,
       "config error at initial_data.type: unknown type '" + type + "'");
}

}  // namespace nlslab
