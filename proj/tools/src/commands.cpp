#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "ghr/errors.hpp"
#include "ghr/signal.hpp"
#include "ghr/suite.hpp"
#include "ghr/table.hpp"
#include "ghr/theorems.hpp"

namespace ghr::cli {
namespace {

constexpr double kMvtTolerance = 1e-7;
constexpr double kSlopeMin = 2.7;
constexpr double kSlopeMax = 3.3;
constexpr double kSampleMargin = 0.25;

std::string real_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

void require_known_tolerances(const RunConfig& config, std::set<std::string> known) {
  for (const auto& [name, value] : config.tolerances) {
    if (!known.count(name)) {
      throw ConfigError("'" + config.subcommand + "' has no tolerance named '" + name + "'");
    }
  }
}

double tolerance_or(const RunConfig& config, const std::string& name, double fallback) {
  const auto it = config.tolerances.find(name);
  return it == config.tolerances.end() ? fallback : it->second;
}

std::size_t points_or(const RunConfig& config, std::size_t fallback) {
  const std::size_t n = config.points.value_or(fallback);
  if (n == 0) {
    throw ConfigError("points must be positive");
  }
  return n;
}

// "power(3)", "exponential(40)" or a plain family name.
TableEntry entry_from_text(const std::string& text) {
  std::string name = text;
  std::optional<int> order;
  if (const auto open = text.find('('); open != std::string::npos) {
    if (text.back() != ')') {
      throw ConfigError("malformed family '" + text + "'");
    }
    name = text.substr(0, open);
    try {
      order = std::stoi(text.substr(open + 1, text.size() - open - 2));
    } catch (const std::exception&) {
      throw ConfigError("malformed family order in '" + text + "'");
    }
  }
  const std::optional<Family> family = family_from_name(name);
  if (!family) {
    throw ConfigError("unknown family '" + name + "'");
  }
  if (*family == Family::Power) {
    return TableEntry::power(order.value_or(3));
  }
  if (*family == Family::Exponential) {
    return TableEntry::exponential(order.value_or(kDefaultExpTerms));
  }
  if (order) {
    throw ConfigError("family '" + name + "' takes no order");
  }
  return TableEntry(*family);
}

// Polynomials of degree at most two have an identically zero cubic remainder.
bool quadratic(const TableEntry& e) {
  switch (e.family()) {
    case Family::Linear:
    case Family::ConjLinear:
    case Family::Square:
    case Family::ConjSquare:
    case Family::LinearSquare:
    case Family::ConjLinearSquare:
    case Family::RealPart:
    case Family::LinearRealPart:
    case Family::ConjLinearRealPart:
    case Family::ModulusSquared:
    case Family::LinearModulusSquared:
    case Family::ConjLinearModulusSquared:
      return true;
    case Family::Power:
      return e.order() <= 2;
    default:
      return false;
  }
}

std::vector<std::string> string_list(const nlohmann::json& settings, const std::string& key,
                                     std::vector<std::string> fallback) {
  if (!settings.contains(key)) {
    return fallback;
  }
  const nlohmann::json& v = settings.at(key);
  if (!v.is_array() || v.empty()) {
    throw ConfigError("'" + key + "' must be a nonempty array of strings");
  }
  std::vector<std::string> out;
  for (const nlohmann::json& item : v) {
    if (!item.is_string()) {
      throw ConfigError("'" + key + "' must be a nonempty array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

int run_verify(const RunConfig& config, std::ostream& csv, std::ostream& log) {
  SuiteOptions options;
  options.seed = config.seed;
  options.points = points_or(config, kDefaultIdentityPoints);
  options.tolerances = config.tolerances;
  const IdentityReport report = run_identity_suite(options);
  write_csv(csv, report);

  std::map<std::string, std::size_t> failing;
  for (const IdentityRecord& r : report.records) {
    if (!r.pass) {
      ++failing[r.identity];
    }
  }
  std::size_t skipped = 0;
  for (const auto& [name, n] : report.skipped) {
    skipped += n;
  }
  log << "verify: " << report.records.size() << " records, " << report.failures()
      << " failed, " << skipped << " degenerate axes skipped (seed=" << config.seed << ")\n";
  for (const auto& [name, n] : failing) {
    log << "  FAIL " << name << ": " << n << " records\n";
  }
  return report.all_pass() ? 0 : 1;
}

int run_table(const RunConfig& config, std::ostream& csv, std::ostream& log) {
  require_known_tolerances(config, {});
  const TableReport report = run_table_suite(config.seed, points_or(config, kDefaultTablePoints));
  write_csv(csv, report);

  std::map<std::string, std::size_t> rows;
  std::map<std::string, std::size_t> failing;
  for (const TableRecord& r : report.records) {
    const std::string family = r.family.substr(0, r.family.find('('));
    ++rows[family];
    if (!r.pass) {
      ++failing[family];
    }
  }
  log << "table: " << rows.size() << " families, " << report.records.size() << " rows, "
      << report.failures() << " failed (seed=" << config.seed << ")\n";
  for (const auto& [name, n] : failing) {
    log << "  FAIL " << name << ": " << n << " of " << rows[name] << " rows\n";
  }
  return report.all_pass() ? 0 : 1;
}

int run_taylor(const RunConfig& config, std::ostream& csv, std::ostream& log) {
  require_known_tolerances(config, {"slope_min", "slope_max"});
  const double lo = tolerance_or(config, "slope_min", kSlopeMin);
  const double hi = tolerance_or(config, "slope_max", kSlopeMax);
  const std::size_t points = points_or(config, 5);
  const std::vector<std::string> names = string_list(
      config.settings, "families", {"power(3)", "exponential", "square", "modulus_squared"});
  const std::vector<double> scales = geometric_scales(
      number_or(config.settings, "largest_scale", 1e-1),
      number_or(config.settings, "smallest_scale", 1e-3),
      static_cast<int>(count_or(config.settings, "scales", 8)));

  csv << "# seed=" << config.seed << '\n';
  csv << "family,base_point,direction,scale,error,noise_floor,floored,slope,pass\n";
  const Rng root(config.seed);
  std::size_t failures = 0;
  for (std::size_t f = 0; f < names.size(); ++f) {
    const TableEntry base = entry_from_text(names[f]);
    for (std::size_t p = 0; p < points; ++p) {
      Rng rng = root.split(f).split(p);
      const TableEntry entry = base.parametric() ? randomize(base, rng) : base;
      const Quaternion q0 = sample_admissible_point(entry, rng, kSampleMargin);
      const Quaternion direction = random_unit(rng);
      const TaylorFit fit = taylor_remainder_slope(entry.function(), q0, direction, scales);
      const bool pass = fit.slope ? (!quadratic(entry) && *fit.slope >= lo && *fit.slope <= hi)
                                  : quadratic(entry);
      failures += pass ? 0 : 1;
      const std::string slope = fit.slope ? real_text(*fit.slope) : "";
      for (std::size_t s = 0; s < fit.scales.size(); ++s) {
        csv << entry.label() << ',' << to_string(q0) << ',' << to_string(direction) << ','
            << real_text(fit.scales[s]) << ',' << real_text(fit.errors[s]) << ','
            << real_text(fit.noise_floors[s]) << ',' << (fit.floored[s] ? 1 : 0) << ',' << slope
            << ',' << (pass ? 1 : 0) << '\n';
      }
      log << "taylor: " << entry.label() << " at " << to_string(q0) << ": "
          << (fit.slope ? "slope " + real_text(*fit.slope) : std::string("exact to noise floor"))
          << (pass ? "" : "  FAIL") << '\n';
    }
  }
  log << "taylor: " << names.size() * points << " fits, " << failures << " failed (seed="
      << config.seed << ")\n";
  return failures == 0 ? 0 : 1;
}

int run_mvt(const RunConfig& config, std::ostream& csv, std::ostream& log) {
  require_known_tolerances(config, {"mvt"});
  const double tol = tolerance_or(config, "mvt", kMvtTolerance);
  const std::size_t points = points_or(config, 10);
  const int panels = static_cast<int>(count_or(config.settings, "panels", kDefaultPanels));
  const std::vector<std::string> names =
      string_list(config.settings, "families", {"square", "modulus_squared", "exponential"});

  csv << "# seed=" << config.seed << '\n';
  csv << "family,q0,q1,panels,residual,tol,pass\n";
  const Rng root(config.seed);
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t f = 0; f < names.size(); ++f) {
    const TableEntry entry = entry_from_text(names[f]);
    for (std::size_t p = 0; p < points; ++p) {
      Rng rng = root.split(f).split(p);
      const Quaternion q0 = 0.5 * sample_admissible_point(entry, rng, 2.0 * kSampleMargin);
      const Quaternion q1 = q0 + 0.5 * random_unit(rng);
      const SegmentCheck check = mvt_left(entry.function(), q0, q1, panels);
      const bool pass = check.residual < tol;
      failures += pass ? 0 : 1;
      worst = std::max(worst, check.residual);
      csv << entry.label() << ',' << to_string(q0) << ',' << to_string(q1) << ',' << panels << ','
          << real_text(check.residual) << ',' << real_text(tol) << ',' << (pass ? 1 : 0) << '\n';
    }
  }
  log << "mvt: " << names.size() * points << " segments, " << panels << " panels, worst residual "
      << real_text(worst) << ", " << failures << " failed (seed=" << config.seed << ")\n";
  return failures == 0 ? 0 : 1;
}

int run_descend(const RunConfig& config, std::ostream& csv, std::ostream& log) {
  require_known_tolerances(config, {"grad"});
  const nlohmann::json& s = config.settings;
  const Quaternion center = quaternion_or(s, "center", Quaternion(1, 2, 3, 4));
  const Quaternion init = quaternion_or(s, "init", Quaternion());
  DescentOptions options;
  options.alpha = number_or(s, "alpha", options.alpha);
  options.max_iters = static_cast<int>(count_or(s, "iters", 100));
  options.grad_tol = tolerance_or(config, "grad", options.grad_tol);

  // Centred objectives: the linear variant with lambda = -center.
  const std::string name = text_or(s, "objective", "modulus_squared");
  const std::optional<Family> family = family_from_name(name);
  if (!family) {
    throw ConfigError("unknown objective '" + name + "'");
  }
  Family centred = *family;
  if (centred == Family::ModulusSquared) centred = Family::LinearModulusSquared;
  if (centred == Family::Modulus) centred = Family::LinearModulus;
  if (centred == Family::RealPart) centred = Family::LinearRealPart;
  LinearParams params;
  params.lambda = -center;
  const TableEntry objective(centred, params);
  if (!objective.real_valued()) {
    throw ConfigError("objective '" + name + "' is not real-valued");
  }

  const DescentTrace trace = steepest_descent(objective, init, options);
  csv << "# seed=" << config.seed << '\n';
  csv << "iter,q,value,grad_norm\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    csv << k << ',' << to_string(trace.iterates[k]) << ',' << real_text(trace.values[k]) << ','
        << real_text(trace.grad_norms[k]) << '\n';
  }
  log << "descend: " << objective.label() << ", alpha " << options.alpha << ", "
      << (trace.converged ? "converged" : "not converged") << " after "
      << trace.iterates.size() - 1 << " iterations; final q " << to_string(trace.iterates.back())
      << ", grad_norm " << real_text(trace.grad_norms.back()) << '\n';
  return trace.converged ? 0 : 1;
}

int run_filter(const RunConfig& config, std::ostream& csv, std::ostream& log) {
  require_known_tolerances(config, {"weight_error"});
  const nlohmann::json& s = config.settings;
  if (!s.contains("variant")) {
    throw ConfigError("filter needs a config with a 'variant' field");
  }
  ExperimentConfig experiment;
  const std::string variant = text_or(s, "variant", "");
  const std::optional<Variant> v = variant_from_name(variant);
  if (!v) {
    throw ConfigError("unknown filter variant '" + variant + "'");
  }
  experiment.variant = *v;
  const std::string signal = text_or(s, "signal", "white_circular");
  const std::optional<SignalKind> kind = signal_kind_from_name(signal);
  if (!kind) {
    throw ConfigError("unknown signal kind '" + signal + "'");
  }
  experiment.signal = *kind;
  if (!s.contains("taps")) {
    throw ConfigError("filter config needs 'taps'");
  }
  const nlohmann::json& taps = s.at("taps");
  if (experiment.variant == Variant::WLQLMS) {
    if (!taps.is_object()) {
      throw ConfigError("wl_qlms 'taps' must be an object with h, g, u and v");
    }
    for (const char* key : {"h", "g", "u", "v"}) {
      if (!taps.contains(key)) {
        throw ConfigError(std::string("wl_qlms 'taps' is missing '") + key + "'");
      }
    }
    experiment.wl_system = {to_qvector(taps.at("h"), "taps.h"), to_qvector(taps.at("g"), "taps.g"),
                            to_qvector(taps.at("u"), "taps.u"), to_qvector(taps.at("v"), "taps.v")};
  } else {
    experiment.taps = to_qvector(taps, "taps");
  }
  experiment.alpha = number_or(s, "alpha", experiment.alpha);
  experiment.steps = count_or(s, "steps", experiment.steps);
  experiment.snr_db = number_or(s, "snr_db", experiment.snr_db);
  experiment.seed = config.seed;
  experiment.nonlinearity = text_or(s, "nonlinearity", experiment.nonlinearity);

  std::optional<double> target;
  if (s.contains("target_weight_error")) {
    target = number_or(s, "target_weight_error", 0.0);
  }
  if (const auto it = config.tolerances.find("weight_error"); it != config.tolerances.end()) {
    target = it->second;
  }

  const ExperimentResult result = run_experiment(experiment);
  csv << "# seed=" << config.seed << '\n';
  csv << "step,sq_error,weight_error\n";
  for (std::size_t n = 0; n < result.mse_curve.size(); ++n) {
    csv << n << ',' << real_text(result.mse_curve[n]) << ','
        << real_text(result.weight_error_curve[n]) << '\n';
  }
  const bool pass = !target || result.final_weight_error < *target;
  log << "filter: " << variant_name(experiment.variant) << ", " << result.steps << " steps, "
      << "final weight error " << real_text(result.final_weight_error);
  if (target) {
    log << " (target " << real_text(*target) << (pass ? ", pass" : ", FAIL") << ")";
  }
  log << '\n';
  return pass ? 0 : 1;
}

}  // namespace ghr::cli
