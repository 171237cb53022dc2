#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ghr/errors.hpp"
#include "run_config.hpp"

namespace {

using namespace ghr::cli;

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> points;
  std::vector<std::string> tolerances;

  std::optional<std::string> objective;
  std::optional<std::string> center;
  std::optional<std::string> init;
  std::optional<double> alpha;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> panels;
  std::vector<std::string> families;
};

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "Random seed (overrides the config)");
  cmd->add_option("--out", flags.out, "Write CSV here instead of stdout");
  cmd->add_option("--points", flags.points, "Sample count");
  cmd->add_option("--tol", flags.tolerances, "Tolerance override name=value (repeatable)");
}

RunConfig resolve(const std::string& subcommand, const Flags& flags) {
  RunConfig config;
  config.subcommand = subcommand;
  if (!flags.config_path.empty()) {
    config.settings = load_config_file(flags.config_path);
  }
  nlohmann::json& s = config.settings;
  if (flags.objective) s["objective"] = *flags.objective;
  if (flags.center) s["center"] = *flags.center;
  if (flags.init) s["init"] = *flags.init;
  if (flags.alpha) s["alpha"] = *flags.alpha;
  if (flags.iters) s["iters"] = *flags.iters;
  if (flags.panels) s["panels"] = *flags.panels;
  if (!flags.families.empty()) s["families"] = flags.families;

  if (flags.seed) {
    config.seed = *flags.seed;
  } else if (s.contains("seed")) {
    if (!s["seed"].is_number_unsigned()) {
      throw ghr::ConfigError("'seed' must be a nonnegative integer");
    }
    config.seed = s["seed"].get<std::uint64_t>();
  }
  if (flags.points) {
    config.points = *flags.points;
  } else if (s.contains("points")) {
    config.points = count_or(s, "points", 0);
  }
  if (s.contains("tolerances")) {
    if (!s["tolerances"].is_object()) {
      throw ghr::ConfigError("'tolerances' must be an object of name: value pairs");
    }
    for (const auto& [name, value] : s["tolerances"].items()) {
      if (!value.is_number() || value.get<double>() < 0.0) {
        throw ghr::ConfigError("tolerance '" + name + "' must be a nonnegative number");
      }
      config.tolerances[name] = value.get<double>();
    }
  }
  for (const std::string& text : flags.tolerances) {
    const auto [name, value] = parse_tolerance(text);
    config.tolerances[name] = value;
  }
  if (!flags.out.empty()) {
    config.output_path = flags.out;
  }
  return config;
}

using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion GHR calculus verification and adaptive filtering"};
  app.require_subcommand(1);
  Flags flags;

  const std::vector<std::pair<std::pair<const char*, const char*>, Command>> commands{
      {{"verify", "Run the derivative identity suite"}, run_verify},
      {{"table", "Cross-check closed-form derivatives against numerical ones"}, run_table},
      {{"taylor", "Measure Taylor remainder order"}, run_taylor},
      {{"mvt", "Check the mean value theorem by quadrature"}, run_mvt},
      {{"descend", "Run steepest descent on a real-valued objective"}, run_descend},
      {{"filter", "Run an adaptive filtering experiment"}, run_filter},
  };
  std::map<CLI::App*, Command> dispatch;
  for (const auto& [info, command] : commands) {
    CLI::App* cmd = app.add_subcommand(info.first, info.second);
    add_common(cmd, flags);
    dispatch[cmd] = command;
  }
  CLI::App* descend = app.get_subcommand("descend");
  descend->add_option("--objective", flags.objective, "Real-valued family, centred at --center");
  descend->add_option("--center", flags.center, "Minimiser, e.g. 1+2i+3j+4k");
  descend->add_option("--init", flags.init, "Starting point");
  descend->add_option("--alpha", flags.alpha, "Step size");
  descend->add_option("--iters", flags.iters, "Iteration limit");
  app.get_subcommand("mvt")->add_option("--panels", flags.panels, "Simpson panels (even)");
  for (const char* name : {"mvt", "taylor"}) {
    app.get_subcommand(name)->add_option("--family", flags.families, "Family, e.g. power(3)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    const RunConfig config = resolve(chosen->get_name(), flags);
    std::ofstream file;
    if (config.output_path) {
      file.open(*config.output_path);
      if (!file) {
        std::cerr << "error: cannot open output file '" << *config.output_path << "'\n";
        return 2;
      }
    }
    std::ostringstream csv;
    const int status = dispatch.at(chosen)(config, csv, std::cerr);
    std::ostream& out = config.output_path ? static_cast<std::ostream&>(file) : std::cout;
    out << csv.str();
    out.flush();
    if (!out) {
      std::cerr << "error: failed writing CSV output\n";
      return 2;
    }
    return status;
  } catch (const ghr::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
}
