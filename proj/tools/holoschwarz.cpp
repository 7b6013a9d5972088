#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/run.hpp"

namespace hs = holoschwarz;

int main(int argc, char** argv) {
  CLI::App app{"Univalence criteria for holomorphic curves: scans, profiles and oracles"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  long long seed = -1;
  bool list_keys = false;
  app.add_option("-c,--config", config_path, "Config file with section.key = value lines");
  app.add_option("-s,--set", overrides, "Extra section.key=value line (repeatable)");
  app.add_option("-o,--output", output_dir, "Directory for CSV artifacts");
  app.add_option("--seed", seed, "Seed (overrides run.seed)");
  app.add_flag("--list-keys", list_keys, "Print every config key with its default");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check-criterion", "Scan the univalence criterion over a polar grid"},
      {"extremal-profile", "Validate a weight and integrate its extremal functions"},
      {"covering", "Compare the covering bound with mesh geodesic distances"},
      {"verify-identities", "Run the cross-identity suite"},
      {"injectivity", "Search for image collisions"},
      {"reproduce-example", "Tables for the two worked examples"},
      {"boundary", "Critical points, radial convexity and boundary trace"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hs::exit_code::kConfigError;
  }

  if (list_keys) {
    std::cout << hs::config_reference();
    return 0;
  }

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "config error: cannot read " << config_path << '\n';
      return hs::exit_code::kConfigError;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    if (!text.empty() && text.back() != '\n') text += '\n';
  }
  for (const auto& line : overrides) text += line + '\n';

  hs::RunConfig cfg;
  try {
    cfg = hs::parse_config(text);
    if (!app.get_subcommands().empty()) cfg.command = hs::parse_command(app.get_subcommands().front()->get_name());
  } catch (const hs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return hs::exit_code::kConfigError;
  }
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);

  const hs::RunReport rep = hs::run(cfg);
  std::cout << rep.summary;
  for (const auto& a : rep.artifacts) std::cout << "artifact=" << a << '\n';
  return rep.exit_code;
}
