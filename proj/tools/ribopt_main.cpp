#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiment.hpp"
#include "ribopt/error.hpp"

namespace {

struct Invocation {
  std::string config_path;
  std::vector<std::string> overrides;
};

ribopt::KeyValueConfig build_config(const Invocation& inv) {
  auto cfg = inv.config_path.empty() ? ribopt::KeyValueConfig{} : ribopt::KeyValueConfig::parse_file(inv.config_path);
  for (const auto& kv : inv.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ribopt::InvalidInput("override '" + kv + "' is not key=value");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet eigenvalues and maximum distance for domains cut by segment networks"};
  app.require_subcommand(1);
  std::map<std::string, Invocation> invocations;
  for (const auto& name : ribopt::cli::kCommands) {
    auto* sub = app.add_subcommand(name, ribopt::cli::summarize(name));
    auto& inv = invocations[name];
    sub->add_option("--config,-c", inv.config_path, "key=value configuration file")->check(CLI::ExistingFile);
    sub->add_option("overrides", inv.overrides, "key=value entries overriding the configuration file");
    sub->footer(ribopt::cli::describe_outputs(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = build_config(invocations[command]);
    ribopt::cli::run(command, cfg, std::cout, std::cerr);
    return 0;
  } catch (const ribopt::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ribopt::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  }
}
