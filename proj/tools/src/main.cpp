// bergman-jet: jet metrics, weighted Bergman Gram matrices, and minimal L2
// jet extensions on model domains, with CSV/JSON reports.

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

using namespace bjet;
using namespace bjet::cli;

int main(int argc, char** argv) {
  CLI::App app{
      "bergman-jet: jet-bundle metrics, Bergman Gram matrices, and minimal L2 jet "
      "extensions on model domains.\nThread count: BERGMAN_JET_THREADS (default: all "
      "cores); results do not depend on it."};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  int which = 0;

  auto add = [&](const char* name, const char* desc, int id) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (default: cwd)");
    sub->callback([&which, id] { which = id; });
    return sub;
  };
  add("metric", "shell-limit jet metric against the closed form", 1);
  add("extend", "minimal L2 jet extension and the optimal-bound verdict", 2);
  add("sweep", "dual-norm sweep over (s, q) with convexity/monotonicity checks", 3);
  add("lemmas", "1-D kernel/averaging and shell-comparison check battery", 4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const RunConfig cfg = load_config_file(config_path);
    switch (which) {
      case 1:
        return cmd_metric(cfg, out_dir);
      case 2:
        return cmd_extend(cfg, out_dir);
      case 3:
        return cmd_sweep(cfg, out_dir);
      case 4:
        return cmd_lemmas(cfg, out_dir);
    }
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRange;
  } catch (const ConditioningError& e) {
    std::cerr << "error: " << e.what() << " (pivot " << e.pivot << ")\n";
    return kExitConditioning;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConditioning;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
