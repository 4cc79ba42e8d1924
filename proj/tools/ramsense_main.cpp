#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "ramsense/scenarios.hpp"

namespace {

int threads_from_env() {
  if (const char* env = std::getenv("RAMSENSE_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noise-tailored Ramsey frequency-estimation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  int threads = 0;

  auto* run = app.add_subcommand("run", "execute a scenario from a config file");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory override");
  run->add_option("--seed", seed, "seed override");
  run->add_option("--threads", threads, "worker threads (env RAMSENSE_THREADS)");

  auto* validate = app.add_subcommand("validate", "check a config file");
  validate->add_option("--config", config_path, "config file")->required();

  app.add_subcommand("list-scenarios", "print the registered scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& [name, desc] : ramsense::scenarios::list_scenarios())
        std::cout << name << "  -  " << desc << "\n";
      return 0;
    }

    auto cfg = ramsense::scenarios::parse_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (threads >= 1)
      cfg.threads = threads;
    else if (const int t = threads_from_env(); t >= 1)
      cfg.threads = t;

    if (app.got_subcommand("validate")) {
      const auto diags = ramsense::scenarios::validate(cfg);
      bool fatal = false;
      for (const auto& d : diags) {
        const char* tag =
            d.level == ramsense::scenarios::Diagnostic::Level::kError ? "error"
            : d.level == ramsense::scenarios::Diagnostic::Level::kWarning
                ? "warning"
                : "note";
        std::cout << tag << ": " << d.message << "\n";
        fatal |= d.level == ramsense::scenarios::Diagnostic::Level::kError;
      }
      if (!fatal) std::cout << "config ok: scenario " << cfg.scenario << "\n";
      return fatal ? 2 : 0;
    }

    return ramsense::scenarios::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
