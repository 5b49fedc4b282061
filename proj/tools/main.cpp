#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <string>

#include "crowsim/commands.hpp"

// crowsim: quantum-light transport through disordered coupled-resonator
// waveguides. Each subcommand reproduces one data set; see README.md.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure beyond
// the 1% solver-exclusion budget, 1 anything else.

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::string convention;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int parallel = -1;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "strict JSON config file");
  cmd->add_option("--out", opt.out_dir, "output directory (default: out)");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", opt.seed, "master seed override")
      ->each([&opt](const std::string&) { opt.seed_set = true; });
  cmd->add_option("--parallel", opt.parallel, "worker thread limit (0 = auto)");
  cmd->add_option("--length-convention", opt.convention,
                  "interpret lattice lengths as cells or sites")
      ->check(CLI::IsMember({"cells", "sites"}));
}

crowsim::RunConfig make_config(const CliOptions& opt) {
  crowsim::RunConfig config = opt.config_path.empty()
                                  ? crowsim::RunConfig{}
                                  : crowsim::load_config(opt.config_path);
  if (!opt.out_dir.empty()) config.out_dir = opt.out_dir;
  if (!opt.format.empty()) config.format = opt.format;
  if (opt.seed_set) config.master_seed = opt.seed;
  if (opt.parallel >= 0) config.parallelism = opt.parallel;
  if (!opt.convention.empty())
    config.convention = opt.convention == "cells"
                            ? crowsim::LengthConvention::Cells
                            : crowsim::LengthConvention::Sites;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-light transport in disordered resonator waveguides"};
  app.require_subcommand(1);

  CliOptions opt;
  using Command = std::function<crowsim::CommandResult(const crowsim::RunConfig&)>;
  Command selected;

  const std::pair<const char*, Command> commands[] = {
      {"band", crowsim::cmd_band},
      {"transmit", crowsim::cmd_transmit},
      {"delay", crowsim::cmd_delay},
      {"hom", crowsim::cmd_hom},
      {"noon", crowsim::cmd_noon},
      {"sweep-disorder", crowsim::cmd_sweep_disorder},
      {"sweep-length", crowsim::cmd_sweep_length},
  };
  const char* descriptions[] = {
      "band structure table",
      "transmission/reflection spectra and intensity profiles",
      "group-delay spectra and delay histogram",
      "two-photon coincidence vs. controlled delay",
      "N00N coincidence histogram, purity and entanglement entropy",
      "transmission at band center vs. disorder strength",
      "minimum coincidence vs. lattice length",
  };
  int idx = 0;
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, descriptions[idx++]);
    add_common(sub, opt);
    sub->callback([&selected, fn = fn] { selected = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const crowsim::RunConfig config = make_config(opt);
    const crowsim::CommandResult result = selected(config);
    for (const auto& f : result.files)
      std::printf("wrote %s\n", f.string().c_str());
    return 0;
  } catch (const crowsim::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const crowsim::NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
