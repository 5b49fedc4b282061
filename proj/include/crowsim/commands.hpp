#pragma once

#include <filesystem>
#include <vector>

#include "crowsim/config.hpp"

// One subcommand per reportable data set. Every command computes first and
// writes afterwards (no partial outputs on compute failure), emits its
// tables in the configured format plus a JSON manifest echoing the
// scientific configuration and the seed.

namespace crowsim {

inline constexpr char kArtifactName[] = "crowsim";
inline constexpr char kArtifactVersion[] = "0.1.0";

struct CommandResult {
  std::vector<std::filesystem::path> files;
};

CommandResult cmd_band(const RunConfig& config);
CommandResult cmd_transmit(const RunConfig& config);
CommandResult cmd_delay(const RunConfig& config);
CommandResult cmd_hom(const RunConfig& config);
CommandResult cmd_noon(const RunConfig& config);
CommandResult cmd_sweep_disorder(const RunConfig& config);
CommandResult cmd_sweep_length(const RunConfig& config);

}  // namespace crowsim
