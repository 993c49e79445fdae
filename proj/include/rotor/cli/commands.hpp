#pragma once

#include <string>

#include "rotor/cli/config.hpp"
#include "rotor/cli/output.hpp"

namespace rotor::cli {

enum class Command { Spectrum, Edges, Winding, Mcd, Distribution };

std::string_view command_name(Command c);

/// Fills parameters the config left out with the command's defaults and
/// rejects combinations the command cannot run.
void resolve_defaults(ExperimentConfig& cfg, Command c);

void cmd_spectrum(const ExperimentConfig& cfg, OutputDirectory& out);
void cmd_edges(const ExperimentConfig& cfg, OutputDirectory& out);
void cmd_winding(const ExperimentConfig& cfg, OutputDirectory& out);
void cmd_mcd(const ExperimentConfig& cfg, OutputDirectory& out);
void cmd_distribution(const ExperimentConfig& cfg, OutputDirectory& out);

/// Resolved configuration as written into manifest.json.
nlohmann::ordered_json config_echo(const ExperimentConfig& cfg);

/// Entry point of the rotorlab executable; returns the process exit code
/// (0 ok, 2 configuration error, 3 computation error).
int run(int argc, char** argv);

} // namespace rotor::cli
