#pragma once

#include <filesystem>
#include <string>

#include "mecrl/env.hpp"
#include "mecrl/trainer_config.hpp"

namespace mecrl::scenario {

struct Scenario {
  env::EnvConfig env;
  train::TrainConfig train;
};

// Parses a scenario document. Every section and key is optional (defaults
// apply); unknown keys are rejected with the offending path in the message.
Scenario from_json_text(const std::string& text);
Scenario load(const std::filesystem::path& file);

std::string to_json_text(const Scenario& sc);

}  // namespace mecrl::scenario
