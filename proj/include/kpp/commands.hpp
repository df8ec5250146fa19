#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kpp/config.hpp"
#include "kpp/model.hpp"

namespace kpp::cli {

// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 verification
// failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

// Builds the model from [kernel] and [reaction]; errors name the offending
// field.
Model load_model(const IniConfig& cfg);

// Runs the command named in [command] name = speeds|casestudy|simulate|
// certify|verify. Returns an exit code; never throws.
int execute(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& outdir_flag, std::ostream& out, std::ostream& err);

// Same, starting from a parsed config (tests use this directly).
int execute_config(IniConfig cfg, const std::string& outdir_flag, std::ostream& out,
                   std::ostream& err);

}  // namespace kpp::cli
