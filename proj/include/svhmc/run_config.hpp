// Copyright 2026 The svhmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SVHMC_RUN_CONFIG_HPP
#define SVHMC_RUN_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "svhmc/chain.hpp"

namespace svhmc {

/// Everything a fit needs besides the data file. Layered as
/// defaults < config file < SVHMC_OUTPUT_DIR < command-line flags.
struct RunConfig {
    ChainConfig chain;
    std::filesystem::path output_dir = "svhmc_out";
    int max_lag = 1000;
    int n_blocks = kDefaultJackknifeBlocks;
    double window_factor = kDefaultWindowFactor;
    /// False once tracked-sites was set explicitly; enables the n < 100 fallback.
    bool tracked_sites_default = true;
};

inline constexpr const char* kOutputDirEnv = "SVHMC_OUTPUT_DIR";

/// Keys accepted by apply_setting, in echo order. Underscores and dashes are
/// interchangeable on input.
const std::vector<std::string>& config_keys();

/// Sets one key; throws ContractViolation for unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Canonical `key = value` dump that apply_config_file reads back exactly.
std::string echo_config(const RunConfig& config);

/// If the default site 100 is beyond n, track ceil(n/2) instead and say so on `warn`.
void resolve_tracked_sites(RunConfig& config, Eigen::Index n, std::ostream* warn);

}  // namespace svhmc

#endif  // SVHMC_RUN_CONFIG_HPP
