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

#include "svhmc/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "svhmc/data.hpp"

namespace svhmc {

namespace {

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& value) {
    Int out{};
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) throw ContractViolation("bad integer for " + key + ": '" + value + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) throw ContractViolation("bad number for " + key + ": '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ContractViolation("bad boolean for " + key + ": '" + value + "'");
}

std::vector<long> parse_sites(const std::string& key, const std::string& value) {
    std::vector<long> sites;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trimmed(item);
        if (!item.empty()) sites.push_back(parse_int<long>(key, item));
    }
    if (sites.empty()) throw ContractViolation("tracked-sites needs at least one site");
    return sites;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "seed",
        "n-burn-in",
        "n-record",
        "thin",
        "latent-sampler",
        "step-size",
        "n-leapfrog-steps",
        "trajectory-length",
        "relative-step",
        "target-acceptance",
        "tune-during-burn-in",
        "proposal-width",
        "sweeps-per-update",
        "metropolis-target-acceptance",
        "metropolis-tune-during-burn-in",
        "tuning-window",
        "tracked-sites",
        "initial-mu",
        "initial-phi",
        "initial-sigma-eta2",
        "output-dir",
        "max-lag",
        "n-blocks",
        "window-factor",
        "log-every",
    };
    return keys;
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = normalize_key(trimmed(raw_key));
    const std::string value = trimmed(raw_value);
    auto& c = config.chain;
    if (key == "seed") c.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "n-burn-in") c.n_burn_in = parse_int<long>(key, value);
    else if (key == "n-record") c.n_record = parse_int<long>(key, value);
    else if (key == "thin") c.thin = parse_int<long>(key, value);
    else if (key == "latent-sampler") c.latent_sampler = parse_latent_sampler(value);
    else if (key == "step-size") c.hmc.step_size = parse_real(key, value);
    else if (key == "n-leapfrog-steps") c.hmc.n_leapfrog_steps = parse_int<int>(key, value);
    else if (key == "trajectory-length") c.hmc.trajectory_length = parse_real(key, value);
    else if (key == "relative-step") c.hmc.relative_step = parse_bool(key, value);
    else if (key == "target-acceptance") c.hmc.target_acceptance = parse_real(key, value);
    else if (key == "tune-during-burn-in") c.hmc.tune_during_burn_in = parse_bool(key, value);
    else if (key == "proposal-width") c.metropolis.proposal_width = parse_real(key, value);
    else if (key == "sweeps-per-update") c.metropolis.sweeps_per_update = parse_int<int>(key, value);
    else if (key == "metropolis-target-acceptance") c.metropolis.target_acceptance = parse_real(key, value);
    else if (key == "metropolis-tune-during-burn-in") c.metropolis.tune_during_burn_in = parse_bool(key, value);
    else if (key == "tuning-window") c.tuning_window = parse_int<long>(key, value);
    else if (key == "tracked-sites") {
        c.tracked_sites = parse_sites(key, value);
        config.tracked_sites_default = false;
    } else if (key == "initial-mu") c.initial_params.mu = parse_real(key, value);
    else if (key == "initial-phi") c.initial_params.phi = parse_real(key, value);
    else if (key == "initial-sigma-eta2") c.initial_params.sigma_eta2 = parse_real(key, value);
    else if (key == "output-dir") config.output_dir = value;
    else if (key == "max-lag") config.max_lag = parse_int<int>(key, value);
    else if (key == "n-blocks") config.n_blocks = parse_int<int>(key, value);
    else if (key == "window-factor") config.window_factor = parse_real(key, value);
    else if (key == "log-every") c.log_every = parse_int<long>(key, value);
    else throw ContractViolation("unknown configuration key '" + raw_key + "'");
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
        out.emplace_back(trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)));
    }
    return out;
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    for (const auto& [k, v] : parse_config_text(in)) apply_setting(config, k, v);
}

std::string echo_config(const RunConfig& config) {
    const auto& c = config.chain;
    std::ostringstream os;
    std::string sites;
    for (std::size_t i = 0; i < c.tracked_sites.size(); ++i) sites += (i ? "," : "") + std::to_string(c.tracked_sites[i]);
    os << "seed = " << c.seed << '\n'
       << "n-burn-in = " << c.n_burn_in << '\n'
       << "n-record = " << c.n_record << '\n'
       << "thin = " << c.thin << '\n'
       << "latent-sampler = " << to_string(c.latent_sampler) << '\n'
       << "step-size = " << format_double(c.hmc.step_size) << '\n'
       << "n-leapfrog-steps = " << c.hmc.n_leapfrog_steps << '\n'
       << "trajectory-length = " << format_double(c.hmc.trajectory_length) << '\n'
       << "relative-step = " << bool_text(c.hmc.relative_step) << '\n'
       << "target-acceptance = " << format_double(c.hmc.target_acceptance) << '\n'
       << "tune-during-burn-in = " << bool_text(c.hmc.tune_during_burn_in) << '\n'
       << "proposal-width = " << format_double(c.metropolis.proposal_width) << '\n'
       << "sweeps-per-update = " << c.metropolis.sweeps_per_update << '\n'
       << "metropolis-target-acceptance = " << format_double(c.metropolis.target_acceptance) << '\n'
       << "metropolis-tune-during-burn-in = " << bool_text(c.metropolis.tune_during_burn_in) << '\n'
       << "tuning-window = " << c.tuning_window << '\n'
       << "tracked-sites = " << sites << '\n'
       << "initial-mu = " << format_double(c.initial_params.mu) << '\n'
       << "initial-phi = " << format_double(c.initial_params.phi) << '\n'
       << "initial-sigma-eta2 = " << format_double(c.initial_params.sigma_eta2) << '\n'
       << "output-dir = " << config.output_dir.string() << '\n'
       << "max-lag = " << config.max_lag << '\n'
       << "n-blocks = " << config.n_blocks << '\n'
       << "window-factor = " << format_double(config.window_factor) << '\n'
       << "log-every = " << c.log_every << '\n';
    return os.str();
}

void resolve_tracked_sites(RunConfig& config, Eigen::Index n, std::ostream* warn) {
    if (!config.tracked_sites_default) return;
    for (auto& site : config.chain.tracked_sites) {
        if (site > n) {
            const long fallback = static_cast<long>((n + 1) / 2);
            if (warn) {
                *warn << "warning: tracked site " << site << " exceeds n=" << n << "; tracking site " << fallback
                      << " instead\n";
            }
            site = fallback;
        }
    }
}

}  // namespace svhmc
