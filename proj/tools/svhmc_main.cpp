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

// svhmc: simulate, ingest, fit and compare stochastic volatility chains.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "svhmc/commands.hpp"

namespace {

using svhmc::RunConfig;

// Every RunConfig key becomes a --<key> string option; values are applied
// after the config file and the environment so flags win.
struct RunFlags {
    std::string config_file;
    std::map<std::string, std::string> values;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "flat 'key = value' configuration file");
        for (const auto& key : svhmc::config_keys()) {
            cmd->add_option("--" + key, values[key], "sets " + key);
        }
    }

    RunConfig resolve(CLI::App* cmd) const {
        RunConfig cfg;
        if (!config_file.empty()) svhmc::apply_config_file(cfg, config_file);
        if (const char* env = std::getenv(svhmc::kOutputDirEnv); env && *env) cfg.output_dir = env;
        for (const auto& key : svhmc::config_keys()) {
            if (cmd->count("--" + key) > 0) svhmc::apply_setting(cfg, key, values.at(key));
        }
        return cfg;
    }
};

int fail(const std::string& kind, const std::string& message, int code = 1) {
    std::cerr << "error: " << kind << ": " << message << std::endl;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian stochastic volatility estimation with HMC or single-site Metropolis latent updates"};
    app.require_subcommand(1);

    svhmc::SimulateArgs sim;
    std::string sim_out = "returns.csv";
    auto* simulate = app.add_subcommand("simulate", "generate an artificial SV return series");
    simulate->add_option("--mu", sim.params.mu, "level of log-volatility")->capture_default_str();
    simulate->add_option("--phi", sim.params.phi, "AR(1) persistence")->capture_default_str();
    simulate->add_option("--sigma-eta2", sim.params.sigma_eta2, "log-volatility innovation variance")
        ->capture_default_str();
    simulate->add_option("--n", sim.n, "number of returns")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "returns CSV path")->capture_default_str();

    std::string ingest_in;
    std::string ingest_out = "returns.csv";
    auto* ingest = app.add_subcommand("ingest", "convert a price CSV into mean-adjusted percent returns");
    ingest->add_option("prices", ingest_in, "price CSV (date,price or price)")->required();
    ingest->add_option("--out", ingest_out, "returns CSV path")->capture_default_str();

    std::string fit_data;
    RunFlags fit_flags;
    auto* fit = app.add_subcommand("fit", "run the Gibbs/HMC (or Metropolis) sampler on a returns CSV");
    fit->add_option("data", fit_data, "returns CSV")->required();
    fit_flags.attach(fit);

    std::string cmp_data;
    std::string left_name = "hmc";
    std::string right_name = "metropolis";
    RunFlags cmp_flags;
    auto* compare = app.add_subcommand("compare", "run two latent samplers on the same data side by side");
    compare->add_option("data", cmp_data, "returns CSV")->required();
    compare->add_option("--left", left_name, "latent sampler for the first chain")->capture_default_str();
    compare->add_option("--right", right_name, "latent sampler for the second chain")->capture_default_str();
    cmp_flags.attach(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (*simulate) {
            if (sim.n < 2) return fail("usage", "--n must be at least 2", 2);
            sim.out = sim_out;
            svhmc::cmd_simulate(sim);
            std::cout << "wrote " << sim.out.string() << " and " << svhmc::truth_path_for(sim.out).string() << '\n';
        } else if (*ingest) {
            const auto n = svhmc::cmd_ingest(ingest_in, ingest_out);
            std::cout << "wrote " << n << " returns to " << ingest_out << '\n';
        } else if (*fit) {
            const auto cfg = fit_flags.resolve(fit);
            const auto report = svhmc::cmd_fit(fit_data, cfg, &std::cerr);
            std::cout << svhmc::format_summary_table(report.reports);
            std::cout << "outputs in " << report.config.output_dir.string() << '\n';
        } else if (*compare) {
            auto left = cmp_flags.resolve(compare);
            auto right = left;
            left.chain.latent_sampler = svhmc::parse_latent_sampler(left_name);
            right.chain.latent_sampler = svhmc::parse_latent_sampler(right_name);
            svhmc::cmd_compare(cmp_data, left, right, left.output_dir, &std::cerr);
            std::cout << "outputs in " << left.output_dir.string() << '\n';
        }
    } catch (const svhmc::Error& e) {
        return fail(e.kind(), e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
