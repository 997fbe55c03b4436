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

#include "svhmc/chain.hpp"

#include <cmath>
#include <limits>

#include "svhmc/param_sampler.hpp"

namespace svhmc {

std::string to_string(LatentSamplerKind kind) {
    return kind == LatentSamplerKind::hmc ? "hmc" : "metropolis";
}

LatentSamplerKind parse_latent_sampler(const std::string& name) {
    if (name == "hmc") return LatentSamplerKind::hmc;
    if (name == "metropolis") return LatentSamplerKind::metropolis;
    throw ContractViolation("unknown latent sampler '" + name + "' (expected hmc or metropolis)");
}

void check_config(const ChainConfig& config, Eigen::Index n) {
    if (config.n_burn_in < 0) throw ContractViolation("n_burn_in must be >= 0");
    if (config.n_record < 1) throw ContractViolation("n_record must be >= 1");
    if (config.thin < 1) throw ContractViolation("thin must be >= 1");
    if (config.tuning_window < static_cast<long>(kMinTuningWindow)) {
        throw ContractViolation("tuning_window must be >= " + std::to_string(kMinTuningWindow));
    }
    for (long site : config.tracked_sites) {
        if (site < 1 || site > n) {
            throw ContractViolation("tracked site " + std::to_string(site) + " outside [1, " + std::to_string(n) +
                                    "]");
        }
    }
    check_params(config.initial_params);
    check_config(config.hmc);
    check_config(config.metropolis);
}

GibbsSampler::GibbsSampler(const ReturnSeries& data, const ChainConfig& config)
    : config_(config),
      rng_(config.seed),
      state_{config.initial_params, initial_path(data), data},
      hmc_(config.hmc),
      metropolis_(config.metropolis) {
    check_config(config_, data.size());
}

void GibbsSampler::update_parameters() {
    try {
        state_.params.sigma_eta2 = sample_sigma_eta2(rng_, state_);
    } catch (const DegeneratePosteriorError&) {
        ++sigma_degenerate_;
    }
    state_.params.mu = sample_mu(rng_, state_);
    try {
        const auto outcome = sample_phi(rng_, state_);
        state_.params.phi = outcome.phi;
        ++phi_.total;
        if (outcome.accepted) ++phi_.accepted;
    } catch (const ProposalUndefinedError&) {
        ++phi_undefined_;
        ++phi_.total;
    }
    check_params(state_.params);
}

RateCounter GibbsSampler::sweep() {
    update_parameters();
    RateCounter latent;
    if (config_.latent_sampler == LatentSamplerKind::hmc) {
        const auto outcome = hmc_update(rng_, state_, hmc_);
        last_delta_h_ = outcome.delta_h;
        if (outcome.divergent) ++divergent_;
        latent.total = 1;
        latent.accepted = outcome.accepted ? 1 : 0;
    } else {
        const auto outcome = metropolis_update(rng_, state_, metropolis_);
        divergent_ += outcome.divergent;
        latent.total = outcome.proposals;
        latent.accepted = outcome.accepted;
    }
    return latent;
}

ChainResult run_chain(const ReturnSeries& data, const ChainConfig& config, const ProgressSink& progress) {
    GibbsSampler sampler(data, config);
    const bool is_hmc = config.latent_sampler == LatentSamplerKind::hmc;
    const bool tune = is_hmc ? config.hmc.tune_during_burn_in : config.metropolis.tune_during_burn_in;
    const long total_sweeps = config.n_burn_in + config.n_record * config.thin;

    ChainResult result;
    std::vector<std::uint8_t> window;
    RateCounter site_window;
    long window_updates = 0;

    auto report = [&](long sweep) {
        if (progress && config.log_every > 0 && (sweep + 1) % config.log_every == 0) {
            progress("[" + to_string(config.latent_sampler) + "] sweep " + std::to_string(sweep + 1) + "/" +
                     std::to_string(total_sweeps));
        }
    };

    for (long s = 0; s < config.n_burn_in; ++s) {
        const auto latent = sampler.sweep();
        result.latent_burn_in.accepted += latent.accepted;
        result.latent_burn_in.total += latent.total;
        if (tune) {
            ++window_updates;
            if (is_hmc) {
                window.push_back(static_cast<std::uint8_t>(latent.accepted));
            } else {
                site_window.accepted += latent.accepted;
                site_window.total += latent.total;
            }
            if (window_updates >= config.tuning_window) {
                if (is_hmc) {
                    auto& hmc = sampler.hmc();
                    hmc.step_size = tune_step_size(window, hmc);
                } else {
                    auto& m = sampler.metropolis();
                    m.proposal_width = adapt_scale(m.proposal_width, site_window.rate(), m.target_acceptance);
                }
                window.clear();
                site_window = {};
                window_updates = 0;
            }
        }
        report(s);
    }

    const Eigen::Index n_keep = config.n_record;
    const std::size_t n_sites = config.tracked_sites.size();
    result.traces.resize(3 + n_sites);
    result.traces[0].name = "mu";
    result.traces[1].name = "phi";
    result.traces[2].name = "sigma_eta2";
    for (std::size_t k = 0; k < n_sites; ++k) result.traces[3 + k].name = "h_" + std::to_string(config.tracked_sites[k]);
    for (auto& t : result.traces) t.values.resize(n_keep);
    if (is_hmc) result.delta_h.reserve(static_cast<std::size_t>(config.n_record * config.thin));

    Eigen::Index kept = 0;
    for (long s = 0; s < config.n_record * config.thin; ++s) {
        const auto latent = sampler.sweep();
        result.latent_record.accepted += latent.accepted;
        result.latent_record.total += latent.total;
        if (is_hmc && std::isfinite(sampler.last_delta_h())) result.delta_h.push_back(sampler.last_delta_h());
        if ((s + 1) % config.thin == 0) {
            const auto& st = sampler.state();
            result.traces[0].values[kept] = st.params.mu;
            result.traces[1].values[kept] = st.params.phi;
            result.traces[2].values[kept] = st.params.sigma_eta2;
            for (std::size_t k = 0; k < n_sites; ++k) {
                result.traces[3 + k].values[kept] = st.path[config.tracked_sites[k] - 1];
            }
            ++kept;
        }
        report(config.n_burn_in + s);
    }

    result.phi = sampler.phi_counter();
    result.divergent = sampler.divergent();
    result.phi_proposal_undefined = sampler.phi_proposal_undefined();
    result.sigma_degenerate = sampler.sigma_degenerate();
    result.final_hmc = sampler.hmc();
    result.final_metropolis = sampler.metropolis();
    result.final_state = sampler.state();
    return result;
}

}  // namespace svhmc
