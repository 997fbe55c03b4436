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

#ifndef SVHMC_CHAIN_HPP
#define SVHMC_CHAIN_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "svhmc/diagnostics.hpp"
#include "svhmc/latent_sampler.hpp"
#include "svhmc/model.hpp"
#include "svhmc/rng.hpp"

namespace svhmc {

enum class LatentSamplerKind { hmc, metropolis };

std::string to_string(LatentSamplerKind kind);
LatentSamplerKind parse_latent_sampler(const std::string& name);

struct ChainConfig {
    std::uint64_t seed = 1;
    long n_burn_in = 10000;
    long n_record = 200000;
    long thin = 1;
    LatentSamplerKind latent_sampler = LatentSamplerKind::hmc;
    HmcConfig hmc;
    MetropolisConfig metropolis;
    /// 1-based latent sites recorded every kept sweep.
    std::vector<long> tracked_sites{100};
    SvParams initial_params{0.0, 0.5, 1.0};
    /// Latent updates per adaptation step during burn-in.
    long tuning_window = 200;
    /// Progress line every this many sweeps (0 disables).
    long log_every = 10000;
};

void check_config(const ChainConfig& config, Eigen::Index n);

/// Bookkeeping for one latent update or one parameter update.
struct RateCounter {
    std::size_t accepted = 0;
    std::size_t total = 0;
    double rate() const { return total ? static_cast<double>(accepted) / static_cast<double>(total) : 0.0; }
};

struct ChainResult {
    /// mu, phi, sigma_eta2, then h_<site> for every tracked site.
    std::vector<ChainTrace> traces;
    /// dH of every HMC proposal made while recording (diverged ones excluded).
    std::vector<double> delta_h;

    RateCounter latent_burn_in;  ///< HMC trajectories or Metropolis site proposals
    RateCounter latent_record;
    RateCounter phi;
    std::size_t divergent = 0;
    std::size_t phi_proposal_undefined = 0;
    std::size_t sigma_degenerate = 0;

    HmcConfig final_hmc;
    MetropolisConfig final_metropolis;
    ModelState final_state;
};

/// Sweep order: sigma_eta2, mu, phi, then the latent path.
class GibbsSampler {
public:
    GibbsSampler(const ReturnSeries& data, const ChainConfig& config);

    /// One full sweep. Returns the latent acceptance count/proposal count pair.
    RateCounter sweep();

    ModelState& state() noexcept { return state_; }
    const ModelState& state() const noexcept { return state_; }
    RngStream& rng() noexcept { return rng_; }
    HmcConfig& hmc() noexcept { return hmc_; }
    MetropolisConfig& metropolis() noexcept { return metropolis_; }

    const RateCounter& phi_counter() const noexcept { return phi_; }
    std::size_t divergent() const noexcept { return divergent_; }
    std::size_t phi_proposal_undefined() const noexcept { return phi_undefined_; }
    std::size_t sigma_degenerate() const noexcept { return sigma_degenerate_; }
    /// dH of the most recent HMC proposal (infinity if it diverged).
    double last_delta_h() const noexcept { return last_delta_h_; }

private:
    void update_parameters();

    ChainConfig config_;
    RngStream rng_;
    ModelState state_;
    HmcConfig hmc_;
    MetropolisConfig metropolis_;
    RateCounter phi_;
    std::size_t divergent_ = 0;
    std::size_t phi_undefined_ = 0;
    std::size_t sigma_degenerate_ = 0;
    double last_delta_h_ = 0.0;
};

/// Receives one progress line (no trailing newline) every `log_every` sweeps.
using ProgressSink = std::function<void(const std::string&)>;

/// Burn-in (with adaptation when enabled), then n_record kept sweeps.
ChainResult run_chain(const ReturnSeries& data, const ChainConfig& config, const ProgressSink& progress = {});

}  // namespace svhmc

#endif  // SVHMC_CHAIN_HPP
