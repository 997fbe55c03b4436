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

#include "svhmc/latent_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace svhmc {

void check_config(const HmcConfig& config) {
    if (!(config.step_size > 0) || !std::isfinite(config.step_size)) {
        throw ContractViolation("hmc step_size must be positive, got " + std::to_string(config.step_size));
    }
    if (config.n_leapfrog_steps < 1) {
        throw ContractViolation("hmc n_leapfrog_steps must be >= 1, got " + std::to_string(config.n_leapfrog_steps));
    }
    if (!(config.target_acceptance > 0 && config.target_acceptance < 1)) {
        throw ContractViolation("hmc target_acceptance must lie in (0, 1)");
    }
}

double stiffest_frequency(const SvParams& params) {
    const double a = 1.0 + std::abs(params.phi);
    return std::sqrt(1.0 + a * a / params.sigma_eta2);
}

double effective_step_size(const HmcConfig& config, const SvParams& params) {
    return config.relative_step ? config.step_size / stiffest_frequency(params) : config.step_size;
}

int effective_leapfrog_steps(const HmcConfig& config, const SvParams& params) {
    if (!(config.trajectory_length > 0)) return config.n_leapfrog_steps;
    const double steps = std::round(config.trajectory_length / effective_step_size(config, params));
    return static_cast<int>(std::clamp(steps, 1.0, 1.0e6));
}

void check_config(const MetropolisConfig& config) {
    if (!(config.proposal_width > 0) || !std::isfinite(config.proposal_width)) {
        throw ContractViolation("metropolis proposal_width must be positive, got " +
                                std::to_string(config.proposal_width));
    }
    if (config.sweeps_per_update < 1) {
        throw ContractViolation("metropolis sweeps_per_update must be >= 1");
    }
    if (!(config.target_acceptance > 0 && config.target_acceptance < 1)) {
        throw ContractViolation("metropolis target_acceptance must lie in (0, 1)");
    }
}

LeapfrogResult leapfrog(LatentPath path, Eigen::VectorXd momenta, const SvParams& params, const ReturnSeries& data,
                        double step_size, int n_steps) {
    integrate(Integrator::leapfrog, path, momenta, params, data, step_size, n_steps);
    return {std::move(path), std::move(momenta)};
}

void integrate(Integrator integrator, LatentPath& h, Eigen::VectorXd& p, const SvParams& params,
               const ReturnSeries& data, double step_size, int n_steps) {
    auto grad = [&](const LatentPath& x, Eigen::VectorXd& g) { potential_gradient(params, data, x, g); };
    switch (integrator) {
        case Integrator::leapfrog:
            leapfrog_inplace(h, p, grad, step_size, n_steps);
            return;
    }
    throw ContractViolation("unknown integrator");
}

HmcOutcome hmc_update(RngStream& rng, ModelState& state, const HmcConfig& config) {
    check_state(state);
    check_config(config);
    const Eigen::Index n = state.size();

    Eigen::VectorXd p(n);
    for (Eigen::Index i = 0; i < n; ++i) p[i] = rng.normal();
    const double h_start = hamiltonian(p, state);

    HmcOutcome out;
    out.step_size = effective_step_size(config, state.params);
    out.n_steps = effective_leapfrog_steps(config, state.params);
    out.proposal_path = state.path;
    double h_end = std::numeric_limits<double>::infinity();
    try {
        integrate(config.integrator, out.proposal_path, p, state.params, state.data, out.step_size, out.n_steps);
        h_end = hamiltonian(p, state.params, state.data, out.proposal_path);
    } catch (const NumericalRangeError&) {
        h_end = std::numeric_limits<double>::infinity();
    }

    if (!std::isfinite(h_end)) {
        out.divergent = true;
        out.delta_h = std::numeric_limits<double>::infinity();
        out.accepted = false;
        return out;
    }
    out.delta_h = h_end - h_start;
    out.accepted = rng.uniform() < std::exp(-out.delta_h);
    if (out.accepted) state.path = out.proposal_path;
    return out;
}

MetropolisOutcome metropolis_update(RngStream& rng, ModelState& state, const MetropolisConfig& config) {
    check_state(state);
    check_config(config);
    const Eigen::Index n = state.size();
    const double w = config.proposal_width;
    auto& h = state.path;

    MetropolisOutcome out;
    for (int sweep = 0; sweep < config.sweeps_per_update; ++sweep) {
        for (Eigen::Index t = 0; t < n; ++t) {
            const double current = h[t];
            const double candidate = current + rng.uniform(-w, w);
            ++out.proposals;
            double delta_u = 0.0;
            try {
                delta_u = site_potential(state.params, state.data, h, t, candidate) -
                          site_potential(state.params, state.data, h, t, current);
            } catch (const NumericalRangeError&) {
                ++out.divergent;
                continue;
            }
            if (rng.uniform() < std::exp(-delta_u)) {
                h[t] = candidate;
                ++out.accepted;
            }
        }
    }
    out.acceptance_rate = static_cast<double>(out.accepted) / static_cast<double>(out.proposals);
    return out;
}

double adapt_scale(double value, double observed_rate, double target_rate, double kappa) {
    return value * std::exp(kappa * (observed_rate - target_rate));
}

double tune_step_size(std::span<const std::uint8_t> recent_acceptances, const HmcConfig& config) {
    if (recent_acceptances.size() < kMinTuningWindow) {
        throw ContractViolation("step-size tuning needs a window of at least " + std::to_string(kMinTuningWindow) +
                                " outcomes, got " + std::to_string(recent_acceptances.size()));
    }
    std::size_t hits = 0;
    for (auto a : recent_acceptances) hits += a ? 1 : 0;
    const double rate = static_cast<double>(hits) / static_cast<double>(recent_acceptances.size());
    return adapt_scale(config.step_size, rate, config.target_acceptance);
}

LatentPath initial_path(const ReturnSeries& data) {
    return (data.squared().array() + 1e-8).log().min(10.0).max(-10.0).matrix();
}

}  // namespace svhmc
