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

/*
 * Latent-path updates for fixed theta.
 *
 * hmc_update moves all of h at once: momenta are refreshed from N(0, I), the
 * trajectory is integrated with leapfrog on U(h), and the end point is kept
 * with probability min{1, exp(-dH)}. metropolis_update is the local baseline:
 * one uniform random-walk proposal per site, sites visited in order.
 */

#ifndef SVHMC_LATENT_SAMPLER_HPP
#define SVHMC_LATENT_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "svhmc/model.hpp"
#include "svhmc/rng.hpp"

namespace svhmc {

enum class Integrator {
    leapfrog,
};

struct HmcConfig {
    /// Leapfrog step. With `relative_step` it is measured in units of
    /// 1/omega(theta), see effective_step_size.
    double step_size = 0.5;
    int n_leapfrog_steps = 10;
    /// When positive, the number of leapfrog steps follows
    /// round(trajectory_length / effective step) and n_leapfrog_steps is ignored.
    double trajectory_length = 1.0;
    bool relative_step = true;
    double target_acceptance = 0.5;
    bool tune_during_burn_in = true;
    Integrator integrator = Integrator::leapfrog;
};

void check_config(const HmcConfig& config);

/// Highest oscillation frequency of the latent dynamics for fixed theta,
/// omega^2 = 1 + (1 + |phi|)^2 / sigma_eta2: the AR(1) prior's stiffest mode
/// plus an order-one allowance for the observation term.
double stiffest_frequency(const SvParams& params);

/// Leapfrog step actually used for this theta: step_size / omega(theta) when
/// `relative_step`, else step_size itself.
double effective_step_size(const HmcConfig& config, const SvParams& params);

/// Leapfrog steps per trajectory for this theta.
int effective_leapfrog_steps(const HmcConfig& config, const SvParams& params);

struct MetropolisConfig {
    double proposal_width = 0.5;
    int sweeps_per_update = 1;
    double target_acceptance = 0.5;
    bool tune_during_burn_in = true;
};

void check_config(const MetropolisConfig& config);

struct HmcOutcome {
    bool accepted = false;
    /// H(p', h') - H(p, h); +infinity when the trajectory diverged.
    double delta_h = 0.0;
    bool divergent = false;
    double step_size = 0.0;  ///< effective leapfrog step used
    int n_steps = 0;
    LatentPath proposal_path;
};

struct MetropolisOutcome {
    double acceptance_rate = 0.0;
    std::size_t proposals = 0;
    std::size_t accepted = 0;
    /// Site proposals rejected because the local potential left the finite range.
    std::size_t divergent = 0;
};

/// In-place leapfrog: `n_steps` of half-kick, drift, half-kick. `gradient` is
/// called as gradient(const LatentPath& h, Eigen::VectorXd& out) and may throw
/// NumericalRangeError, which propagates.
template <typename GradientFn>
void leapfrog_inplace(LatentPath& h, Eigen::VectorXd& p, GradientFn&& gradient, double step_size, int n_steps) {
    if (h.size() != p.size()) {
        throw ContractViolation("leapfrog: path and momenta lengths differ");
    }
    if (!(step_size > 0) || n_steps < 1) {
        throw ContractViolation("leapfrog: need step_size > 0 and n_steps >= 1");
    }
    Eigen::VectorXd g(h.size());
    gradient(h, g);
    p.noalias() -= (0.5 * step_size) * g;
    for (int s = 0; s < n_steps; ++s) {
        h.noalias() += step_size * p;
        gradient(h, g);
        const double kick = (s + 1 == n_steps) ? 0.5 * step_size : step_size;
        p.noalias() -= kick * g;
    }
}

struct LeapfrogResult {
    LatentPath path;
    Eigen::VectorXd momenta;
};

LeapfrogResult leapfrog(LatentPath path, Eigen::VectorXd momenta, const SvParams& params, const ReturnSeries& data,
                        double step_size, int n_steps);

/// Runs the configured integrator on the SV potential.
void integrate(Integrator integrator, LatentPath& h, Eigen::VectorXd& p, const SvParams& params,
               const ReturnSeries& data, double step_size, int n_steps);

/// One HMC transition. On acceptance the proposal is installed in `state.path`;
/// on rejection `state.path` is left untouched.
HmcOutcome hmc_update(RngStream& rng, ModelState& state, const HmcConfig& config);

/// `sweeps_per_update` single-site sweeps over t = 1..n.
MetropolisOutcome metropolis_update(RngStream& rng, ModelState& state, const MetropolisConfig& config);

/// Multiplicative adaptation: value * exp(kappa * (observed - target)).
double adapt_scale(double value, double observed_rate, double target_rate, double kappa = 1.0);

inline constexpr std::size_t kMinTuningWindow = 50;

/// New step size from a window of at least kMinTuningWindow accept/reject outcomes.
double tune_step_size(std::span<const std::uint8_t> recent_acceptances, const HmcConfig& config);

/// Starting path: ln(y_t^2 + 1e-8) clamped to [-10, 10].
LatentPath initial_path(const ReturnSeries& data);

}  // namespace svhmc

#endif  // SVHMC_LATENT_SAMPLER_HPP
