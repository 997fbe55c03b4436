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

#ifndef SVHMC_PARAM_SAMPLER_HPP
#define SVHMC_PARAM_SAMPLER_HPP

#include "svhmc/model.hpp"
#include "svhmc/rng.hpp"

namespace svhmc {

/// Priors: pi(sigma_eta2) ~ 1/sigma_eta2, flat in mu and phi. None of the
/// samplers below modify the state; the caller installs the draw.

/// Draw x with density proportional to x^(-shape-1) exp(-scale/x).
double sample_inverse_gamma(RngStream& rng, double shape, double scale);

/// sigma_eta2 | h, mu, phi ~ InvGamma(n/2, A). Throws DegeneratePosteriorError when A == 0.
double sample_sigma_eta2(RngStream& rng, const ModelState& state);

/// mu | h, phi, sigma_eta2 ~ N(C/B, sigma_eta2/B).
double sample_mu(RngStream& rng, const ModelState& state);

struct PhiUpdateOutcome {
    double phi = 0.0;       ///< value after the update (the old one on rejection)
    double proposed = 0.0;  ///< candidate drawn from N(E/D, sigma_eta2/D)
    bool accepted = false;
    double mh_probability = 0.0;
};

/// Acceptance probability min{sqrt((1 - phi_new^2)/(1 - phi^2)), 1}; zero
/// when the candidate lies outside (-1, 1).
double phi_acceptance_probability(double phi_current, double phi_proposed);

/// Independence Metropolis-Hastings step for phi with the Gaussian part of
/// its conditional as the proposal. Throws ProposalUndefinedError when D <= 0.
PhiUpdateOutcome sample_phi(RngStream& rng, const ModelState& state);

}  // namespace svhmc

#endif  // SVHMC_PARAM_SAMPLER_HPP
