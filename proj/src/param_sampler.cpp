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

#include "svhmc/param_sampler.hpp"

#include <cmath>
#include <string>

namespace svhmc {

double sample_inverse_gamma(RngStream& rng, double shape, double scale) {
    if (!(shape > 0) || !(scale > 0) || !std::isfinite(shape) || !std::isfinite(scale)) {
        throw ContractViolation("inverse gamma needs shape > 0 and scale > 0 (shape=" + std::to_string(shape) +
                                ", scale=" + std::to_string(scale) + ")");
    }
    // 1/X with X ~ Gamma(shape, rate = scale).
    double g = 0.0;
    do {
        g = rng.gamma(shape);
    } while (g <= 0.0);
    return scale / g;
}

double sample_sigma_eta2(RngStream& rng, const ModelState& state) {
    check_state(state);
    const double a = stat_A(state);
    if (!(a > 0)) {
        throw DegeneratePosteriorError("sigma_eta2 conditional is degenerate: A = 0 (every h_t equals mu)");
    }
    return sample_inverse_gamma(rng, 0.5 * static_cast<double>(state.size()), a);
}

double sample_mu(RngStream& rng, const ModelState& state) {
    check_state(state);
    const auto [b, c] = stats_B_C(state);
    if (!(b > 0)) {
        throw ContractViolation("mu conditional needs B > 0, got B=" + std::to_string(b));
    }
    return rng.normal(c / b, std::sqrt(state.params.sigma_eta2 / b));
}

double phi_acceptance_probability(double phi_current, double phi_proposed) {
    if (!(phi_proposed > -1.0 && phi_proposed < 1.0)) return 0.0;
    const double ratio = (1.0 - phi_proposed * phi_proposed) / (1.0 - phi_current * phi_current);
    return ratio >= 1.0 ? 1.0 : std::sqrt(ratio);
}

PhiUpdateOutcome sample_phi(RngStream& rng, const ModelState& state) {
    check_state(state);
    const auto [d, e] = stats_D_E(state);
    if (!(d > 0)) {
        throw ProposalUndefinedError("phi proposal variance sigma_eta2/D is undefined for D=" + std::to_string(d));
    }
    const double current = state.params.phi;

    PhiUpdateOutcome out;
    out.proposed = rng.normal(e / d, std::sqrt(state.params.sigma_eta2 / d));
    out.mh_probability = phi_acceptance_probability(current, out.proposed);
    // Out-of-range candidates are rejected without consuming a uniform.
    out.accepted = out.mh_probability > 0.0 && (out.mh_probability >= 1.0 || rng.uniform() < out.mh_probability);
    out.phi = out.accepted ? out.proposed : current;
    return out;
}

}  // namespace svhmc
