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
 * Standard stochastic volatility model
 *
 *   y_t = exp(h_t / 2) eps_t,            eps_t ~ N(0, 1)
 *   h_t = mu + phi (h_{t-1} - mu) + eta_t, eta_t ~ N(0, sigma_eta2)
 *   h_1 ~ N(mu, sigma_eta2 / (1 - phi^2))
 *
 * Everything here is a pure function of its arguments and is templated on the
 * scalar type, so the same code can be evaluated in double or long double.
 *
 * The latent-path potential U(h) is the negative log of the joint density of
 * (y, h) given theta with every h-independent constant dropped:
 *
 *   U(h) = sum_t [h_t/2 + y_t^2 exp(-h_t)/2]
 *        + (1 - phi^2)(h_1 - mu)^2 / (2 sigma_eta2)
 *        + sum_{t>=2} [h_t - mu - phi(h_{t-1} - mu)]^2 / (2 sigma_eta2)
 */

#ifndef SVHMC_MODEL_HPP
#define SVHMC_MODEL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "svhmc/errors.hpp"

namespace svhmc {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// exp(-h) is evaluated directly; below this the state is treated as diverged.
inline constexpr double kMinLogVolatility = -700.0;

/// theta = (mu, phi, sigma_eta2).
template <typename Scalar>
struct SvParamsT {
    Scalar mu{0};
    Scalar phi{0};
    Scalar sigma_eta2{1};

    bool operator==(const SvParamsT&) const = default;
};

template <typename Scalar>
bool is_valid(const SvParamsT<Scalar>& p) {
    using std::isfinite;
    return isfinite(p.mu) && isfinite(p.phi) && isfinite(p.sigma_eta2) && p.sigma_eta2 > 0 && p.phi > -1 &&
           p.phi < 1;
}

template <typename Scalar>
void check_params(const SvParamsT<Scalar>& p) {
    if (!is_valid(p)) {
        throw ContractViolation("invalid SV parameters: require sigma_eta2 > 0 and -1 < phi < 1 (mu=" +
                                std::to_string(static_cast<double>(p.mu)) +
                                ", phi=" + std::to_string(static_cast<double>(p.phi)) +
                                ", sigma_eta2=" + std::to_string(static_cast<double>(p.sigma_eta2)) + ")");
    }
}

/// Observed returns y_1..y_n, n >= 2, all finite. Keeps y^2 alongside since
/// only the squares enter the likelihood.
template <typename Scalar>
class ReturnSeriesT {
public:
    ReturnSeriesT() = default;

    explicit ReturnSeriesT(VectorX<Scalar> y) : y_(std::move(y)) {
        if (y_.size() < 2) {
            throw ContractViolation("return series needs at least 2 observations, got " +
                                    std::to_string(y_.size()));
        }
        if (!y_.allFinite()) {
            throw ContractViolation("return series contains non-finite values");
        }
        y2_ = y_.array().square().matrix();
    }

    const VectorX<Scalar>& values() const noexcept { return y_; }
    const VectorX<Scalar>& squared() const noexcept { return y2_; }
    Eigen::Index size() const noexcept { return y_.size(); }
    Scalar operator[](Eigen::Index t) const { return y_[t]; }

private:
    VectorX<Scalar> y_;
    VectorX<Scalar> y2_;
};

/// Latent log-volatility path h_t = ln sigma_t^2.
template <typename Scalar>
using LatentPathT = VectorX<Scalar>;

template <typename Scalar>
struct ModelStateT {
    SvParamsT<Scalar> params;
    LatentPathT<Scalar> path;
    ReturnSeriesT<Scalar> data;

    Eigen::Index size() const noexcept { return data.size(); }
};

template <typename Scalar>
void check_state(const ModelStateT<Scalar>& s) {
    check_params(s.params);
    if (s.path.size() != s.data.size()) {
        throw ContractViolation("latent path length " + std::to_string(s.path.size()) +
                                " does not match return series length " + std::to_string(s.data.size()));
    }
    if (!s.path.allFinite()) {
        throw ContractViolation("latent path contains non-finite values");
    }
}

using SvParams = SvParamsT<double>;
using ReturnSeries = ReturnSeriesT<double>;
using LatentPath = LatentPathT<double>;
using ModelState = ModelStateT<double>;

namespace detail {

template <typename Scalar>
void check_lengths(const ReturnSeriesT<Scalar>& data, const VectorX<Scalar>& h) {
    if (h.size() != data.size()) {
        throw ContractViolation("latent path length " + std::to_string(h.size()) +
                                " does not match return series length " + std::to_string(data.size()));
    }
}

template <typename Scalar>
void check_range(const VectorX<Scalar>& h) {
    using std::isfinite;
    for (Eigen::Index t = 0; t < h.size(); ++t) {
        if (!(h[t] >= Scalar(kMinLogVolatility)) || !isfinite(h[t])) {
            throw NumericalRangeError(static_cast<std::size_t>(t),
                                      "log-volatility out of range at site " + std::to_string(t + 1) +
                                          " (h=" + std::to_string(static_cast<double>(h[t])) + ")");
        }
    }
}

// Non-finite totals are attributed to the first site with a non-finite term.
template <typename Scalar>
[[noreturn]] void throw_non_finite(const VectorX<Scalar>& terms, const char* what) {
    using std::isfinite;
    Eigen::Index bad = 0;
    for (Eigen::Index t = 0; t < terms.size(); ++t) {
        if (!isfinite(terms[t])) {
            bad = t;
            break;
        }
    }
    throw NumericalRangeError(static_cast<std::size_t>(bad),
                              std::string(what) + " is not finite at site " + std::to_string(bad + 1));
}

}  // namespace detail

/// Potential energy U(h) of the latent path for fixed theta and data.
template <typename Scalar>
Scalar potential_energy(const SvParamsT<Scalar>& p, const ReturnSeriesT<Scalar>& data, const VectorX<Scalar>& h) {
    detail::check_lengths(data, h);
    detail::check_range(h);
    const Eigen::Index n = h.size();
    const auto x = (h.array() - p.mu);
    const VectorX<Scalar> obs = (Scalar(0.5) * h.array() + Scalar(0.5) * data.squared().array() * (-h.array()).exp());
    const Scalar ar = (x.tail(n - 1) - p.phi * x.head(n - 1)).square().sum();
    const Scalar u = obs.sum() + ((1 - p.phi * p.phi) * x[0] * x[0] + ar) / (2 * p.sigma_eta2);
    using std::isfinite;
    if (!isfinite(u)) detail::throw_non_finite(obs, "potential energy");
    return u;
}

template <typename Scalar>
Scalar potential_energy(const ModelStateT<Scalar>& s) {
    return potential_energy(s.params, s.data, s.path);
}

/// Analytic gradient dU/dh, written into `grad` (resized as needed).
template <typename Scalar>
void potential_gradient(const SvParamsT<Scalar>& p, const ReturnSeriesT<Scalar>& data, const VectorX<Scalar>& h,
                        VectorX<Scalar>& grad) {
    detail::check_lengths(data, h);
    detail::check_range(h);
    const Eigen::Index n = h.size();
    const Scalar inv_s2 = Scalar(1) / p.sigma_eta2;
    grad = (Scalar(0.5) - Scalar(0.5) * data.squared().array() * (-h.array()).exp()).matrix();

    const VectorX<Scalar> x = (h.array() - p.mu).matrix();
    const VectorX<Scalar> r = (x.tail(n - 1) - p.phi * x.head(n - 1)) * inv_s2;
    grad[0] += (1 - p.phi * p.phi) * x[0] * inv_s2;
    grad.tail(n - 1) += r;
    grad.head(n - 1) -= p.phi * r;

    if (!grad.allFinite()) detail::throw_non_finite(grad, "potential gradient");
}

template <typename Scalar>
VectorX<Scalar> potential_gradient(const SvParamsT<Scalar>& p, const ReturnSeriesT<Scalar>& data,
                                   const VectorX<Scalar>& h) {
    VectorX<Scalar> g;
    potential_gradient(p, data, h, g);
    return g;
}

template <typename Scalar>
VectorX<Scalar> potential_gradient(const ModelStateT<Scalar>& s) {
    return potential_gradient(s.params, s.data, s.path);
}

template <typename Scalar>
Scalar kinetic_energy(const VectorX<Scalar>& momenta) {
    return Scalar(0.5) * momenta.squaredNorm();
}

/// H(p, h) = |p|^2 / 2 + U(h).
template <typename Scalar>
Scalar hamiltonian(const VectorX<Scalar>& momenta, const SvParamsT<Scalar>& p, const ReturnSeriesT<Scalar>& data,
                   const VectorX<Scalar>& h) {
    if (momenta.size() != h.size()) {
        throw ContractViolation("momenta length " + std::to_string(momenta.size()) + " does not match path length " +
                                std::to_string(h.size()));
    }
    return kinetic_energy(momenta) + potential_energy(p, data, h);
}

template <typename Scalar>
Scalar hamiltonian(const VectorX<Scalar>& momenta, const ModelStateT<Scalar>& s) {
    return hamiltonian(momenta, s.params, s.data, s.path);
}

/// Every term of U that involves site t, evaluated with h_t replaced by `value`.
/// Differences of this quantity are exact differences of U under a single-site move.
template <typename Scalar>
Scalar site_potential(const SvParamsT<Scalar>& p, const ReturnSeriesT<Scalar>& data, const VectorX<Scalar>& h,
                      Eigen::Index t, Scalar value) {
    using std::exp;
    using std::isfinite;
    if (!(value >= Scalar(kMinLogVolatility)) || !isfinite(value)) {
        throw NumericalRangeError(static_cast<std::size_t>(t),
                                  "log-volatility out of range at site " + std::to_string(t + 1));
    }
    const Eigen::Index n = h.size();
    const Scalar inv_2s2 = Scalar(1) / (2 * p.sigma_eta2);
    const Scalar x = value - p.mu;
    Scalar u = Scalar(0.5) * value + Scalar(0.5) * data.squared()[t] * exp(-value);
    if (t == 0) {
        u += (1 - p.phi * p.phi) * x * x * inv_2s2;
    } else {
        const Scalar r = x - p.phi * (h[t - 1] - p.mu);
        u += r * r * inv_2s2;
    }
    if (t + 1 < n) {
        const Scalar r = (h[t + 1] - p.mu) - p.phi * x;
        u += r * r * inv_2s2;
    }
    if (!isfinite(u)) {
        throw NumericalRangeError(static_cast<std::size_t>(t),
                                  "site potential is not finite at site " + std::to_string(t + 1));
    }
    return u;
}

/// A = (1/2){(1 - phi^2)(h_1 - mu)^2 + sum_{t>=2} [h_t - mu - phi(h_{t-1} - mu)]^2}.
template <typename Scalar>
Scalar stat_A(const ModelStateT<Scalar>& s) {
    const auto& p = s.params;
    const Eigen::Index n = s.path.size();
    const VectorX<Scalar> x = (s.path.array() - p.mu).matrix();
    const Scalar ar = (x.tail(n - 1) - p.phi * x.head(n - 1)).squaredNorm();
    return Scalar(0.5) * ((1 - p.phi * p.phi) * x[0] * x[0] + ar);
}

template <typename Scalar>
struct StatsBC {
    Scalar B;
    Scalar C;
};

/// B = (1 - phi^2) + (n - 1)(1 - phi)^2,
/// C = (1 - phi^2) h_1 + (1 - phi) sum_{t>=2} (h_t - phi h_{t-1}).
template <typename Scalar>
StatsBC<Scalar> stats_B_C(const ModelStateT<Scalar>& s) {
    const Scalar phi = s.params.phi;
    const auto& h = s.path;
    const Eigen::Index n = h.size();
    const Scalar B = (1 - phi * phi) + Scalar(n - 1) * (1 - phi) * (1 - phi);
    const Scalar C = (1 - phi * phi) * h[0] + (1 - phi) * (h.tail(n - 1) - phi * h.head(n - 1)).sum();
    return {B, C};
}

template <typename Scalar>
struct StatsDE {
    Scalar D;
    Scalar E;
};

/// D = -(h_1 - mu)^2 + sum_{t>=2} (h_{t-1} - mu)^2,
/// E = sum_{t>=2} (h_t - mu)(h_{t-1} - mu).
///
/// E starts at t = 2 because there is no h_0.
template <typename Scalar>
StatsDE<Scalar> stats_D_E(const ModelStateT<Scalar>& s) {
    const Eigen::Index n = s.path.size();
    const VectorX<Scalar> x = (s.path.array() - s.params.mu).matrix();
    const Scalar D = -x[0] * x[0] + x.head(n - 1).squaredNorm();
    const Scalar E = x.tail(n - 1).dot(x.head(n - 1));
    return {D, E};
}

}  // namespace svhmc

#endif  // SVHMC_MODEL_HPP
