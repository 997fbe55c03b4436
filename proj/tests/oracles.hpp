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

// Test-only reference computations. Nothing here calls into the library's
// model or sampler code: plain loops, long double sums and grid quadrature.

#ifndef SVHMC_TESTS_ORACLES_HPP
#define SVHMC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

struct Theta {
    double mu;
    double phi;
    double sigma_eta2;
};

/// U(h) summed term by term in long double.
inline long double potential(const Theta& th, const std::vector<double>& y, const std::vector<double>& h) {
    const long double mu = th.mu, phi = th.phi, s2 = th.sigma_eta2;
    long double u = 0.0L;
    for (std::size_t t = 0; t < h.size(); ++t) {
        const long double ht = h[t];
        const long double yt = y[t];
        u += ht / 2.0L + (yt * yt / 2.0L) * std::exp(-ht);
    }
    const long double d1 = h[0] - mu;
    u += (1.0L - phi * phi) * d1 * d1 / (2.0L * s2);
    for (std::size_t t = 1; t < h.size(); ++t) {
        const long double r = (h[t] - mu) - phi * (h[t - 1] - mu);
        u += r * r / (2.0L * s2);
    }
    return u;
}

/// -log of prod_t f(y_t | h_t) f(h_t | theta) with every normalising constant.
inline long double neg_log_density(const Theta& th, const std::vector<double>& y, const std::vector<double>& h) {
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double mu = th.mu, phi = th.phi, s2 = th.sigma_eta2;
    long double logp = 0.0L;
    for (std::size_t t = 0; t < h.size(); ++t) {
        const long double var = std::exp(static_cast<long double>(h[t]));
        logp += -0.5L * std::log(2.0L * pi * var) - static_cast<long double>(y[t]) * y[t] / (2.0L * var);
    }
    const long double v1 = s2 / (1.0L - phi * phi);
    logp += -0.5L * std::log(2.0L * pi * v1) - (h[0] - mu) * (h[0] - mu) / (2.0L * v1);
    for (std::size_t t = 1; t < h.size(); ++t) {
        const long double r = h[t] - mu - phi * (h[t - 1] - mu);
        logp += -0.5L * std::log(2.0L * pi * s2) - r * r / (2.0L * s2);
    }
    return -logp;
}

inline long double stat_A(const Theta& th, const std::vector<double>& h) {
    long double a = (1.0L - th.phi * (long double)th.phi) * (h[0] - th.mu) * (h[0] - th.mu);
    for (std::size_t t = 1; t < h.size(); ++t) {
        const long double r = h[t] - th.mu - th.phi * (h[t - 1] - th.mu);
        a += r * r;
    }
    return a / 2.0L;
}

inline void stats_BC(const Theta& th, const std::vector<double>& h, long double& B, long double& C) {
    const long double phi = th.phi;
    const auto n = static_cast<long double>(h.size());
    B = (1.0L - phi * phi) + (n - 1.0L) * (1.0L - phi) * (1.0L - phi);
    C = (1.0L - phi * phi) * h[0];
    for (std::size_t t = 1; t < h.size(); ++t) C += (1.0L - phi) * (h[t] - phi * h[t - 1]);
}

inline void stats_DE(const Theta& th, const std::vector<double>& h, long double& D, long double& E) {
    D = -(h[0] - th.mu) * (long double)(h[0] - th.mu);
    E = 0.0L;
    for (std::size_t t = 1; t < h.size(); ++t) {
        D += (h[t - 1] - th.mu) * (long double)(h[t - 1] - th.mu);
        E += (h[t] - th.mu) * (long double)(h[t - 1] - th.mu);
    }
}

/// Tabulated CDF on a uniform grid, built from an unnormalised log density by
/// trapezoidal integration.
struct GridCdf {
    double lo = 0.0;
    double step = 0.0;
    std::vector<double> cdf;

    double operator()(double x) const {
        if (x <= lo) return 0.0;
        const double pos = (x - lo) / step;
        const auto i = static_cast<std::size_t>(pos);
        if (i + 1 >= cdf.size()) return 1.0;
        const double frac = pos - static_cast<double>(i);
        return cdf[i] + frac * (cdf[i + 1] - cdf[i]);
    }
};

inline GridCdf cdf_from_density(const std::vector<double>& log_density, double lo, double step) {
    const double peak = *std::max_element(log_density.begin(), log_density.end());
    std::vector<double> dens(log_density.size());
    for (std::size_t i = 0; i < dens.size(); ++i) dens[i] = std::exp(log_density[i] - peak);
    GridCdf g;
    g.lo = lo;
    g.step = step;
    g.cdf.assign(dens.size(), 0.0);
    for (std::size_t i = 1; i < dens.size(); ++i) g.cdf[i] = g.cdf[i - 1] + 0.5 * step * (dens[i - 1] + dens[i]);
    const double total = g.cdf.back();
    for (auto& c : g.cdf) c /= total;
    return g;
}

inline GridCdf cdf_from_log_density(const std::function<double(double)>& log_density, double lo, double hi,
                                    std::size_t points) {
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::vector<double> ld(points);
    for (std::size_t i = 0; i < points; ++i) ld[i] = log_density(lo + step * static_cast<double>(i));
    return cdf_from_density(ld, lo, step);
}

/// Kolmogorov-Smirnov distance between samples and a reference CDF.
template <typename Cdf>
double ks_distance(std::vector<double> samples, const Cdf& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
    }
    return d;
}

/// Marginal of h_1 under exp(-U(h)) for a short path, by grid quadrature of the
/// chain: backward messages m_t(x) = sum_x' K(x, x') s_{t+1}(x') m_{t+1}(x').
inline GridCdf h1_marginal_cdf(const Theta& th, const std::vector<double>& y, double lo, double hi,
                               std::size_t points) {
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::vector<double> x(points);
    for (std::size_t i = 0; i < points; ++i) x[i] = lo + step * static_cast<double>(i);
    auto site_log = [&](std::size_t t, double v) { return -v / 2.0 - y[t] * y[t] / 2.0 * std::exp(-v); };

    const std::size_t n = y.size();
    std::vector<double> msg(points, 1.0);
    for (std::size_t t = n - 1; t >= 1; --t) {
        std::vector<double> weighted(points);
        double peak = -1e300;
        for (std::size_t j = 0; j < points; ++j) peak = std::max(peak, site_log(t, x[j]));
        for (std::size_t j = 0; j < points; ++j) weighted[j] = std::exp(site_log(t, x[j]) - peak) * msg[j];
        std::vector<double> next(points, 0.0);
        for (std::size_t i = 0; i < points; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < points; ++j) {
                const double r = (x[j] - th.mu) - th.phi * (x[i] - th.mu);
                s += std::exp(-r * r / (2.0 * th.sigma_eta2)) * weighted[j];
            }
            next[i] = s * step;
        }
        const double m = *std::max_element(next.begin(), next.end());
        for (auto& v : next) v /= m;
        msg.swap(next);
    }
    std::vector<double> log_dens(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double d = x[i] - th.mu;
        log_dens[i] = site_log(0, x[i]) - (1.0 - th.phi * th.phi) * d * d / (2.0 * th.sigma_eta2) +
                      std::log(std::max(msg[i], 1e-300));
    }
    return cdf_from_density(log_dens, lo, step);
}

/// x_t = rho x_{t-1} + sqrt(1 - rho^2) e_t, started from stationarity.
inline std::vector<double> ar1(double rho, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::vector<double> x(n);
    x[0] = nd(gen);
    const double s = std::sqrt(1.0 - rho * rho);
    for (std::size_t t = 1; t < n; ++t) x[t] = rho * x[t - 1] + s * nd(gen);
    return x;
}

inline std::vector<double> iid_normal(std::size_t n, std::uint64_t seed) {
    return ar1(0.0, n, seed);
}

}  // namespace oracle

#endif  // SVHMC_TESTS_ORACLES_HPP
