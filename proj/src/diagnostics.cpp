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

#include "svhmc/diagnostics.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "svhmc/errors.hpp"

namespace svhmc {

namespace {

// Direct summation beyond this many multiply-adds switches to the FFT.
constexpr double kDirectWorkLimit = 2.0e7;

void check_values(const Eigen::VectorXd& x) {
    if (x.size() < 2) {
        throw ContractViolation("trace needs at least 2 values, got " + std::to_string(x.size()));
    }
    if (!x.allFinite()) {
        throw ContractViolation("trace contains non-finite values");
    }
}

void check_lag(const Eigen::VectorXd& x, int max_lag) {
    if (max_lag < 0 || max_lag >= x.size()) {
        throw ContractViolation("max_lag must lie in [0, N), got " + std::to_string(max_lag) + " for N=" +
                                std::to_string(x.size()));
    }
}

// Centered values and their sum of squares; throws on a constant trace.
Eigen::VectorXd centered(const Eigen::VectorXd& x, double& sum_sq) {
    const Eigen::VectorXd d = x.array() - x.mean();
    sum_sq = d.squaredNorm();
    const double scale = x.cwiseAbs().maxCoeff();
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (!(sum_sq > static_cast<double>(x.size()) * floor * floor)) {
        throw DegenerateTraceError("trace has zero variance; autocorrelation is undefined");
    }
    return d;
}

std::size_t fft_size(std::size_t n) {
    std::size_t m = 1;
    while (m < 2 * n) m <<= 1;
    return m;
}

}  // namespace

void check_trace(const ChainTrace& trace) {
    check_values(trace.values);
}

Eigen::VectorXd acf_direct(const Eigen::VectorXd& x, int max_lag) {
    check_values(x);
    check_lag(x, max_lag);
    double ss = 0.0;
    const Eigen::VectorXd d = centered(x, ss);
    const Eigen::Index n = d.size();
    Eigen::VectorXd out(max_lag + 1);
    out[0] = 1.0;
    for (int t = 1; t <= max_lag; ++t) {
        out[t] = d.head(n - t).dot(d.tail(n - t)) / ss;
    }
    return out;
}

Eigen::VectorXd acf_fft(const Eigen::VectorXd& x, int max_lag) {
    check_values(x);
    check_lag(x, max_lag);
    double ss = 0.0;
    const Eigen::VectorXd d = centered(x, ss);

    const std::size_t m = fft_size(static_cast<std::size_t>(d.size()));
    std::vector<double> padded(m, 0.0);
    for (Eigen::Index i = 0; i < d.size(); ++i) padded[static_cast<std::size_t>(i)] = d[i];

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> freq;
    fft.fwd(freq, padded);
    for (auto& c : freq) c = std::norm(c);
    std::vector<double> lagged;
    fft.inv(lagged, freq);

    Eigen::VectorXd out(max_lag + 1);
    out[0] = 1.0;
    for (int t = 1; t <= max_lag; ++t) out[t] = lagged[static_cast<std::size_t>(t)] / ss;
    return out;
}

Eigen::VectorXd acf(const Eigen::VectorXd& x, int max_lag) {
    const double work = static_cast<double>(x.size()) * static_cast<double>(max_lag + 1);
    return work <= kDirectWorkLimit ? acf_direct(x, max_lag) : acf_fft(x, max_lag);
}

Eigen::VectorXd acf(const ChainTrace& trace, int max_lag) {
    return acf(trace.values, max_lag);
}

int autocorr_window(const Eigen::VectorXd& acf_values, double window_factor) {
    if (acf_values.size() < 1 || std::abs(acf_values[0] - 1.0) > 1e-9) {
        throw ContractViolation("ACF values must start with ACF(0) = 1");
    }
    if (!(window_factor > 0)) {
        throw ContractViolation("window factor must be positive");
    }
    double tau = 0.5;
    for (Eigen::Index t = 1; t < acf_values.size(); ++t) {
        tau += acf_values[t];
        if (static_cast<double>(t) >= window_factor * tau) return static_cast<int>(t);
    }
    throw InsufficientLagsError("tau_int window did not close within " + std::to_string(acf_values.size() - 1) +
                                " lags (running tau_int=" + std::to_string(tau) + "); increase max_lag");
}

double integrated_autocorr_time(const Eigen::VectorXd& acf_values, double window_factor) {
    const int w = autocorr_window(acf_values, window_factor);
    return 0.5 + acf_values.segment(1, w).sum();
}

double integrated_autocorr_time_of(const Eigen::VectorXd& x, double window_factor) {
    return integrated_autocorr_time(acf(x, static_cast<int>(x.size()) - 1), window_factor);
}

double jackknife_error(const Eigen::VectorXd& x, const TraceStatistic& statistic, int n_blocks) {
    if (n_blocks < 2) {
        throw ContractViolation("jackknife needs at least 2 blocks, got " + std::to_string(n_blocks));
    }
    if (n_blocks > x.size()) {
        throw ContractViolation("jackknife block count " + std::to_string(n_blocks) + " exceeds trace length " +
                                std::to_string(x.size()));
    }
    const Eigen::Index block = x.size() / n_blocks;
    const Eigen::Index used = block * n_blocks;

    Eigen::VectorXd estimates(n_blocks);
    Eigen::VectorXd reduced(used - block);
    for (int k = 0; k < n_blocks; ++k) {
        const Eigen::Index start = k * block;
        reduced.head(start) = x.head(start);
        reduced.tail(used - start - block) = x.segment(start + block, used - start - block);
        estimates[k] = statistic(reduced);
    }
    const double centre = estimates.mean();
    const double var = (n_blocks - 1.0) / n_blocks * (estimates.array() - centre).square().sum();
    return std::sqrt(var);
}

double jackknife_error(const ChainTrace& trace, const TraceStatistic& statistic, int n_blocks) {
    return jackknife_error(trace.values, statistic, n_blocks);
}

double sample_mean(const Eigen::VectorXd& x) {
    if (x.size() == 0) throw ContractViolation("mean of an empty trace");
    return x.mean();
}

double sample_std_dev(const Eigen::VectorXd& x) {
    if (x.size() < 2) return 0.0;
    return std::sqrt((x.array() - x.mean()).square().sum() / static_cast<double>(x.size() - 1));
}

ChainSummary summarize(const ChainTrace& trace, int n_blocks, double window_factor) {
    check_trace(trace);
    const Eigen::VectorXd& x = trace.values;
    ChainSummary s;
    s.mean = sample_mean(x);
    s.std_dev = sample_std_dev(x);

    const Eigen::VectorXd rho = acf(x, static_cast<int>(x.size()) - 1);
    s.window = autocorr_window(rho, window_factor);
    s.tau_int = 0.5 + rho.segment(1, s.window).sum();
    s.tau_int_error = jackknife_error(
        x, [window_factor](const Eigen::VectorXd& part) { return integrated_autocorr_time_of(part, window_factor); },
        n_blocks);
    return s;
}

}  // namespace svhmc
