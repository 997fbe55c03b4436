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

#ifndef SVHMC_DIAGNOSTICS_HPP
#define SVHMC_DIAGNOSTICS_HPP

#include <Eigen/Dense>

#include <functional>
#include <string>

#include "svhmc/errors.hpp"

namespace svhmc {

/// One scalar per recorded sweep.
struct ChainTrace {
    std::string name;
    Eigen::VectorXd values;
};

/// Throws ContractViolation unless the trace has >= 2 finite values.
void check_trace(const ChainTrace& trace);

struct ChainSummary {
    double mean = 0.0;
    double std_dev = 0.0;
    double tau_int = 0.0;
    double tau_int_error = 0.0;
    int window = 0;
};

inline constexpr double kDefaultWindowFactor = 6.0;
inline constexpr int kDefaultJackknifeBlocks = 20;

/// Normalised autocorrelation for lags 0..max_lag,
///
///   ACF(t) = (1/N) sum_{j=1}^{N-t} (x_j - <x>)(x_{j+t} - <x>) / sigma_x^2,
///
/// with <x> and sigma_x^2 taken over the whole trace. Large requests are
/// evaluated with an FFT; the estimator is the same either way.
Eigen::VectorXd acf(const Eigen::VectorXd& x, int max_lag);
Eigen::VectorXd acf(const ChainTrace& trace, int max_lag);

/// Direct O(N * max_lag) summation of the same estimator.
Eigen::VectorXd acf_direct(const Eigen::VectorXd& x, int max_lag);
/// Zero-padded FFT evaluation of the same estimator.
Eigen::VectorXd acf_fft(const Eigen::VectorXd& x, int max_lag);

/// Smallest W >= 1 with W >= factor * (1/2 + sum_{t<=W} ACF(t)).
int autocorr_window(const Eigen::VectorXd& acf_values, double window_factor = kDefaultWindowFactor);

/// tau_int = 1/2 + sum_{t=1}^{W} ACF(t) over the self-consistent window.
double integrated_autocorr_time(const Eigen::VectorXd& acf_values, double window_factor = kDefaultWindowFactor);

/// tau_int of a raw trace using every available lag.
double integrated_autocorr_time_of(const Eigen::VectorXd& x, double window_factor = kDefaultWindowFactor);

using TraceStatistic = std::function<double(const Eigen::VectorXd&)>;

/// Delete-one-block jackknife standard error. The trailing N mod n_blocks
/// values are dropped.
double jackknife_error(const Eigen::VectorXd& x, const TraceStatistic& statistic, int n_blocks);
double jackknife_error(const ChainTrace& trace, const TraceStatistic& statistic, int n_blocks);

double sample_mean(const Eigen::VectorXd& x);
/// Standard deviation with the 1/(N-1) normaliser.
double sample_std_dev(const Eigen::VectorXd& x);

/// Mean, standard deviation, tau_int and its jackknife error.
ChainSummary summarize(const ChainTrace& trace, int n_blocks = kDefaultJackknifeBlocks,
                       double window_factor = kDefaultWindowFactor);

}  // namespace svhmc

#endif  // SVHMC_DIAGNOSTICS_HPP
