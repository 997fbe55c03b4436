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

#ifndef SVHMC_DATA_HPP
#define SVHMC_DATA_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svhmc/diagnostics.hpp"
#include "svhmc/model.hpp"
#include "svhmc/rng.hpp"

namespace svhmc {

/// Daily closing levels, all > 0, at least 3 of them. Labels are optional
/// (empty, or one per price).
struct PriceSeries {
    Eigen::VectorXd prices;
    std::vector<std::string> labels;
};

void check_prices(const PriceSeries& series);

struct SyntheticTruth {
    SvParams params;
    LatentPath path;
    ReturnSeries returns;
};

/// Simulates n observations; h_1 comes from the stationary AR(1) law.
SyntheticTruth generate_artificial(RngStream& rng, const SvParams& params, Eigen::Index n);

/// Mean-adjusted percentage log returns r_i = 100 (ln(p_i / p_{i-1}) - s),
/// where s is the mean log return.
ReturnSeries prices_to_returns(const PriceSeries& series);

/// Labelled column of numbers as read from a CSV file.
struct LabelledSeries {
    std::vector<std::string> labels;  ///< empty for single-column files
    std::vector<double> values;
    std::vector<std::size_t> lines;  ///< 1-based file line of each value
};

/// Reads `label,value` or `value` rows. A first line whose fields carry no
/// digits and whose value field is not numeric is a header and is skipped.
/// Blank lines are ignored; CRLF endings are accepted.
LabelledSeries parse_series_csv(std::istream& in);

PriceSeries parse_prices(std::istream& in);
PriceSeries load_prices(const std::filesystem::path& path);

/// Returns files share the price dialect; values may be any finite number.
ReturnSeries load_returns(const std::filesystem::path& path);
void save_returns(const ReturnSeries& returns, const std::filesystem::path& path);

/// Shortest decimal text that reads back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text, std::size_t line);

/// One column per trace, header = trace names. All traces must share a length.
void save_trace(std::span<const ChainTrace> traces, const std::filesystem::path& path);
std::vector<ChainTrace> load_trace(const std::filesystem::path& path);

/// Sidecar with the generating parameters as `# key = value` comment lines
/// followed by a `t,h` table of the true latent path.
void save_truth(const SyntheticTruth& truth, const std::filesystem::path& path);

}  // namespace svhmc

#endif  // SVHMC_DATA_HPP
