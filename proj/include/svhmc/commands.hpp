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
 * Experiment drivers behind the `svhmc` executable.
 *
 *   simulate  returns CSV + <stem>.truth.csv
 *   ingest    prices CSV -> mean-adjusted percent returns CSV
 *   fit       summary.txt, trace.csv, acf.csv, meta.txt in the output dir
 *   compare   hmc/ and metropolis/ fits plus a side-by-side summary.txt
 *             and a paired acf.csv for the first tracked site
 */

#ifndef SVHMC_COMMANDS_HPP
#define SVHMC_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svhmc/chain.hpp"
#include "svhmc/data.hpp"
#include "svhmc/run_config.hpp"

namespace svhmc {

struct SimulateArgs {
    SvParams params{-1.0, 0.97, 0.05};
    long n = 2000;
    std::uint64_t seed = 10;
    std::filesystem::path out = "returns.csv";
};

/// Sidecar path used by cmd_simulate: <dir>/<stem>.truth.csv.
std::filesystem::path truth_path_for(const std::filesystem::path& returns_path);

SyntheticTruth cmd_simulate(const SimulateArgs& args);

/// Number of returns written.
std::size_t cmd_ingest(const std::filesystem::path& prices, const std::filesystem::path& out);

/// Per-trace summary; `summary` is empty when tau_int could not be computed.
struct TraceReport {
    std::string name;
    double mean = 0.0;
    double std_dev = 0.0;
    std::optional<ChainSummary> summary;
    std::string note;  ///< reason tau_int is missing
};

struct FitReport {
    RunConfig config;  ///< after tracked-site resolution
    ChainResult chain;
    std::vector<TraceReport> reports;
};

/// Summaries for every trace, tolerating degenerate or too-short traces.
std::vector<TraceReport> summarize_traces(const std::vector<ChainTrace>& traces, int n_blocks, double window_factor);

/// Runs the chain on `returns` without touching the filesystem.
FitReport run_fit(const ReturnSeries& returns, RunConfig config, std::ostream* log);

/// Writes summary.txt, trace.csv, acf.csv and meta.txt for a finished fit.
void write_fit_outputs(const FitReport& report, const std::filesystem::path& dir, const std::string& data_label);

FitReport cmd_fit(const std::filesystem::path& data, const RunConfig& config, std::ostream* log);

struct CompareReport {
    FitReport left;
    FitReport right;
};

/// Runs two configurations (by default HMC and Metropolis) on the same data
/// concurrently and writes both fits plus the side-by-side outputs.
CompareReport cmd_compare(const std::filesystem::path& data, const RunConfig& left, const RunConfig& right,
                          const std::filesystem::path& output_dir, std::ostream* log);

/// Aligned text table with mean, std dev, tau_int, its error and the window.
std::string format_summary_table(const std::vector<TraceReport>& reports);

}  // namespace svhmc

#endif  // SVHMC_COMMANDS_HPP
