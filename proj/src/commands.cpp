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

#include "svhmc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace svhmc {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

ProgressSink locked_sink(std::ostream* log, std::mutex& mu) {
    if (!log) return {};
    return [log, &mu](const std::string& line) {
        std::lock_guard<std::mutex> lock(mu);
        *log << line << '\n' << std::flush;
    };
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Pairs the ACF of the same-named trace from two fits, lag by lag.
void write_acf_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                   const std::vector<const Eigen::VectorXd*>& columns, int max_lag) {
    std::vector<Eigen::VectorXd> acfs;
    int lags = max_lag;
    for (const auto* col : columns) lags = std::min<int>(lags, static_cast<int>(col->size()) - 1);
    for (const auto* col : columns) {
        try {
            if (lags < 0) throw DegenerateTraceError("empty trace");
            acfs.push_back(acf(*col, lags));
        } catch (const Error&) {
            acfs.push_back(Eigen::VectorXd::Constant(std::max(lags, 0) + 1, std::nan("")));
        }
    }
    auto out = open_output(path);
    out << "lag";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (int t = 0; t <= std::max(lags, 0); ++t) {
        out << t;
        for (const auto& a : acfs) out << ',' << (std::isnan(a[t]) ? std::string("nan") : format_double(a[t]));
        out << '\n';
    }
    close_output(out, path);
}

double mean_exp_neg(const std::vector<double>& delta_h) {
    if (delta_h.empty()) return std::nan("");
    double s = 0.0;
    for (double d : delta_h) s += std::exp(-d);
    return s / static_cast<double>(delta_h.size());
}

}  // namespace

std::filesystem::path truth_path_for(const std::filesystem::path& returns_path) {
    auto p = returns_path;
    p.replace_filename(returns_path.stem().string() + ".truth.csv");
    return p;
}

SyntheticTruth cmd_simulate(const SimulateArgs& args) {
    if (args.n < 2) throw ContractViolation("simulate needs n >= 2, got " + std::to_string(args.n));
    RngStream rng(args.seed);
    auto truth = generate_artificial(rng, args.params, args.n);
    save_returns(truth.returns, args.out);
    save_truth(truth, truth_path_for(args.out));
    return truth;
}

std::size_t cmd_ingest(const std::filesystem::path& prices, const std::filesystem::path& out) {
    const auto series = load_prices(prices);
    const auto returns = prices_to_returns(series);
    save_returns(returns, out);
    return static_cast<std::size_t>(returns.size());
}

std::vector<TraceReport> summarize_traces(const std::vector<ChainTrace>& traces, int n_blocks, double window_factor) {
    std::vector<TraceReport> out;
    for (const auto& t : traces) {
        TraceReport r;
        r.name = t.name;
        const auto n = t.values.size();
        if (n > 0) {
            r.mean = sample_mean(t.values);
            r.std_dev = sample_std_dev(t.values);
        }
        if (n < 2) {
            r.note = "too-short";
        } else {
            try {
                r.summary = summarize(t, std::clamp<int>(n_blocks, 2, static_cast<int>(n / 2)), window_factor);
            } catch (const Error& e) {
                r.note = e.kind();
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_summary_table(const std::vector<TraceReport>& reports) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"quantity", "mean", "std_dev", "tau_int", "tau_int_error", "window"});
    for (const auto& r : reports) {
        if (r.summary) {
            rows.push_back({r.name, format_double(r.mean), format_double(r.std_dev), format_double(r.summary->tau_int),
                            format_double(r.summary->tau_int_error), std::to_string(r.summary->window)});
        } else {
            rows.push_back({r.name, format_double(r.mean), format_double(r.std_dev), "n/a", "n/a", r.note});
        }
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c + 1 < row.size() ? pad(row[c], width[c] + 2) : row[c]);
        }
        os << '\n';
    }
    return os.str();
}

FitReport run_fit(const ReturnSeries& returns, RunConfig config, std::ostream* log) {
    resolve_tracked_sites(config, returns.size(), log);
    std::mutex mu;
    FitReport report;
    report.chain = run_chain(returns, config.chain, locked_sink(log, mu));
    report.reports = summarize_traces(report.chain.traces, config.n_blocks, config.window_factor);
    report.config = std::move(config);
    return report;
}

void write_fit_outputs(const FitReport& report, const std::filesystem::path& dir, const std::string& data_label) {
    std::filesystem::create_directories(dir);
    const auto& chain = report.chain;

    {
        const auto path = dir / "summary.txt";
        auto out = open_output(path);
        out << format_summary_table(report.reports);
        close_output(out, path);
    }
    save_trace(chain.traces, dir / "trace.csv");
    {
        std::vector<std::string> names;
        std::vector<const Eigen::VectorXd*> cols;
        for (const auto& t : chain.traces) {
            names.push_back(t.name);
            cols.push_back(&t.values);
        }
        write_acf_csv(dir / "acf.csv", names, cols, report.config.max_lag);
    }
    {
        const auto path = dir / "meta.txt";
        auto out = open_output(path);
        const bool is_hmc = report.config.chain.latent_sampler == LatentSamplerKind::hmc;
        out << "# svhmc fit\n"
            << "# data = " << data_label << '\n'
            << "# n = " << chain.final_state.size() << '\n'
            << "# latent_acceptance_burn_in = " << format_double(chain.latent_burn_in.rate()) << '\n'
            << "# latent_acceptance_record = " << format_double(chain.latent_record.rate()) << '\n'
            << "# phi_acceptance = " << format_double(chain.phi.rate()) << '\n'
            << "# phi_proposal_undefined = " << chain.phi_proposal_undefined << '\n'
            << "# sigma_eta2_degenerate = " << chain.sigma_degenerate << '\n'
            << "# divergent = " << chain.divergent << '\n';
        if (is_hmc) {
            out << "# final_step_size = " << format_double(chain.final_hmc.step_size) << '\n'
                << "# final_n_leapfrog_steps = " << effective_leapfrog_steps(chain.final_hmc, chain.final_state.params) << '\n'
                << "# mean_exp_minus_delta_h = " << format_double(mean_exp_neg(chain.delta_h)) << '\n';
        } else {
            out << "# final_proposal_width = " << format_double(chain.final_metropolis.proposal_width) << '\n';
        }
        out << echo_config(report.config);
        close_output(out, path);
    }
}

FitReport cmd_fit(const std::filesystem::path& data, const RunConfig& config, std::ostream* log) {
    const auto returns = load_returns(data);
    auto report = run_fit(returns, config, log);
    write_fit_outputs(report, report.config.output_dir, data.string());
    return report;
}

CompareReport cmd_compare(const std::filesystem::path& data, const RunConfig& left, const RunConfig& right,
                          const std::filesystem::path& output_dir, std::ostream* log) {
    const auto returns = load_returns(data);
    std::string left_label = to_string(left.chain.latent_sampler);
    std::string right_label = to_string(right.chain.latent_sampler);
    if (left_label == right_label) {
        left_label += "_1";
        right_label += "_2";
    }

    std::mutex mu;
    auto run_side = [&](RunConfig cfg) {
        resolve_tracked_sites(cfg, returns.size(), nullptr);
        FitReport r;
        r.chain = run_chain(returns, cfg.chain, locked_sink(log, mu));
        r.reports = summarize_traces(r.chain.traces, cfg.n_blocks, cfg.window_factor);
        r.config = std::move(cfg);
        return r;
    };
    auto left_future = std::async(std::launch::async, run_side, left);
    CompareReport report;
    report.right = run_side(right);
    report.left = left_future.get();

    write_fit_outputs(report.left, output_dir / left_label, data.string());
    write_fit_outputs(report.right, output_dir / right_label, data.string());

    // Side-by-side table: posterior mean (std dev) and tau_int (jackknife error).
    {
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header{""};
        for (const auto& r : report.left.reports) header.push_back(r.name);
        rows.push_back(header);
        for (const auto* side : {&report.left, &report.right}) {
            std::vector<std::string> est{side == &report.left ? left_label : right_label};
            std::vector<std::string> tau{"tau_int"};
            for (const auto& r : side->reports) {
                est.push_back(compact(r.mean) + " (" + compact(r.std_dev) + ")");
                tau.push_back(r.summary ? compact(r.summary->tau_int) + " (" + compact(r.summary->tau_int_error) + ")"
                                        : "n/a");
            }
            rows.push_back(est);
            rows.push_back(tau);
        }
        std::vector<std::size_t> width(header.size(), 0);
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
        const auto path = output_dir / "summary.txt";
        auto out = open_output(path);
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c + 1 < row.size() ? pad(row[c], width[c] + 2) : row[c]);
            out << '\n';
        }
        out << "\n# values: posterior mean (std dev); tau_int (jackknife error)\n";
        close_output(out, path);
    }

    const auto& lt = report.left.chain.traces;
    const auto& rt = report.right.chain.traces;
    if (lt.size() > 3 && rt.size() > 3) {
        write_acf_csv(output_dir / "acf.csv", {"acf_" + left_label, "acf_" + right_label}, {&lt[3].values, &rt[3].values},
                      std::min(report.left.config.max_lag, report.right.config.max_lag));
    }
    return report;
}

}  // namespace svhmc
