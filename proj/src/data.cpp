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

#include "svhmc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace svhmc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool try_parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool has_digit(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

void check_prices(const PriceSeries& series) {
    if (series.prices.size() < 3) {
        throw ContractViolation("price series needs at least 3 prices, got " + std::to_string(series.prices.size()));
    }
    if (!series.labels.empty() && static_cast<Eigen::Index>(series.labels.size()) != series.prices.size()) {
        throw ContractViolation("price labels must be empty or one per price");
    }
    for (Eigen::Index i = 0; i < series.prices.size(); ++i) {
        if (!(series.prices[i] > 0) || !std::isfinite(series.prices[i])) {
            throw ContractViolation("non-positive price at row " + std::to_string(i + 1) + " (value " +
                                    format_double(series.prices[i]) + ")");
        }
    }
}

SyntheticTruth generate_artificial(RngStream& rng, const SvParams& params, Eigen::Index n) {
    check_params(params);
    if (n < 2) throw ContractViolation("generate_artificial needs n >= 2, got " + std::to_string(n));

    const double sd_eta = std::sqrt(params.sigma_eta2);
    LatentPath h(n);
    Eigen::VectorXd y(n);
    h[0] = rng.normal(params.mu, std::sqrt(params.sigma_eta2 / (1.0 - params.phi * params.phi)));
    for (Eigen::Index t = 1; t < n; ++t) {
        h[t] = params.mu + params.phi * (h[t - 1] - params.mu) + sd_eta * rng.normal();
    }
    for (Eigen::Index t = 0; t < n; ++t) {
        y[t] = std::exp(0.5 * h[t]) * rng.normal();
    }
    return {params, std::move(h), ReturnSeries(std::move(y))};
}

ReturnSeries prices_to_returns(const PriceSeries& series) {
    check_prices(series);
    const auto& p = series.prices;
    const Eigen::Index m = p.size() - 1;
    Eigen::VectorXd r = (p.tail(m).array() / p.head(m).array()).log().matrix();
    r = 100.0 * (r.array() - r.mean()).matrix();
    return ReturnSeries(std::move(r));
}

LabelledSeries parse_series_csv(std::istream& in) {
    LabelledSeries out;
    std::string raw;
    std::size_t line_no = 0;
    bool saw_data_line = false;
    int columns = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() > 2) throw ParseError(line_no, "expected 1 or 2 fields, got " + std::to_string(fields.size()));

        const auto value_field = fields.back();
        double value = 0.0;
        const bool numeric = try_parse_double(value_field, value);
        if (!saw_data_line && !numeric && !has_digit(line)) {
            saw_data_line = true;  // header
            columns = static_cast<int>(fields.size());
            continue;
        }
        saw_data_line = true;
        if (!numeric) throw ParseError(line_no, "cannot parse number from '" + std::string(value_field) + "'");
        if (columns == 0) columns = static_cast<int>(fields.size());
        if (static_cast<int>(fields.size()) != columns) {
            throw ParseError(line_no, "inconsistent column count");
        }
        if (fields.size() == 2) out.labels.emplace_back(fields.front());
        out.values.push_back(value);
        out.lines.push_back(line_no);
    }
    return out;
}

PriceSeries parse_prices(std::istream& in) {
    auto raw = parse_series_csv(in);
    for (std::size_t i = 0; i < raw.values.size(); ++i) {
        if (!(raw.values[i] > 0)) {
            throw ContractViolation("non-positive price at line " + std::to_string(raw.lines[i]) + " (value " +
                                    format_double(raw.values[i]) + ")");
        }
    }
    PriceSeries series;
    series.prices = Eigen::Map<const Eigen::VectorXd>(raw.values.data(), static_cast<Eigen::Index>(raw.values.size()));
    series.labels = std::move(raw.labels);
    check_prices(series);
    return series;
}

PriceSeries load_prices(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    return parse_prices(in);
}

ReturnSeries load_returns(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    const auto raw = parse_series_csv(in);
    return ReturnSeries(
        Eigen::Map<const Eigen::VectorXd>(raw.values.data(), static_cast<Eigen::Index>(raw.values.size())));
}

void save_returns(const ReturnSeries& returns, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "t,return\n";
    for (Eigen::Index t = 0; t < returns.size(); ++t) out << (t + 1) << ',' << format_double(returns[t]) << '\n';
    finish(out, path);
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw ContractViolation("cannot format value");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text, std::size_t line) {
    double v = 0.0;
    if (!try_parse_double(text, v)) throw ParseError(line, "cannot parse number from '" + std::string(text) + "'");
    return v;
}

void save_trace(std::span<const ChainTrace> traces, const std::filesystem::path& path) {
    if (traces.empty()) throw ContractViolation("save_trace needs at least one trace");
    const auto len = traces.front().values.size();
    for (const auto& t : traces) {
        if (t.values.size() != len) throw ContractViolation("save_trace: traces have unequal lengths");
        if (t.name.find(',') != std::string::npos) throw ContractViolation("trace name contains a comma");
    }
    auto out = open_for_write(path);
    for (std::size_t k = 0; k < traces.size(); ++k) out << (k ? "," : "") << traces[k].name;
    out << '\n';
    for (Eigen::Index i = 0; i < len; ++i) {
        for (std::size_t k = 0; k < traces.size(); ++k) out << (k ? "," : "") << format_double(traces[k].values[i]);
        out << '\n';
    }
    finish(out, path);
}

std::vector<ChainTrace> load_trace(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    std::string raw;
    if (!std::getline(in, raw)) throw ParseError(1, "empty trace file");
    std::vector<ChainTrace> traces;
    for (auto name : split_commas(trim(raw))) traces.push_back({std::string(name), {}});

    std::vector<std::vector<double>> columns(traces.size());
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != traces.size()) throw ParseError(line_no, "wrong number of columns");
        for (std::size_t k = 0; k < fields.size(); ++k) columns[k].push_back(parse_double(fields[k], line_no));
    }
    for (std::size_t k = 0; k < traces.size(); ++k) {
        traces[k].values =
            Eigen::Map<const Eigen::VectorXd>(columns[k].data(), static_cast<Eigen::Index>(columns[k].size()));
    }
    return traces;
}

void save_truth(const SyntheticTruth& truth, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "# mu = " << format_double(truth.params.mu) << '\n'
        << "# phi = " << format_double(truth.params.phi) << '\n'
        << "# sigma_eta2 = " << format_double(truth.params.sigma_eta2) << '\n'
        << "t,h\n";
    for (Eigen::Index t = 0; t < truth.path.size(); ++t) out << (t + 1) << ',' << format_double(truth.path[t]) << '\n';
    finish(out, path);
}

}  // namespace svhmc
