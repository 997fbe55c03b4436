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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "svhmc/chain.hpp"
#include "svhmc/data.hpp"
#include "svhmc/latent_sampler.hpp"

using namespace svhmc;

namespace {

ModelState random_state(std::mt19937_64& gen, int n, SvParams p) {
    std::normal_distribution<double> nd;
    Eigen::VectorXd y(n), h(n);
    for (int t = 0; t < n; ++t) {
        h[t] = p.mu + std::sqrt(p.sigma_eta2 / (1 - p.phi * p.phi)) * nd(gen);
        y[t] = std::exp(h[t] / 2) * nd(gen);
    }
    return {p, h, ReturnSeries(y)};
}

Eigen::VectorXd normals(std::mt19937_64& gen, int n) {
    std::normal_distribution<double> nd;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = nd(gen);
    return v;
}

HmcConfig fixed_steps(double step, int n_steps) {
    HmcConfig c;
    c.step_size = step;
    c.n_leapfrog_steps = n_steps;
    c.trajectory_length = 0.0;
    c.relative_step = false;
    return c;
}

double mean_abs_delta_h(const ModelState& s, double step, int n_draws) {
    std::mt19937_64 gen(77);
    const int n_steps = static_cast<int>(std::lround(1.0 / step));
    double sum = 0.0;
    for (int k = 0; k < n_draws; ++k) {
        const auto p = normals(gen, static_cast<int>(s.size()));
        const auto r = leapfrog(s.path, p, s.params, s.data, step, n_steps);
        sum += std::abs(hamiltonian(r.momenta, s.params, s.data, r.path) - hamiltonian(p, s));
    }
    return sum / n_draws;
}

}  // namespace

TEST_CASE("free particle under a zero force") {
    Eigen::VectorXd h(3), p(3);
    h << 0.1, -2.0, 3.0;
    p << 1.0, -0.5, 0.25;
    const Eigen::VectorXd h0 = h, p0 = p;
    leapfrog_inplace(h, p, [](const LatentPath&, Eigen::VectorXd& g) { g.setZero(); }, 0.1, 7);
    CHECK((h - (h0 + p0 * 0.1 * 7)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(p == p0);
}

TEST_CASE("leapfrog is reversible") {
    std::mt19937_64 gen(21);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 + (rep * 7) % 63;
        const auto s = random_state(gen, n, {-1.0, 0.95, 0.05});
        const auto p = normals(gen, n);
        const int steps = rep < 10 ? 1 : 1 + rep % 20;
        const double eps = 0.02;
        const auto fwd = leapfrog(s.path, p, s.params, s.data, eps, steps);
        const auto back = leapfrog(fwd.path, -fwd.momenta, s.params, s.data, eps, steps);
        const double scale = std::sqrt(s.path.squaredNorm() + p.squaredNorm());
        const double err = std::sqrt((back.path - s.path).squaredNorm() + (back.momenta + p).squaredNorm());
        CHECK(err / scale <= 1e-10);
    }
}

TEST_CASE("one leapfrog step preserves phase-space volume") {
    std::mt19937_64 gen(22);
    const auto s = random_state(gen, 2, {-0.5, 0.8, 0.3});
    const auto p = normals(gen, 2);
    Eigen::VectorXd z(4);
    z << s.path, p;
    auto step = [&](const Eigen::VectorXd& v) {
        const auto r = leapfrog(v.head(2), v.tail(2), s.params, s.data, 0.3, 1);
        Eigen::VectorXd out(4);
        out << r.path, r.momenta;
        return out;
    };
    Eigen::Matrix4d jac;
    const double d = 1e-6;
    for (int k = 0; k < 4; ++k) {
        Eigen::VectorXd zp = z, zm = z;
        zp[k] += d;
        zm[k] -= d;
        jac.col(k) = (step(zp) - step(zm)) / (2 * d);
    }
    CHECK(std::abs(jac.determinant() - 1.0) < 1e-8);
}

TEST_CASE("energy error is second order in the step") {
    std::mt19937_64 gen(23);
    const auto s = random_state(gen, 4, {-1.0, 0.5, 0.5});
    const double e1 = mean_abs_delta_h(s, 0.1, 400);
    const double e2 = mean_abs_delta_h(s, 0.05, 400);
    const double e3 = mean_abs_delta_h(s, 0.025, 400);
    CHECK(e1 / e2 >= 3.3);
    CHECK(e1 / e2 <= 4.7);
    CHECK(e2 / e3 >= 3.3);
    CHECK(e2 / e3 <= 4.7);
}

TEST_CASE("hmc accepts everything in the exact integration limit") {
    std::mt19937_64 gen(24);
    auto s = random_state(gen, 20, {-1.0, 0.97, 0.05});
    RngStream rng(1);
    const auto cfg = fixed_steps(1e-6, 1);
    int accepted = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto out = hmc_update(rng, s, cfg);
        CHECK(std::abs(out.delta_h) < 1e-6);
        accepted += out.accepted;
    }
    CHECK(accepted / 1000.0 > 0.999);
}

TEST_CASE("hmc update is deterministic for a seed") {
    std::mt19937_64 gen(25);
    const auto s = random_state(gen, 30, {-1.0, 0.9, 0.1});
    auto a = s, b = s;
    RngStream ra(5), rb(5);
    HmcConfig cfg;
    for (int i = 0; i < 20; ++i) {
        const auto oa = hmc_update(ra, a, cfg);
        const auto ob = hmc_update(rb, b, cfg);
        CHECK(oa.accepted == ob.accepted);
        CHECK(oa.delta_h == ob.delta_h);
        CHECK(oa.proposal_path == ob.proposal_path);
    }
    CHECK(a.path == b.path);
}

TEST_CASE("rejected or divergent updates leave the path bit-identical") {
    std::mt19937_64 gen(26);
    auto s = random_state(gen, 10, {-1.0, 0.9, 0.1});
    RngStream rng(6);
    const auto cfg = fixed_steps(2.0, 5);
    int rejections = 0;
    for (int i = 0; i < 50; ++i) {
        const LatentPath before = s.path;
        const auto out = hmc_update(rng, s, cfg);
        if (!out.accepted) {
            ++rejections;
            CHECK(s.path == before);
            if (out.divergent) CHECK(std::isinf(out.delta_h));
        }
    }
    CHECK(rejections > 0);
}

TEST_CASE("metropolis with a vanishing width accepts almost everything") {
    std::mt19937_64 gen(27);
    auto s = random_state(gen, 50, {-1.0, 0.97, 0.05});
    RngStream rng(7);
    MetropolisConfig cfg;
    cfg.proposal_width = 1e-12;
    const auto out = metropolis_update(rng, s, cfg);
    CHECK(out.acceptance_rate > 0.999);
    CHECK(out.proposals == 50);
}

TEST_CASE("decoupled metropolis sites match independent scalar chains") {
    const SvParams p{-0.5, 0.0, 0.4};
    Eigen::VectorXd y(3), h(3);
    y << 0.3, -1.5, 0.05;
    h << -0.5, -0.5, -0.5;
    ModelState s{p, h, ReturnSeries(y)};
    MetropolisConfig cfg;
    cfg.proposal_width = 1.2;
    RngStream rng(8);
    const int sweeps = 200000;
    std::vector<long> hits(3, 0);
    for (int i = 0; i < sweeps; ++i) {
        const LatentPath before = s.path;
        metropolis_update(rng, s, cfg);
        for (int t = 0; t < 3; ++t) hits[t] += s.path[t] != before[t];
    }

    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 3; ++t) {
        auto target = [&](double v) {
            return v / 2 + y[t] * y[t] / 2 * std::exp(-v) + (v - p.mu) * (v - p.mu) / (2 * p.sigma_eta2);
        };
        double x = -0.5;
        long acc = 0;
        for (int i = 0; i < sweeps; ++i) {
            const double c = x + (2 * unit(gen) - 1) * cfg.proposal_width;
            if (unit(gen) < std::exp(target(x) - target(c))) {
                x = c;
                ++acc;
            }
        }
        CHECK(std::abs(hits[t] - acc) / static_cast<double>(sweeps) < 0.01);
    }
}

TEST_CASE("tuning rule") {
    HmcConfig cfg;
    cfg.step_size = 0.3;
    std::vector<std::uint8_t> half(100);
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = i % 2;
    CHECK(tune_step_size(half, cfg) == 0.3);
    std::vector<std::uint8_t> all(60, 1);
    CHECK(tune_step_size(all, cfg) / 0.3 == doctest::Approx(1.6487212707).epsilon(1e-10));
    std::vector<std::uint8_t> short_window(49, 1);
    CHECK_THROWS_AS(tune_step_size(short_window, cfg), ContractViolation);
    CHECK(adapt_scale(2.0, 0.2, 0.5) == doctest::Approx(2.0 * std::exp(-0.3)));
}

TEST_CASE("step size is frozen once recording starts") {
    RngStream rng(30);
    const auto truth = generate_artificial(rng, {-1.0, 0.97, 0.05}, 200);
    ChainConfig cfg;
    cfg.n_burn_in = 1000;
    cfg.tracked_sites = {50};
    cfg.log_every = 0;
    cfg.n_record = 10;
    const auto short_run = run_chain(truth.returns, cfg);
    cfg.n_record = 2000;
    const auto long_run = run_chain(truth.returns, cfg);
    CHECK(short_run.final_hmc.step_size == long_run.final_hmc.step_size);
    CHECK(short_run.final_hmc.step_size != cfg.hmc.step_size);
    CHECK(short_run.final_metropolis.proposal_width == long_run.final_metropolis.proposal_width);

    cfg.hmc.tune_during_burn_in = false;
    CHECK(run_chain(truth.returns, cfg).final_hmc.step_size == cfg.hmc.step_size);
}

TEST_CASE("initial path is the clamped log of squared returns") {
    Eigen::VectorXd y(4);
    y << 0.0, 1.0, 1e6, 0.5;
    const auto h = initial_path(ReturnSeries(y));
    CHECK(h[0] == doctest::Approx(-10.0));
    CHECK(h[1] == doctest::Approx(std::log(1.0 + 1e-8)));
    CHECK(h[2] == 10.0);
    CHECK(h[3] == doctest::Approx(std::log(0.25 + 1e-8)));
}

TEST_CASE("config contracts") {
    HmcConfig h;
    h.step_size = 0.0;
    CHECK_THROWS_AS(check_config(h), ContractViolation);
    MetropolisConfig m;
    m.proposal_width = -1.0;
    CHECK_THROWS_AS(check_config(m), ContractViolation);
}
