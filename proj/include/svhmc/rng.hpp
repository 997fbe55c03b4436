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

#ifndef SVHMC_RNG_HPP
#define SVHMC_RNG_HPP

#include <cstdint>
#include <random>

namespace svhmc {

/// Seeded random stream owned by exactly one chain.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distribution adaptors come from the standard library, so a
/// given seed reproduces the same draws bit-for-bit on one toolchain; across
/// standard-library implementations only the engine sequence is guaranteed.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform on [0, 1).
    double uniform() { return unit_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
    double normal() { return normal_(engine_); }
    double normal(double mean, double sd) { return mean + sd * normal_(engine_); }
    /// Gamma with the given shape and unit scale.
    double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace svhmc

#endif  // SVHMC_RNG_HPP
