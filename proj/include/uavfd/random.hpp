// SPDX-License-Identifier: Apache-2.0
//
// uavfd - link-level simulator for full-duplex multi-UAV links
// Copyright (C) 2026 The uavfd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace uavfd
{

// Mixes a base seed with a stream index (splitmix64 finalizer). Used to give
// every grid point and every frame its own reproducible stream.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
{
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// mt19937_64 is fully specified by the standard; the std distributions are
// not, so the uniform and normal transforms are done here to keep output
// identical across standard libraries.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    // Circular complex Gaussian with E|z|^2 = power.
    std::complex<double> complex_normal(double power)
    {
        const double s = std::sqrt(power / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    std::uint8_t bit() { return static_cast<std::uint8_t>(eng_() >> 63); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : static_cast<std::uint64_t>(uniform() * n); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace uavfd
