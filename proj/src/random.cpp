// SPDX-License-Identifier: Apache-2.0
//
// dofbc - DoF region and achievability lab for the two-user MISO broadcast channel
// Copyright (C) 2026 The dofbc Authors
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

#include "dofbc/random.hpp"

#include <cmath>
#include <numbers>

namespace dofbc
{
    namespace
    {
        constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

        constexpr std::uint64_t mix64(std::uint64_t z)
        {
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }
    }

    RandomStream::RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key)
        : state_(mix64(seed + golden_gamma))
    {
        for (std::uint64_t k : key)
            state_ = mix64(state_ ^ mix64(k + golden_gamma));
    }

    std::uint64_t RandomStream::next_u64()
    {
        state_ += golden_gamma;
        return mix64(state_);
    }

    double RandomStream::uniform()
    {
        // (k + 0.5) / 2^53 never hits 0 or 1
        const auto k = next_u64() >> 11;
        return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
    }

    double RandomStream::normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> RandomStream::complex_normal(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }
}
