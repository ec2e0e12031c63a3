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

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace dofbc
{
    // Stream domains, used as the first key word so that different consumers of the
    // same (seed, trial) never share a substream.
    enum class StreamDomain : std::uint64_t
    {
        Channel = 1,
        Campaign = 2,
        EquivalentChannel = 3,
        Quantizer = 4,
        Test = 99,
    };

    /// Counter-based random stream (SplitMix64 over a keyed start state).
    ///
    /// A stream is fully determined by its seed and key words, so trials keyed by their
    /// index can run in any order or on any thread and still see identical draws.
    /// Normal variates use Box-Muller on 53-bit uniforms, which keeps the output
    /// independent of the standard library implementation.
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key);

        std::uint64_t next_u64();

        /// Uniform on the open interval (0, 1).
        double uniform();

        double normal();

        /// Circularly-symmetric complex Gaussian with E|x|^2 = variance.
        std::complex<double> complex_normal(double variance = 1.0);

    private:
        std::uint64_t state_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };
}
