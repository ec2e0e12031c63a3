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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "dofbc/random.hpp"

namespace dofbc
{
    using cplx = std::complex<double>;
    using CVec2 = std::array<cplx, 2>;

    /// Bilinear product a^T b (no conjugation), the form in which channels act on beamformers.
    constexpr cplx tdot(const CVec2 &a, const CVec2 &b)
    {
        return a[0] * b[0] + a[1] * b[1];
    }

    double norm(const CVec2 &a);

    CVec2 operator+(const CVec2 &a, const CVec2 &b);
    CVec2 operator-(const CVec2 &a, const CVec2 &b);
    CVec2 operator*(double s, const CVec2 &a);

    /// Current-CSIT quality exponents, 1 >= alpha1 >= alpha2 >= 0.
    /// The estimation error of user k's channel has per-entry power P^-alpha_k.
    class CsitQuality
    {
    public:
        /// Throws DomainError unless 1 >= alpha1 >= alpha2 >= 0.
        CsitQuality(double alpha1, double alpha2);

        double alpha1() const { return alpha1_; }
        double alpha2() const { return alpha2_; }

        bool operator==(const CsitQuality &) const = default;

    private:
        double alpha1_;
        double alpha2_;
    };

    /// One timeslot: true channels, transmitter estimates, and the errors between them.
    struct ChannelRealization
    {
        CVec2 h, g;
        CVec2 h_hat, g_hat;
        CVec2 h_tilde, g_tilde;
        double snr;
        CsitQuality quality;
    };

    /// Sample one slot. Estimates have per-entry variance 1 - P^-alpha, errors P^-alpha,
    /// so h = h_hat + h_tilde has unit per-entry variance. Throws DomainError for snr <= 0.
    ChannelRealization sample_channel(const CsitQuality &quality, double snr, RandomStream &rng);

    struct BeamformerSet
    {
        CVec2 u;   // a, orthogonal to g_hat
        CVec2 v;   // b, orthogonal to h_hat
        CVec2 u_p; // a'
        CVec2 v_p; // b'
        CVec2 w;   // c
    };

    enum class BeamPolicy
    {
        /// Zero estimate vector is an error.
        Strict,
        /// Zero estimate vector (alpha = 0 under the unit-power split) carries no direction
        /// information; the zero-forcing beam is then drawn uniformly at random.
        RandomIfUninformative,
    };

    /// Unit vector x with e^T x = 0. Throws DegenerateInputError for a zero vector.
    CVec2 zero_forcing_direction(const CVec2 &estimate);

    /// Uniform direction on the complex unit sphere in C^2.
    CVec2 random_unit_vector(RandomStream &rng);

    BeamformerSet make_beamformers(const ChannelRealization &real, RandomStream &rng,
                                   BeamPolicy policy = BeamPolicy::Strict);

    /// Normalised cross coefficients and noises of the equivalent channel obtained by
    /// dividing each receiver's output by its own zero-forced gain.
    struct EquivalentChannelStats
    {
        cplx h_prime;
        cplx g_prime;
        cplx z1_prime;
        cplx z2_prime;
    };

    inline constexpr double denominator_guard = 1e-9;

    /// Draws the two unit-variance noises from rng. Returns nullopt when |h^T u| or
    /// |g^T v| is below denominator_guard; callers resample the slot.
    std::optional<EquivalentChannelStats> equivalent_channel_stats(const ChannelRealization &real,
                                                                   const BeamformerSet &beams,
                                                                   RandomStream &rng);

    struct EquivalentChannelVariances
    {
        double h_prime;
        double g_prime;
        double z1_prime;
        double z2_prime;
        std::size_t resampled;
    };

    /// Sample variances of the equivalent-channel fields over `draws` slots at one SNR.
    /// Slot i uses the substream (seed, EquivalentChannel, i, attempt), so the same seed
    /// reuses the same fading across SNR values.
    EquivalentChannelVariances equivalent_channel_variances(const CsitQuality &quality, double snr,
                                                            std::size_t draws, std::uint64_t seed);
}
