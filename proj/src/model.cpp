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

#include "dofbc/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dofbc/error.hpp"

namespace dofbc
{
    double norm(const CVec2 &a)
    {
        return std::sqrt(std::norm(a[0]) + std::norm(a[1]));
    }

    CVec2 operator+(const CVec2 &a, const CVec2 &b)
    {
        return {a[0] + b[0], a[1] + b[1]};
    }

    CVec2 operator-(const CVec2 &a, const CVec2 &b)
    {
        return {a[0] - b[0], a[1] - b[1]};
    }

    CVec2 operator*(double s, const CVec2 &a)
    {
        return {s * a[0], s * a[1]};
    }

    CsitQuality::CsitQuality(double alpha1, double alpha2) : alpha1_(alpha1), alpha2_(alpha2)
    {
        // negated comparisons also reject NaN
        if (!(alpha1 <= 1.0 && alpha1 >= alpha2 && alpha2 >= 0.0))
            throw DomainError("CSIT quality requires 1 >= alpha1 >= alpha2 >= 0, got (" +
                              std::to_string(alpha1) + ", " + std::to_string(alpha2) + ")");
    }

    ChannelRealization sample_channel(const CsitQuality &quality, double snr, RandomStream &rng)
    {
        if (!(snr > 0.0) || !std::isfinite(snr))
            throw DomainError("sample_channel: snr must be positive and finite");

        const double err1 = std::exp(-quality.alpha1() * std::log(snr));
        const double err2 = std::exp(-quality.alpha2() * std::log(snr));

        // Draw standard variates first, then scale: the underlying draws do not depend
        // on snr, so a fixed substream gives common random numbers across an SNR grid.
        std::array<cplx, 8> n{};
        for (auto &x : n)
            x = rng.complex_normal(1.0);

        const double est1 = std::sqrt(std::max(0.0, 1.0 - err1));
        const double est2 = std::sqrt(std::max(0.0, 1.0 - err2));
        const double e1 = std::sqrt(err1);
        const double e2 = std::sqrt(err2);

        ChannelRealization r{.h = {},
                             .g = {},
                             .h_hat = {est1 * n[0], est1 * n[1]},
                             .g_hat = {est2 * n[4], est2 * n[5]},
                             .h_tilde = {e1 * n[2], e1 * n[3]},
                             .g_tilde = {e2 * n[6], e2 * n[7]},
                             .snr = snr,
                             .quality = quality};
        r.h = r.h_hat + r.h_tilde;
        r.g = r.g_hat + r.g_tilde;
        return r;
    }

    CVec2 zero_forcing_direction(const CVec2 &estimate)
    {
        const double n = norm(estimate);
        if (!(n > 0.0))
            throw DegenerateInputError("zero-forcing against a zero estimate vector");
        // In C^2 the annihilator of e under x -> e^T x is spanned by (-e1, e0).
        return {-estimate[1] / n, estimate[0] / n};
    }

    CVec2 random_unit_vector(RandomStream &rng)
    {
        for (;;)
        {
            CVec2 x{rng.complex_normal(), rng.complex_normal()};
            const double n = norm(x);
            if (n > 1e-300)
                return (1.0 / n) * x;
        }
    }

    BeamformerSet make_beamformers(const ChannelRealization &real, RandomStream &rng, BeamPolicy policy)
    {
        BeamformerSet b{};
        b.u_p = random_unit_vector(rng);
        b.v_p = random_unit_vector(rng);
        b.w = random_unit_vector(rng);

        auto zf = [&](const CVec2 &estimate) {
            if (policy == BeamPolicy::RandomIfUninformative && norm(estimate) == 0.0)
                return random_unit_vector(rng);
            return zero_forcing_direction(estimate);
        };
        b.u = zf(real.g_hat);
        b.v = zf(real.h_hat);
        return b;
    }

    std::optional<EquivalentChannelStats> equivalent_channel_stats(const ChannelRealization &real,
                                                                   const BeamformerSet &beams,
                                                                   RandomStream &rng)
    {
        const cplx z1 = rng.complex_normal();
        const cplx z2 = rng.complex_normal();

        const cplx den1 = tdot(real.h, beams.u);
        const cplx den2 = tdot(real.g, beams.v);
        if (std::abs(den1) < denominator_guard || std::abs(den2) < denominator_guard)
            return std::nullopt;

        const double logp = std::log(real.snr);
        const double s1 = std::exp(0.5 * real.quality.alpha1() * logp);
        const double s2 = std::exp(0.5 * real.quality.alpha2() * logp);

        return EquivalentChannelStats{.h_prime = s1 * tdot(real.h_tilde, beams.v) / den1,
                                      .g_prime = s2 * tdot(real.g_tilde, beams.u) / den2,
                                      .z1_prime = z1 / den1,
                                      .z2_prime = z2 / den2};
    }

    namespace
    {
        struct ComplexMoments
        {
            cplx sum{};
            double sum_sq = 0.0;

            void add(cplx x)
            {
                sum += x;
                sum_sq += std::norm(x);
            }

            double variance(std::size_t n) const
            {
                const double dn = static_cast<double>(n);
                return sum_sq / dn - std::norm(sum / dn);
            }
        };
    }

    EquivalentChannelVariances equivalent_channel_variances(const CsitQuality &quality, double snr,
                                                            std::size_t draws, std::uint64_t seed)
    {
        if (draws < 2)
            throw DomainError("equivalent_channel_variances: need at least two draws");

        ComplexMoments hp, gp, z1, z2;
        std::size_t resampled = 0;
        for (std::size_t i = 0; i < draws; ++i)
        {
            for (std::uint64_t attempt = 0;; ++attempt)
            {
                RandomStream rng(seed, {static_cast<std::uint64_t>(StreamDomain::EquivalentChannel), i, attempt});
                const auto real = sample_channel(quality, snr, rng);
                const auto beams = make_beamformers(real, rng, BeamPolicy::RandomIfUninformative);
                if (auto s = equivalent_channel_stats(real, beams, rng))
                {
                    hp.add(s->h_prime);
                    gp.add(s->g_prime);
                    z1.add(s->z1_prime);
                    z2.add(s->z2_prime);
                    break;
                }
                ++resampled;
            }
        }
        return {.h_prime = hp.variance(draws),
                .g_prime = gp.variance(draws),
                .z1_prime = z1.variance(draws),
                .z2_prime = z2.variance(draws),
                .resampled = resampled};
    }
}
