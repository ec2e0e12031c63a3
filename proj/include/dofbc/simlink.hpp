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

#include <cstdint>
#include <span>
#include <vector>

#include "dofbc/dofcalc.hpp"
#include "dofbc/model.hpp"
#include "dofbc/scheduler.hpp"

namespace dofbc
{
    // ------------------------------------------------------------------------
    // Per-slot signal construction
    // ------------------------------------------------------------------------

    /// Transmitted symbols of one slot; absent streams are zero.
    struct Symbols
    {
        cplx a{}, a_p{}, b{}, b_p{}, c{};
    };

    /// Gaussian symbols with E|s|^2 = P^power_exp for every stream of the phase.
    /// Always consumes five complex draws so the stream position does not depend on the phase.
    Symbols draw_symbols(const PhaseSpec &phase, double snr, RandomStream &rng);

    /// Interference overheard by the two users: c_bar_b at user 1, c_bar_a at user 2.
    struct InterferenceTerms
    {
        cplx c_bar_a; // g_tilde^T u a + g^T u' a'
        cplx c_bar_b; // h_tilde^T v b + h^T v' b'
    };

    InterferenceTerms interference_terms(const ChannelRealization &real, const BeamformerSet &beams,
                                         const Symbols &symbols);

    /// Conditional variances of c_bar_a and c_bar_b given the slot's channel and beams,
    /// i.e. what the transmitter knows once the slot's CSI is fed back.
    struct InterferenceVariances
    {
        double a;
        double b;
    };

    InterferenceVariances interference_variances(const ChannelRealization &real, const BeamformerSet &beams,
                                                 const PhaseSpec &phase, double snr);

    /// Received power exponent annotated for `stream` at `user` (1 or 2). Zero-forced
    /// cross streams lose alpha of the victim; everything else arrives at its power exponent.
    double nominal_received_exponent(const PhaseSpec &phase, const CsitQuality &q, int user, Stream stream);

    // ------------------------------------------------------------------------
    // Quantization of the reconstructed interference
    // ------------------------------------------------------------------------

    struct QuantRecord
    {
        double source_power_exp;    // log E|c_bar|^2 / log P
        double budget_prelog;       // bits per sample / log2 P
        double measured_distortion; // E|c_tilde|^2
        int levels_per_part = 1;
        bool pass_through = false; // zero budget: nothing sent, distortion = sample power
    };

    struct QuantizedBatch
    {
        std::vector<cplx> values;
        QuantRecord record;
    };

    /// Uniform scalar quantizer applied separately to real and imaginary parts over
    /// mean +- 4.5 sample standard deviations. Each part gets ceil(2^(bits/2)) cells with
    /// bits = budget_prelog log2 P, so the index pair fits in bits + o(1) bits.
    /// A budget below one cell per part sends nothing (values are zero, flagged).
    QuantizedBatch quantize_interference(std::span<const cplx> samples, double budget_prelog, double snr);

    /// Same cell rule with a per-sample range: sample i is quantized over 0 +- 4.5 sigma_i
    /// per part, sigma_i^2 = variances[i] / 2. With Gaussian symbols c_bar is Gaussian given
    /// the slot's channel, while its unconditional law is heavy tailed; a batch-wide range
    /// then clips the tail and the distortion grows with P.
    QuantizedBatch quantize_interference(std::span<const cplx> samples, std::span<const double> variances,
                                         double budget_prelog, double snr);

    // ------------------------------------------------------------------------
    // Decoding steps, expressed as Gaussian mutual information in bits per slot
    // ------------------------------------------------------------------------

    struct UserPair
    {
        double user1 = 0.0;
        double user2 = 0.0;
    };

    /// MI of c at each user with every other stream of the phase treated as noise.
    UserPair decode_c_mi(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                         double snr);

    /// Per-stream MI of the private streams. Within a user the first stream (a, b) is
    /// decoded with the second (a', b') as noise, then the second given the first; the
    /// pair sums to the log-det MI of the user's observation.
    struct PrivateMi
    {
        double a = 0.0, a_p = 0.0, b = 0.0, b_p = 0.0;

        double user1() const { return a + a_p; }
        double user2() const { return b + b_p; }
        double of(Stream s) const;
    };

    /// Back-substitution in a phase whose interference was quantized and delivered by the
    /// next phase's c. User 1 stacks y1 (c removed, c_hat_b subtracted) with c_hat_a into a
    /// 2x2 channel [h^T; g^T][u u'] with noise diag(1 + D_b, D_a); user 2 symmetrically with
    /// noise diag(D_b, 1 + D_a). A side without quantization budget leaves its interference
    /// in the direct observation, which reduces that user's channel to one row (X2 user 2).
    /// Throws DomainError when the phase quantizes nothing.
    PrivateMi mimo_backsub_mi(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                              double distortion_a, double distortion_b, double snr);

    /// Final phase: after removing c each user sees a SISO channel with the other user's
    /// stream as noise. Throws DomainError when the phase still quantizes interference.
    PrivateMi final_phase_mi(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                             double snr);

    // ------------------------------------------------------------------------
    // Campaign
    // ------------------------------------------------------------------------

    inline constexpr double max_grid_snr = 1e8;

    struct TrialConfig
    {
        PhasePlan plan;
        std::vector<double> snr_grid;
        std::size_t trials = 1000;
        std::uint64_t seed = 1;
        unsigned threads = 0; // 0: hardware concurrency
    };

    /// Throws DomainError unless the grid has >= 3 points spanning >= 3 decades within
    /// (0, 1e8], trials >= 1 and the plan validates.
    void validate_config(const TrialConfig &cfg);

    /// `points` SNR values geometrically spaced from min_db to max_db.
    std::vector<double> snr_grid_db(double min_db, double max_db, int points);

    struct LineFit
    {
        double slope = 0.0;
        double intercept = 0.0;
    };

    /// Ordinary least squares y = slope x + intercept. Throws DomainError for < 2 points.
    LineFit fit_line(std::span<const double> x, std::span<const double> y);

    struct StreamSeries
    {
        std::size_t phase;
        Stream stream;
        double prelog;
        std::vector<double> mi; // per grid point; for c the minimum over both users
        LineFit fit;            // MI vs log2 P
        std::vector<double> mi_user1, mi_user2; // c only
    };

    struct ReceivedSeries
    {
        std::size_t phase;
        int user;
        Stream stream;
        double nominal_exp;
        std::vector<double> power; // E|received term|^2 per grid point
        LineFit fit;               // log2 power vs log2 P
    };

    struct QuantSeries
    {
        std::size_t phase;
        char side; // 'a' or 'b'
        std::vector<QuantRecord> records;
        LineFit source_fit;     // log2 E|c_bar|^2 vs log2 P
        LineFit distortion_fit; // log2 E|c_tilde|^2 vs log2 P
    };

    struct LinkReport
    {
        Scheme scheme;
        CsitQuality quality;
        double delta;
        std::vector<double> snr_grid;
        std::size_t trials;
        std::uint64_t seed;
        std::vector<double> durations; // real phase durations used for the estimate
        std::vector<StreamSeries> streams;
        std::vector<ReceivedSeries> received;
        std::vector<QuantSeries> quant;
        DofPoint estimate;  // duration-weighted measured slopes
        DofPoint accounted; // achieved_dof of the plan

        const StreamSeries *find(std::size_t phase, Stream s) const;
        const ReceivedSeries *find_received(std::size_t phase, int user, Stream s) const;
        const QuantSeries *find_quant(std::size_t phase, char side) const;
    };

    /// Monte Carlo over every phase and grid point. Slot i of phase s draws from the
    /// substream (seed, Campaign, s, i) at every SNR, and all averages are reduced in
    /// trial order, so results do not depend on the thread count.
    LinkReport run_campaign(const TrialConfig &cfg);
}
