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

#include "dofbc/simlink.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "dofbc/error.hpp"

namespace dofbc
{
    namespace
    {
        constexpr double ln2 = 0.69314718055994530942;

        double stream_power(const PhaseSpec &phase, Stream s, double snr)
        {
            return phase.has(s) ? std::pow(snr, phase.power_exp(s)) : 0.0;
        }

        const CVec2 &beam_of(const BeamformerSet &beams, Stream s)
        {
            switch (s)
            {
            case Stream::A:
                return beams.u;
            case Stream::A_P:
                return beams.u_p;
            case Stream::B:
                return beams.v;
            case Stream::B_P:
                return beams.v_p;
            case Stream::C:
                break;
            }
            return beams.w;
        }

        const CVec2 &channel_of(const ChannelRealization &real, int user)
        {
            return user == 1 ? real.h : real.g;
        }

        // Received power of one stream at one user for the realization.
        double received_power(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                              int user, Stream s, double snr)
        {
            return std::norm(tdot(channel_of(real, user), beam_of(beams, s))) * stream_power(phase, s, snr);
        }

        // One scalar observation of two unknowns with Gaussian noise of the given power.
        struct Row
        {
            cplx g0, g1;
            double noise;
        };

        // log2 det(I + diag(q) G^H G) with G = N^{-1/2} [rows], up to two rows, expanded
        // as 1 + q0 |c0|^2 + q1 |c1|^2 + q0 q1 |det G|^2 to stay accurate when the
        // streams' powers differ by many orders of magnitude.
        double log2det(const std::vector<Row> &rows, double q0, double q1)
        {
            std::array<cplx, 2> c0{}, c1{};
            std::size_t n = 0;
            for (const auto &r : rows)
            {
                if (!std::isfinite(r.noise))
                    continue;
                const double s = 1.0 / std::sqrt(r.noise);
                c0[n] = s * r.g0;
                c1[n] = s * r.g1;
                ++n;
            }
            const double n0 = std::norm(c0[0]) + std::norm(c0[1]);
            const double n1 = std::norm(c1[0]) + std::norm(c1[1]);
            const double det = n == 2 ? std::norm(c0[0] * c1[1] - c0[1] * c1[0]) : 0.0;
            return std::log1p(q0 * n0 + q1 * n1 + q0 * q1 * det) / ln2;
        }

        // Chain-rule split of a user's MI between its first and second stream.
        std::pair<double, double> chain(const std::vector<Row> &rows, double q0, double q1)
        {
            const double second = log2det(rows, 0.0, q1);
            const double both = log2det(rows, q0, q1);
            return {std::max(0.0, both - second), second};
        }

        PrivateMi private_mi(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                             double distortion_a, double distortion_b, double snr)
        {
            const double qa = stream_power(phase, Stream::A, snr), qap = stream_power(phase, Stream::A_P, snr);
            const double qb = stream_power(phase, Stream::B, snr), qbp = stream_power(phase, Stream::B_P, snr);
            const bool quant_a = phase.quant_prelog_a > 0.0, quant_b = phase.quant_prelog_b > 0.0;

            const cplx hu = tdot(real.h, beams.u), hup = tdot(real.h, beams.u_p);
            const cplx hv = tdot(real.h, beams.v), hvp = tdot(real.h, beams.v_p);
            const cplx gu = tdot(real.g, beams.u), gup = tdot(real.g, beams.u_p);
            const cplx gv = tdot(real.g, beams.v), gvp = tdot(real.g, beams.v_p);

            const double b_at_1 = std::norm(hv) * qb + std::norm(hvp) * qbp;
            const double a_at_2 = std::norm(gu) * qa + std::norm(gup) * qap;

            std::vector<Row> rows1{{hu, hup, 1.0 + (quant_b ? distortion_b : b_at_1)}};
            if (quant_a)
                rows1.push_back({gu, gup, distortion_a});

            std::vector<Row> rows2;
            if (quant_b)
                rows2.push_back({hv, hvp, distortion_b});
            rows2.push_back({gv, gvp, 1.0 + (quant_a ? distortion_a : a_at_2)});

            PrivateMi out;
            std::tie(out.a, out.a_p) = chain(rows1, qa, qap);
            std::tie(out.b, out.b_p) = chain(rows2, qb, qbp);
            return out;
        }
    }

    // ------------------------------------------------------------------------

    Symbols draw_symbols(const PhaseSpec &phase, double snr, RandomStream &rng)
    {
        Symbols s;
        s.a = rng.complex_normal(stream_power(phase, Stream::A, snr));
        s.a_p = rng.complex_normal(stream_power(phase, Stream::A_P, snr));
        s.b = rng.complex_normal(stream_power(phase, Stream::B, snr));
        s.b_p = rng.complex_normal(stream_power(phase, Stream::B_P, snr));
        s.c = rng.complex_normal(stream_power(phase, Stream::C, snr));
        return s;
    }

    InterferenceTerms interference_terms(const ChannelRealization &real, const BeamformerSet &beams,
                                         const Symbols &symbols)
    {
        return {tdot(real.g_tilde, beams.u) * symbols.a + tdot(real.g, beams.u_p) * symbols.a_p,
                tdot(real.h_tilde, beams.v) * symbols.b + tdot(real.h, beams.v_p) * symbols.b_p};
    }

    InterferenceVariances interference_variances(const ChannelRealization &real, const BeamformerSet &beams,
                                                 const PhaseSpec &phase, double snr)
    {
        return {std::norm(tdot(real.g_tilde, beams.u)) * stream_power(phase, Stream::A, snr) +
                    std::norm(tdot(real.g, beams.u_p)) * stream_power(phase, Stream::A_P, snr),
                std::norm(tdot(real.h_tilde, beams.v)) * stream_power(phase, Stream::B, snr) +
                    std::norm(tdot(real.h, beams.v_p)) * stream_power(phase, Stream::B_P, snr)};
    }

    double nominal_received_exponent(const PhaseSpec &phase, const CsitQuality &q, int user, Stream stream)
    {
        if (user != 1 && user != 2)
            throw DomainError("nominal_received_exponent: user must be 1 or 2");
        const double p = phase.power_exp(stream);
        if (user == 1 && stream == Stream::B)
            return p - q.alpha1();
        if (user == 2 && stream == Stream::A)
            return p - q.alpha2();
        return p;
    }

    // ------------------------------------------------------------------------

    namespace
    {
        constexpr double range_sds = 4.5;

        double reconstruct(double x, double center, double sd, long long levels)
        {
            if (sd == 0.0)
                return center;
            const double lo = center - range_sds * sd;
            const double width = 2.0 * range_sds * sd / static_cast<double>(levels);
            const double k = std::clamp(std::floor((x - lo) / width), 0.0, static_cast<double>(levels - 1));
            return lo + (k + 0.5) * width;
        }

        // Shared front end: argument checks, source power, cell count. Returns false when
        // nothing is left to quantize (empty batch or pass-through).
        bool prepare(std::span<const cplx> samples, double budget_prelog, double snr, QuantizedBatch &out,
                     long long &levels)
        {
            if (!(budget_prelog >= 0.0))
                throw DomainError("quantize_interference: negative budget");
            if (!(snr > 0.0))
                throw DomainError("quantize_interference: snr must be positive");

            out.record.budget_prelog = budget_prelog;
            out.values.assign(samples.size(), cplx{});
            out.record.source_power_exp = 0.0;
            out.record.measured_distortion = 0.0;
            if (samples.empty())
                return false;

            double power = 0.0;
            for (const auto &x : samples)
                power += std::norm(x);
            power /= static_cast<double>(samples.size());
            if (power > 0.0 && snr != 1.0)
                out.record.source_power_exp = std::log(power) / std::log(snr);

            const double bits = budget_prelog * std::log2(snr);
            const double cells = std::ceil(std::exp2(std::max(bits, 0.0) / 2.0) - 1e-9);
            levels = std::clamp(static_cast<long long>(cells), 1LL, 1LL << 30);
            out.record.levels_per_part = static_cast<int>(levels);
            if (levels == 1)
            {
                out.record.pass_through = power > 0.0;
                out.record.measured_distortion = power;
                return false;
            }
            return true;
        }

        void finish(std::span<const cplx> samples, QuantizedBatch &out)
        {
            double dist = 0.0;
            for (std::size_t i = 0; i < samples.size(); ++i)
                dist += std::norm(samples[i] - out.values[i]);
            out.record.measured_distortion = dist / static_cast<double>(samples.size());
        }
    }

    QuantizedBatch quantize_interference(std::span<const cplx> samples, double budget_prelog, double snr)
    {
        QuantizedBatch out;
        long long levels = 1;
        if (!prepare(samples, budget_prelog, snr, out, levels))
            return out;

        const double n = static_cast<double>(samples.size());
        double mr = 0.0, mi = 0.0;
        for (const auto &x : samples)
        {
            mr += x.real();
            mi += x.imag();
        }
        mr /= n;
        mi /= n;
        double vr = 0.0, vi = 0.0;
        for (const auto &x : samples)
        {
            vr += (x.real() - mr) * (x.real() - mr);
            vi += (x.imag() - mi) * (x.imag() - mi);
        }
        const double sr = std::sqrt(vr / n), si = std::sqrt(vi / n);

        for (std::size_t i = 0; i < samples.size(); ++i)
            out.values[i] = {reconstruct(samples[i].real(), mr, sr, levels),
                             reconstruct(samples[i].imag(), mi, si, levels)};
        finish(samples, out);
        return out;
    }

    QuantizedBatch quantize_interference(std::span<const cplx> samples, std::span<const double> variances,
                                         double budget_prelog, double snr)
    {
        if (variances.size() != samples.size())
            throw DomainError("quantize_interference: one variance per sample required");
        for (double v : variances)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw DomainError("quantize_interference: variances must be finite and non-negative");

        QuantizedBatch out;
        long long levels = 1;
        if (!prepare(samples, budget_prelog, snr, out, levels))
            return out;

        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double sd = std::sqrt(variances[i] / 2.0);
            out.values[i] = {reconstruct(samples[i].real(), 0.0, sd, levels),
                             reconstruct(samples[i].imag(), 0.0, sd, levels)};
        }
        finish(samples, out);
        return out;
    }

    // ------------------------------------------------------------------------

    UserPair decode_c_mi(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                         double snr)
    {
        if (!phase.has(Stream::C))
            return {};
        auto at = [&](int user) {
            const double s = received_power(real, beams, phase, user, Stream::C, snr);
            double i = 0.0;
            for (Stream o : {Stream::A, Stream::A_P, Stream::B, Stream::B_P})
                i += received_power(real, beams, phase, user, o, snr);
            return std::log1p(s / (1.0 + i)) / ln2;
        };
        return {at(1), at(2)};
    }

    double PrivateMi::of(Stream s) const
    {
        switch (s)
        {
        case Stream::A:
            return a;
        case Stream::A_P:
            return a_p;
        case Stream::B:
            return b;
        case Stream::B_P:
            return b_p;
        case Stream::C:
            break;
        }
        throw DomainError("PrivateMi::of: c is not a private stream");
    }

    PrivateMi mimo_backsub_mi(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                              double distortion_a, double distortion_b, double snr)
    {
        if (!(phase.quant_total() > 0.0))
            throw DomainError("mimo_backsub_mi: phase quantizes no interference");
        if (!(distortion_a >= 0.0) || !(distortion_b >= 0.0))
            throw DomainError("mimo_backsub_mi: distortion must be non-negative");
        return private_mi(real, beams, phase, distortion_a, distortion_b, snr);
    }

    PrivateMi final_phase_mi(const ChannelRealization &real, const BeamformerSet &beams, const PhaseSpec &phase,
                             double snr)
    {
        if (phase.quant_total() != 0.0)
            throw DomainError("final_phase_mi: phase still quantizes interference");
        return private_mi(real, beams, phase, 0.0, 0.0, snr);
    }

    // ------------------------------------------------------------------------

    void validate_config(const TrialConfig &cfg)
    {
        const auto &g = cfg.snr_grid;
        if (g.size() < 3)
            throw DomainError("snr grid needs at least 3 points");
        for (double p : g)
            if (!(p > 0.0) || !(p <= max_grid_snr * (1.0 + 1e-12)))
                throw DomainError("snr grid values must lie in (0, 1e8]");
        const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
        if (*hi / *lo < 1e3 * (1.0 - 1e-9))
            throw DomainError("snr grid must span at least 3 decades");
        if (cfg.trials < 1)
            throw DomainError("trials must be >= 1");
        const auto rep = validate_plan(cfg.plan);
        if (!rep.valid())
            throw DomainError("campaign plan does not validate");
    }

    std::vector<double> snr_grid_db(double min_db, double max_db, int points)
    {
        if (points < 2)
            throw DomainError("snr_grid_db: need at least 2 points");
        if (!(max_db > min_db))
            throw DomainError("snr_grid_db: max must exceed min");
        std::vector<double> out;
        for (int i = 0; i < points; ++i)
        {
            const double db = min_db + (max_db - min_db) * i / (points - 1);
            out.push_back(std::pow(10.0, db / 10.0));
        }
        return out;
    }

    LineFit fit_line(std::span<const double> x, std::span<const double> y)
    {
        if (x.size() != y.size() || x.size() < 2)
            throw DomainError("fit_line: need matching series of at least 2 points");
        const double n = static_cast<double>(x.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            mx += x[i];
            my += y[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        if (sxx == 0.0)
            throw DomainError("fit_line: x values are all equal");
        const double slope = sxy / sxx;
        return {slope, my - slope * mx};
    }

    const StreamSeries *LinkReport::find(std::size_t phase, Stream s) const
    {
        for (const auto &x : streams)
            if (x.phase == phase && x.stream == s)
                return &x;
        return nullptr;
    }

    const ReceivedSeries *LinkReport::find_received(std::size_t phase, int user, Stream s) const
    {
        for (const auto &x : received)
            if (x.phase == phase && x.user == user && x.stream == s)
                return &x;
        return nullptr;
    }

    const QuantSeries *LinkReport::find_quant(std::size_t phase, char side) const
    {
        for (const auto &x : quant)
            if (x.phase == phase && x.side == side)
                return &x;
        return nullptr;
    }

    // ------------------------------------------------------------------------

    namespace
    {
        struct SlotState
        {
            ChannelRealization real{.h = {}, .g = {}, .h_hat = {}, .g_hat = {}, .h_tilde = {}, .g_tilde = {},
                                    .snr = 1.0, .quality = CsitQuality(0.0, 0.0)};
            BeamformerSet beams;
            InterferenceTerms terms{};
            InterferenceVariances var{};
        };

        // c at users 1 and 2, four private streams, then received power of every
        // stream at user 1 followed by user 2.
        constexpr std::size_t n_out = 2 + 4 + 10;
        using SlotOut = std::array<double, n_out>;

        std::size_t stream_index(Stream s)
        {
            return static_cast<std::size_t>(s);
        }

        template <typename F>
        void parallel_trials(std::size_t trials, unsigned threads, F &&body)
        {
            const std::size_t nt = std::clamp<std::size_t>(threads, 1, trials);
            if (nt == 1)
            {
                for (std::size_t i = 0; i < trials; ++i)
                    body(i);
                return;
            }
            std::vector<std::thread> pool;
            const std::size_t chunk = (trials + nt - 1) / nt;
            for (std::size_t t = 0; t < nt; ++t)
            {
                const std::size_t lo = t * chunk, hi = std::min(trials, lo + chunk);
                pool.emplace_back([lo, hi, &body] {
                    for (std::size_t i = lo; i < hi; ++i)
                        body(i);
                });
            }
            for (auto &th : pool)
                th.join();
        }

        double safe_log2(double x)
        {
            return std::log2(std::max(x, std::numeric_limits<double>::min()));
        }
    }

    LinkReport run_campaign(const TrialConfig &cfg)
    {
        validate_config(cfg);
        const auto &plan = cfg.plan;
        const auto &grid = cfg.snr_grid;
        const std::size_t np = grid.size(), nt = cfg.trials;
        unsigned threads = cfg.threads;
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());

        LinkReport rep{.scheme = plan.scheme,
                       .quality = plan.quality,
                       .delta = plan.delta,
                       .snr_grid = grid,
                       .trials = nt,
                       .seed = cfg.seed,
                       .durations = {},
                       .streams = {},
                       .received = {},
                       .quant = {},
                       .estimate = {},
                       .accounted = achieved_dof(plan).point()};

        std::vector<double> x(np);
        for (std::size_t j = 0; j < np; ++j)
            x[j] = std::log2(grid[j]);

        std::vector<SlotState> state(nt);
        std::vector<SlotOut> out(nt);
        std::vector<cplx> samples(nt);
        std::vector<double> variances(nt);

        for (std::size_t s = 0; s < plan.phases.size(); ++s)
        {
            const auto &phase = plan.phases[s];
            rep.durations.push_back(phase.real_duration);

            // mean over trials of every output, per grid point
            std::vector<SlotOut> mean(np);
            std::vector<QuantRecord> rec_a, rec_b;

            for (std::size_t j = 0; j < np; ++j)
            {
                const double snr = grid[j];
                parallel_trials(nt, threads, [&](std::size_t i) {
                    RandomStream rng(cfg.seed, {static_cast<std::uint64_t>(StreamDomain::Campaign), s, i});
                    auto &st = state[i];
                    st.real = sample_channel(plan.quality, snr, rng);
                    st.beams = make_beamformers(st.real, rng, BeamPolicy::RandomIfUninformative);
                    st.terms = interference_terms(st.real, st.beams, draw_symbols(phase, snr, rng));
                    st.var = interference_variances(st.real, st.beams, phase, snr);
                });

                double da = 0.0, db = 0.0;
                if (phase.quant_prelog_a > 0.0)
                {
                    for (std::size_t i = 0; i < nt; ++i)
                    {
                        samples[i] = state[i].terms.c_bar_a;
                        variances[i] = state[i].var.a;
                    }
                    const auto qb = quantize_interference(samples, variances, phase.quant_prelog_a, snr);
                    da = qb.record.measured_distortion;
                    rec_a.push_back(qb.record);
                }
                if (phase.quant_prelog_b > 0.0)
                {
                    for (std::size_t i = 0; i < nt; ++i)
                    {
                        samples[i] = state[i].terms.c_bar_b;
                        variances[i] = state[i].var.b;
                    }
                    const auto qb = quantize_interference(samples, variances, phase.quant_prelog_b, snr);
                    db = qb.record.measured_distortion;
                    rec_b.push_back(qb.record);
                }

                parallel_trials(nt, threads, [&](std::size_t i) {
                    const auto &st = state[i];
                    auto &o = out[i];
                    const auto c = decode_c_mi(st.real, st.beams, phase, snr);
                    const auto p = phase.quant_total() > 0.0
                                       ? mimo_backsub_mi(st.real, st.beams, phase, da, db, snr)
                                       : final_phase_mi(st.real, st.beams, phase, snr);
                    o[0] = c.user1;
                    o[1] = c.user2;
                    o[2] = p.a;
                    o[3] = p.a_p;
                    o[4] = p.b;
                    o[5] = p.b_p;
                    for (int user = 1; user <= 2; ++user)
                        for (Stream str : all_streams)
                            o[6 + 5 * (user - 1) + stream_index(str)] =
                                received_power(st.real, st.beams, phase, user, str, snr);
                });

                auto &m = mean[j];
                m.fill(0.0);
                for (std::size_t i = 0; i < nt; ++i)
                    for (std::size_t k = 0; k < n_out; ++k)
                        m[k] += out[i][k];
                for (auto &v : m)
                    v /= static_cast<double>(nt);
            }

            for (const auto &b : phase.budgets)
            {
                StreamSeries ser{.phase = s, .stream = b.stream, .prelog = b.prelog, .mi = {}, .fit = {},
                                 .mi_user1 = {}, .mi_user2 = {}};
                for (std::size_t j = 0; j < np; ++j)
                {
                    if (b.stream == Stream::C)
                    {
                        ser.mi_user1.push_back(mean[j][0]);
                        ser.mi_user2.push_back(mean[j][1]);
                        ser.mi.push_back(std::min(mean[j][0], mean[j][1]));
                    }
                    else
                        ser.mi.push_back(mean[j][2 + stream_index(b.stream)]);
                }
                ser.fit = fit_line(x, ser.mi);
                rep.streams.push_back(std::move(ser));

                for (int user = 1; user <= 2; ++user)
                {
                    ReceivedSeries r{.phase = s, .user = user, .stream = b.stream,
                                     .nominal_exp = nominal_received_exponent(phase, plan.quality, user, b.stream),
                                     .power = {}, .fit = {}};
                    std::vector<double> y;
                    for (std::size_t j = 0; j < np; ++j)
                    {
                        r.power.push_back(mean[j][6 + 5 * (user - 1) + stream_index(b.stream)]);
                        y.push_back(safe_log2(r.power.back()));
                    }
                    r.fit = fit_line(x, y);
                    rep.received.push_back(std::move(r));
                }
            }

            auto add_quant = [&](char side, std::vector<QuantRecord> &recs) {
                if (recs.empty())
                    return;
                std::vector<double> ys, yd;
                for (std::size_t j = 0; j < np; ++j)
                {
                    ys.push_back(recs[j].source_power_exp * x[j]);
                    yd.push_back(safe_log2(recs[j].measured_distortion));
                }
                rep.quant.push_back(QuantSeries{.phase = s, .side = side, .records = std::move(recs),
                                                .source_fit = fit_line(x, ys), .distortion_fit = fit_line(x, yd)});
            };
            add_quant('a', rec_a);
            add_quant('b', rec_b);
        }

        double total = 0.0, d1 = 0.0, d2 = 0.0;
        for (const auto &ser : rep.streams)
        {
            const double t = rep.durations[ser.phase];
            switch (ser.stream)
            {
            case Stream::A:
            case Stream::A_P:
                d1 += t * ser.fit.slope;
                break;
            case Stream::B:
            case Stream::B_P:
                d2 += t * ser.fit.slope;
                break;
            case Stream::C:
                if (plan.c_credit_user2)
                    d2 += t * ser.fit.slope;
                break;
            }
        }
        for (double t : rep.durations)
            total += t;
        rep.estimate = {d1 / total, d2 / total};
        return rep;
    }
}
