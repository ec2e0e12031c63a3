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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dofbc/error.hpp"
#include "dofbc/model.hpp"

using namespace dofbc;

namespace
{
    double mean_half_error_power(const CsitQuality &q, double snr, int n, bool user1)
    {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
        {
            RandomStream rng(11, {static_cast<std::uint64_t>(StreamDomain::Test), static_cast<std::uint64_t>(i)});
            const auto r = sample_channel(q, snr, rng);
            const auto &e = user1 ? r.h_tilde : r.g_tilde;
            acc += 0.5 * (std::norm(e[0]) + std::norm(e[1]));
        }
        return acc / n;
    }

    double slope(const std::vector<double> &x, const std::vector<double> &y)
    {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            mx += x[i], my += y[i];
        mx /= x.size();
        my /= y.size();
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
        return sxy / sxx;
    }
}

TEST_CASE("csit quality ordering is enforced")
{
    CHECK_NOTHROW(CsitQuality(1.0, 1.0));
    CHECK_NOTHROW(CsitQuality(0.0, 0.0));
    CHECK_NOTHROW(CsitQuality(0.5, 0.2));
    CHECK_THROWS_AS(CsitQuality(0.2, 0.5), DomainError);
    CHECK_THROWS_AS(CsitQuality(1.1, 0.0), DomainError);
    CHECK_THROWS_AS(CsitQuality(0.5, -0.1), DomainError);
    CHECK_THROWS_AS(CsitQuality(std::nan(""), 0.0), DomainError);
}

TEST_CASE("random streams are keyed and reproducible")
{
    RandomStream a(5, {1, 2, 3}), b(5, {1, 2, 3}), c(5, {1, 2, 4}), d(6, {1, 2, 3});
    const auto xa = a.next_u64();
    CHECK(xa == b.next_u64());
    CHECK(xa != c.next_u64());
    CHECK(xa != d.next_u64());

    RandomStream u(1, {9});
    double m = 0, v = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
    {
        const double x = u.uniform();
        REQUIRE(x > 0.0);
        REQUIRE(x < 1.0);
        const auto z = u.complex_normal(2.0);
        m += z.real();
        v += std::norm(z);
    }
    CHECK(std::abs(m / n) < 0.01);
    CHECK(v / n == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("sample_channel: estimate plus error is the channel")
{
    const CsitQuality q(0.5, 0.2);
    for (int i = 0; i < 100; ++i)
    {
        RandomStream rng(3, {static_cast<std::uint64_t>(i)});
        const auto r = sample_channel(q, 1e5, rng);
        for (int k = 0; k < 2; ++k)
        {
            CHECK(r.h[k] == r.h_hat[k] + r.h_tilde[k]);
            CHECK(r.g[k] == r.g_hat[k] + r.g_tilde[k]);
        }
    }
}

TEST_CASE("sample_channel: error power matches P^-alpha")
{
    const CsitQuality q(0.5, 0.2);
    CHECK(mean_half_error_power(q, 1e4, 100000, true) == doctest::Approx(1e-2).epsilon(0.05));
    CHECK(mean_half_error_power(q, 1e4, 100000, false) == doctest::Approx(std::pow(10.0, -0.8)).epsilon(0.05));

    // perfect-CSIT limit
    CHECK(mean_half_error_power(CsitQuality(1, 1), 1e6, 20000, true) == doctest::Approx(1e-6).epsilon(0.05));

    // alpha = 0: the estimate carries nothing and the error has unit power
    CHECK(mean_half_error_power(CsitQuality(0, 0), 1e6, 20000, true) == doctest::Approx(1.0).epsilon(0.05));
    RandomStream rng(1, {1});
    const auto r = sample_channel(CsitQuality(0, 0), 1e6, rng);
    CHECK(norm(r.h_hat) == 0.0);
    CHECK(norm(r.g_hat) == 0.0);
}

TEST_CASE("sample_channel: error power slope is -alpha")
{
    for (const auto &[a1, a2] : std::vector<std::pair<double, double>>{{0.5, 0.2}, {0.9, 0.3}, {0.25, 0.25}})
    {
        const CsitQuality q(a1, a2);
        std::vector<double> x, y1, y2;
        for (double p : {1e2, 1e3, 1e4, 1e5, 1e6})
        {
            x.push_back(std::log(p));
            y1.push_back(std::log(mean_half_error_power(q, p, 20000, true)));
            y2.push_back(std::log(mean_half_error_power(q, p, 20000, false)));
        }
        CHECK(std::abs(slope(x, y1) + a1) <= 0.03);
        CHECK(std::abs(slope(x, y2) + a2) <= 0.03);
    }
}

TEST_CASE("sample_channel rejects non-positive snr")
{
    RandomStream rng(1, {1});
    CHECK_THROWS_AS(sample_channel(CsitQuality(0.5, 0.2), 0.0, rng), DomainError);
    CHECK_THROWS_AS(sample_channel(CsitQuality(0.5, 0.2), -1.0, rng), DomainError);
}

TEST_CASE("sample_channel is deterministic per key")
{
    const CsitQuality q(0.7, 0.1);
    RandomStream a(42, {2, 0, 17}), b(42, {2, 0, 17});
    const auto ra = sample_channel(q, 1e3, a);
    const auto rb = sample_channel(q, 1e3, b);
    for (int k = 0; k < 2; ++k)
    {
        CHECK(ra.h[k] == rb.h[k]);
        CHECK(ra.g[k] == rb.g[k]);
        CHECK(ra.h_hat[k] == rb.h_hat[k]);
        CHECK(ra.g_tilde[k] == rb.g_tilde[k]);
    }
}

TEST_CASE("zero-forcing directions")
{
    const auto u = zero_forcing_direction({cplx{1, 0}, cplx{0, 0}});
    CHECK(std::abs(u[0]) == 0.0);
    CHECK(std::abs(u[1]) == doctest::Approx(1.0));

    const double r = 1.0 / std::sqrt(2.0);
    const auto v = zero_forcing_direction({cplx{r, 0}, cplx{r, 0}});
    // v is (1, -1)/sqrt(2) up to a phase
    CHECK(std::abs(v[0] * r - v[1] * r) == doctest::Approx(1.0));
    CHECK(std::abs(tdot({cplx{r, 0}, cplx{r, 0}}, v)) < 1e-15);

    CHECK_THROWS_AS(zero_forcing_direction({cplx{}, cplx{}}), DegenerateInputError);
}

TEST_CASE("beamformers are unit norm and orthogonal to the estimates")
{
    const CsitQuality q(0.6, 0.3);
    double worst_orth = 0.0, worst_norm = 0.0;
    for (int i = 0; i < 10000; ++i)
    {
        RandomStream rng(8, {static_cast<std::uint64_t>(i)});
        const auto r = sample_channel(q, 1e4, rng);
        const auto b = make_beamformers(r, rng);
        worst_orth = std::max({worst_orth, std::abs(tdot(r.g_hat, b.u)) / norm(r.g_hat),
                               std::abs(tdot(r.h_hat, b.v)) / norm(r.h_hat)});
        for (const auto *x : {&b.u, &b.v, &b.u_p, &b.v_p, &b.w})
            worst_norm = std::max(worst_norm, std::abs(norm(*x) - 1.0));
    }
    CHECK(worst_orth <= 1e-12);
    CHECK(worst_norm <= 1e-12);
}

TEST_CASE("beam policy for uninformative estimates")
{
    RandomStream rng(1, {1});
    const auto r = sample_channel(CsitQuality(0, 0), 1e3, rng);
    RandomStream s1(2, {1}), s2(2, {1});
    CHECK_THROWS_AS(make_beamformers(r, s1, BeamPolicy::Strict), DegenerateInputError);
    const auto b = make_beamformers(r, s2, BeamPolicy::RandomIfUninformative);
    CHECK(norm(b.u) == doctest::Approx(1.0));
    CHECK(norm(b.v) == doctest::Approx(1.0));
}

TEST_CASE("equivalent channel: zero error gives zero cross coefficient")
{
    RandomStream rng(4, {1});
    auto r = sample_channel(CsitQuality(0.5, 0.2), 1e4, rng);
    r.h_tilde = {};
    r.h = r.h_hat;
    const auto b = make_beamformers(r, rng);
    const auto s = equivalent_channel_stats(r, b, rng);
    REQUIRE(s.has_value());
    CHECK(s->h_prime == cplx{});
}

TEST_CASE("equivalent channel: guard rejects vanishing gains")
{
    RandomStream rng(4, {2});
    auto r = sample_channel(CsitQuality(0.5, 0.2), 1e4, rng);
    auto b = make_beamformers(r, rng);
    b.u = zero_forcing_direction(r.h); // h^T u = 0
    CHECK_FALSE(equivalent_channel_stats(r, b, rng).has_value());
}

TEST_CASE("equivalent channel variances do not scale with P")
{
    for (const auto &[a1, a2] : std::vector<std::pair<double, double>>{{0.5, 0.2}, {1.0, 1.0}})
    {
        const CsitQuality q(a1, a2);
        std::vector<double> x, yh, yg, y1, y2;
        for (double p : {1e3, 1e4, 1e5, 1e6, 1e7, 1e8})
        {
            const auto v = equivalent_channel_variances(q, p, 10000, 21);
            x.push_back(std::log(p));
            yh.push_back(std::log(v.h_prime));
            yg.push_back(std::log(v.g_prime));
            y1.push_back(std::log(v.z1_prime));
            y2.push_back(std::log(v.z2_prime));
        }
        INFO("alpha = (" << a1 << ", " << a2 << ")");
        CHECK(std::abs(slope(x, yh)) <= 0.05);
        CHECK(std::abs(slope(x, yg)) <= 0.05);
        CHECK(std::abs(slope(x, y1)) <= 0.05);
        CHECK(std::abs(slope(x, y2)) <= 0.05);
    }
    CHECK_THROWS_AS(equivalent_channel_variances(CsitQuality(0.5, 0.2), 1e3, 1, 1), DomainError);
}
