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
#include "dofbc/random.hpp"
#include "dofbc/region.hpp"
#include "dofbc/scheduler.hpp"

using namespace dofbc;

namespace
{
    // (alpha1, alpha2) on a grid of the given step, alpha1 >= alpha2
    std::vector<CsitQuality> grid(double step)
    {
        std::vector<CsitQuality> out;
        const int n = static_cast<int>(std::round(1.0 / step));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= i; ++j)
                out.emplace_back(i * step > 1.0 ? 1.0 : i * step, j * step > 1.0 ? 1.0 : j * step);
        return out;
    }
}

TEST_CASE("stream and scheme names round-trip")
{
    for (Stream s : all_streams)
        CHECK(stream_from_string(to_string(s)) == s);
    for (Scheme s : {Scheme::X1, Scheme::X2, Scheme::X3})
        CHECK(scheme_from_string(to_string(s)) == s);
    CHECK_FALSE(stream_from_string("d").has_value());
    CHECK_FALSE(scheme_from_string("X1").has_value());
}

TEST_CASE("default delta")
{
    CHECK(default_delta(CsitQuality(0.5, 0.2)) == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
    CHECK(default_delta(CsitQuality(0, 0)) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(default_delta(CsitQuality(0.4, 0.0)) == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
    CHECK_THROWS_AS(default_delta(CsitQuality(0.8, 0.0)), NotApplicableError);
}

TEST_CASE("rounding is half to even and clamped at one")
{
    CHECK(round_duration(23.11) == 23);
    CHECK(round_duration(2.5) == 2);
    CHECK(round_duration(3.5) == 4);
    CHECK(round_duration(0.2) == 1);
    CHECK(round_duration(0.5) == 1);
}

TEST_CASE("plan_x1 worked example")
{
    const auto plan = plan_x1(CsitQuality(0.5, 0.2), 0.05, 6, 9);
    const auto k = std::get<X1Constants>(plan.derived);
    CHECK(k.xi == doctest::Approx(26.0 / 9.0).epsilon(1e-14));
    CHECK(k.mu == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(k.gamma == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(plan.phases.size() == 6);
    CHECK(plan.phases[0].duration == 9);
    CHECK(plan.phases[1].duration == 26);
    CHECK(plan.phases[2].duration == 23);
    CHECK(plan.phases[2].real_duration == doctest::Approx(208.0 / 9.0).epsilon(1e-14));

    // 9 (2 - 0.7) = 11.7 prelog-bits emitted, 26 * 0.45 carried
    CHECK(plan.phases[0].real_duration * plan.phases[0].quant_total() == doctest::Approx(11.7));
    CHECK(plan.phases[1].real_duration * plan.phases[1].prelog(Stream::C) == doctest::Approx(11.7));

    const auto &p1 = plan.phases[0];
    CHECK(p1.prelog(Stream::A) == 1.0);
    CHECK(p1.prelog(Stream::A_P) == doctest::Approx(0.8));
    CHECK(p1.prelog(Stream::B) == 1.0);
    CHECK(p1.prelog(Stream::B_P) == doctest::Approx(0.5));
    CHECK_FALSE(p1.has(Stream::C));

    const auto &last = plan.phases.back();
    CHECK(last.prelog(Stream::C) == doctest::Approx(0.8));
    CHECK(last.prelog(Stream::A) == doctest::Approx(0.2));
    CHECK(last.prelog(Stream::B) == doctest::Approx(0.2));
    CHECK(last.quant_total() == 0.0);
}

TEST_CASE("plan_x1 middle phase at alpha = 0")
{
    const auto plan = plan_x1(CsitQuality(0, 0), 1.0 / 6.0, 4, 1);
    const auto &mid = plan.phases[1];
    CHECK(mid.prelog(Stream::C) == doctest::Approx(5.0 / 6.0));
    CHECK(mid.prelog(Stream::A) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("plan_x1 argument errors")
{
    const CsitQuality q(0.5, 0.2);
    CHECK_THROWS_AS(plan_x1(q, 0.0, 5, 1), DomainError);
    CHECK_THROWS_AS(plan_x1(q, 0.1, 5, 1), DomainError); // bound is 0.2 / 3
    CHECK_THROWS_AS(plan_x1(q, 0.05, 2, 1), DomainError);
    CHECK_THROWS_AS(plan_x1(q, 0.05, 5, 0), DomainError);
    CHECK_THROWS_AS(plan_x1(CsitQuality(0.8, 0.2), 0.01, 5, 1), DomainError);
}

TEST_CASE("plan_x2 worked example")
{
    const auto plan = plan_x2(CsitQuality(0.5, 0.2), 4, 5);
    const auto k = std::get<X2Constants>(plan.derived);
    CHECK(k.tau == doctest::Approx(1.6));
    CHECK(k.beta == doctest::Approx(0.6));
    CHECK(k.eta == doctest::Approx(0.375));
    CHECK(plan.phases[1].duration == 8);
    CHECK(plan.phases[2].duration == 5);
    CHECK(plan.phases[2].real_duration == doctest::Approx(4.8));
    // 5 * 0.8 = 4 = 8 * 0.5
    CHECK(plan.phases[0].real_duration * plan.phases[0].quant_total() == doctest::Approx(4.0));
    CHECK(plan.phases[1].real_duration * plan.phases[1].prelog(Stream::C) == doctest::Approx(4.0));

    const auto &p1 = plan.phases[0];
    CHECK(p1.prelog(Stream::B) == doctest::Approx(0.5));
    CHECK(p1.quant_prelog_b == 0.0);
    CHECK_FALSE(p1.has(Stream::B_P));
}

TEST_CASE("plan_x2 degenerate qualities collapse to two phases")
{
    for (const auto &q : {CsitQuality(0.5, 0.5), CsitQuality(1.0, 0.3), CsitQuality(0.0, 0.0), CsitQuality(1.0, 0.0)})
    {
        const auto plan = plan_x2(q, 8, 3);
        INFO("alpha = (" << q.alpha1() << ", " << q.alpha2() << ")");
        CHECK(plan.shape == PlanShape::Collapsed);
        REQUIRE(plan.phases.size() == 2);
        CHECK(plan.phases[1].real_duration == 3.0);
        CHECK(validate_plan(plan).valid());
    }
    const auto one = plan_x2(CsitQuality(1, 1), 5, 1);
    CHECK(one.phases.size() == 1);
    CHECK(one.phases[0].quant_total() == 0.0);
    CHECK(validate_plan(one).valid());
}

TEST_CASE("plan_x3 budgets")
{
    const auto p = plan_x3(CsitQuality(0.5, 0.2));
    REQUIRE(p.phases.size() == 1);
    CHECK(p.c_credit_user2);
    CHECK(p.phases[0].prelog(Stream::C) == doctest::Approx(0.5));
    CHECK(p.phases[0].prelog(Stream::A) == doctest::Approx(0.2));
    CHECK(p.phases[0].prelog(Stream::B) == doctest::Approx(0.5));

    const auto perfect = plan_x3(CsitQuality(1, 1));
    CHECK(perfect.phases[0].prelog(Stream::C) == 0.0);
    CHECK(perfect.phases[0].prelog(Stream::A) == 1.0);
    CHECK(perfect.phases[0].prelog(Stream::B) == 1.0);

    const auto maleki = plan_x3(CsitQuality(1, 0));
    CHECK(maleki.phases[0].prelog(Stream::C) == 0.0);
    CHECK_FALSE(maleki.phases[0].has(Stream::A));
    CHECK(maleki.phases[0].prelog(Stream::B) == 1.0);
    CHECK(validate_plan(maleki).valid());
}

TEST_CASE("validate_plan accepts generated plans and flags tampering")
{
    auto plan = plan_x1(CsitQuality(0.5, 0.2), 0.05, 6, 9);
    const auto rep = validate_plan(plan);
    CHECK(rep.valid());
    CHECK(rep.ledger.size() == 5);
    for (const auto &r : rep.ledger)
        CHECK(std::abs(r.real_residual) <= 1e-12 * std::max(1.0, r.emitted_bits));

    // lower the carried rate of phase 2 by 0.1
    for (auto &b : plan.phases[1].budgets)
        if (b.stream == Stream::C)
            b.prelog -= 0.1;
    const auto bad = validate_plan(plan);
    CHECK_FALSE(bad.valid());
    CHECK(bad.ledger[0].real_residual == doctest::Approx(-26 * 0.1));

    CHECK(validate_plan(plan_x3(CsitQuality(0.3, 0.1))).valid());

    auto over = plan_x3(CsitQuality(0.5, 0.2));
    over.phases[0].budgets[1].prelog = 0.9; // a: prelog above its power
    CHECK_FALSE(validate_plan(over).budget_violations.empty());

    auto lost = plan_x2(CsitQuality(0.5, 0.2), 4, 1);
    lost.phases.back().quant_prelog_a = 0.1;
    CHECK_FALSE(validate_plan(lost).valid());
}

TEST_CASE("ledger closes on a 0.1 grid for X1 and X2")
{
    for (const auto &q : grid(0.1))
    {
        for (int s : {3, 7, 20})
        {
            INFO("alpha = (" << q.alpha1() << ", " << q.alpha2() << "), S = " << s);
            const auto r2 = validate_plan(plan_x2(q, s, 1));
            CHECK(r2.valid());
            if (region_case(q) == RegionCase::Case1)
            {
                const auto r1 = validate_plan(plan_x1(q, default_delta(q), s, 1));
                CHECK(r1.valid());
                CHECK(r1.max_relative_residual() <= ledger_tolerance);
            }
        }
    }
}

TEST_CASE("recursion constants: mu < 1, gamma > 0, beta > 1 beyond the case boundary")
{
    RandomStream rng(5, {static_cast<std::uint64_t>(StreamDomain::Test)});
    int case2_seen = 0;
    for (int i = 0; i < 2000; ++i)
    {
        const double a1 = rng.uniform();
        const double a2 = a1 * rng.uniform();
        const CsitQuality q(a1, a2);
        if (region_case(q) == RegionCase::Case1)
        {
            const double bound = (1 - 2 * a1 + a2) / 3;
            const double delta = bound * rng.uniform();
            const auto k = std::get<X1Constants>(plan_x1(q, delta, 4, 1).derived);
            CHECK(k.mu < 1.0);
            CHECK(k.gamma > 0.0);
        }
        else if (2 * a1 - a2 > 1 && a1 < 1)
        {
            ++case2_seen;
            const auto k = std::get<X2Constants>(plan_x2(q, 4, 1).derived);
            CHECK(k.beta > 1.0);
        }
    }
    CHECK(case2_seen > 100);
}

TEST_CASE("integer durations stay within half a slot of the recursion")
{
    for (const auto &q : grid(0.1))
    {
        std::vector<PhasePlan> plans{plan_x2(q, 12, 7)};
        if (region_case(q) == RegionCase::Case1)
            plans.push_back(plan_x1(q, default_delta(q), 12, 7));
        for (const auto &p : plans)
            for (std::size_t s = 0; s < p.phases.size(); ++s)
            {
                const double r = p.rounding_report()[s];
                if (p.phases[s].real_duration >= 0.5)
                    CHECK(std::abs(r) <= 0.5);
                else
                    CHECK(p.phases[s].duration == 1);
            }
    }
}
