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

#include "dofbc/dofcalc.hpp"

#include <cmath>

#include "dofbc/error.hpp"

namespace dofbc
{
    DofAccount achieved_dof(const PhasePlan &plan, DurationMode mode)
    {
        const auto report = validate_plan(plan);
        if (!report.valid())
        {
            std::string why = "achieved_dof: invalid plan";
            for (const auto &v : report.budget_violations)
                why += "; " + v;
            for (const auto &v : report.duration_violations)
                why += "; " + v;
            if (report.max_relative_residual() > ledger_tolerance)
                why += "; bit conservation broken";
            throw DomainError(why);
        }

        DofAccount acc{0.0, 0.0, {}};
        double bits1 = 0.0, bits2 = 0.0, total = 0.0;
        for (const auto &p : plan.phases)
        {
            const double t = mode == DurationMode::Real ? p.real_duration : static_cast<double>(p.duration);
            PhaseBits pb{.user1_bits = t * (p.prelog(Stream::A) + p.prelog(Stream::A_P)),
                         .user2_bits = t * (p.prelog(Stream::B) + p.prelog(Stream::B_P)),
                         .duration = t};
            if (plan.c_credit_user2)
                pb.user2_bits += t * p.prelog(Stream::C);
            bits1 += pb.user1_bits;
            bits2 += pb.user2_bits;
            total += t;
            acc.per_phase.push_back(pb);
        }
        acc.d1 = bits1 / total;
        acc.d2 = bits2 / total;
        return acc;
    }

    DofPoint asymptotic_dof(Scheme scheme, const CsitQuality &q, std::optional<double>)
    {
        const double a1 = q.alpha1(), a2 = q.alpha2();
        switch (scheme)
        {
        case Scheme::X1:
            if (region_case(q) != RegionCase::Case1)
                throw DomainError("scheme X1 only applies to case-1 qualities");
            return {(2.0 + 2.0 * a1 - a2) / 3.0, (2.0 + 2.0 * a2 - a1) / 3.0};
        case Scheme::X2:
            return region_case(q) == RegionCase::Case1 ? DofPoint{1.0, a1} : DofPoint{1.0, (1.0 + a2) / 2.0};
        case Scheme::X3:
            return {a2, 1.0};
        }
        throw DomainError("unknown scheme");
    }

    DofPoint time_share(std::span<const WeightedPoint> points)
    {
        if (points.empty())
            throw DomainError("time_share: no points");
        double sum = 0.0;
        DofPoint out{};
        for (const auto &wp : points)
        {
            if (!(wp.weight >= 0.0))
                throw DomainError("time_share: negative weight");
            sum += wp.weight;
            out.d1 += wp.weight * wp.point.d1;
            out.d2 += wp.weight * wp.point.d2;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw DomainError("time_share: weights must sum to 1");
        return out;
    }

    CoverageReport region_coverage(const CsitQuality &q, std::optional<double> delta, int phases)
    {
        CoverageReport rep{};
        if (region_case(q) == RegionCase::Case1)
        {
            const double d = delta.value_or(default_delta(q));
            rep.finite_points.push_back(achieved_dof(plan_x1(q, d, phases, 1)).point());
            rep.limit_points.push_back(asymptotic_dof(Scheme::X1, q, d));
        }
        rep.finite_points.push_back(achieved_dof(plan_x2(q, phases, 1)).point());
        rep.limit_points.push_back(asymptotic_dof(Scheme::X2, q));
        rep.finite_points.push_back(achieved_dof(plan_x3(q)).point());
        rep.limit_points.push_back(asymptotic_dof(Scheme::X3, q));

        const std::vector<DofPoint> trivial{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
        auto hull_with_trivial = [&](const std::vector<DofPoint> &pts) {
            std::vector<DofPoint> all = trivial;
            all.insert(all.end(), pts.begin(), pts.end());
            return convex_hull(std::move(all));
        };
        rep.finite_hull = hull_with_trivial(rep.finite_points);
        rep.limit_hull = hull_with_trivial(rep.limit_points);
        rep.region = corners(q).corners;
        rep.finite_distance = hausdorff_distance(rep.finite_hull, rep.region);
        rep.limit_distance = hausdorff_distance(rep.limit_hull, rep.region);
        return rep;
    }
}
