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

#include <optional>
#include <span>
#include <vector>

#include "dofbc/region.hpp"
#include "dofbc/scheduler.hpp"

namespace dofbc
{
    struct PhaseBits
    {
        double user1_bits; // prelog-bits, i.e. bits / log P
        double user2_bits;
        double duration;
    };

    struct DofAccount
    {
        double d1;
        double d2;
        std::vector<PhaseBits> per_phase;

        DofPoint point() const { return {d1, d2}; }
    };

    enum class DurationMode
    {
        Real,
        Integer
    };

    /// Message prelog-bits per user divided by total channel uses. User 1 collects a and a',
    /// user 2 collects b and b' (plus c when the plan credits c to user 2).
    /// Throws DomainError if validate_plan rejects the plan.
    DofAccount achieved_dof(const PhasePlan &plan, DurationMode mode = DurationMode::Real);

    /// Limit S -> infinity of the scheme's DoF pair. The X1 limit does not depend on delta,
    /// which is accepted only for symmetry with plan_x1. Throws DomainError for X1 in case 2.
    DofPoint asymptotic_dof(Scheme scheme, const CsitQuality &q, std::optional<double> delta = std::nullopt);

    struct WeightedPoint
    {
        DofPoint point;
        double weight;
    };

    /// Convex combination. Throws DomainError unless weights are >= 0 and sum to 1 (1e-9).
    DofPoint time_share(std::span<const WeightedPoint> points);

    struct CoverageReport
    {
        std::vector<DofPoint> finite_points; // achieved_dof of each applicable scheme at S
        std::vector<DofPoint> limit_points;  // asymptotic_dof of each applicable scheme
        std::vector<DofPoint> finite_hull;
        std::vector<DofPoint> limit_hull;
        std::vector<DofPoint> region;
        double finite_distance; // Hausdorff distance finite_hull <-> region
        double limit_distance;
    };

    /// Time-sharing hull of {(0,0),(1,0),(0,1)} and the scheme points against the optimal
    /// region. X1 participates only in case 1; delta defaults to default_delta.
    CoverageReport region_coverage(const CsitQuality &q, std::optional<double> delta, int phases);
}
