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

#include <span>
#include <string_view>
#include <vector>

#include "dofbc/model.hpp"

namespace dofbc
{
    struct DofPoint
    {
        double d1 = 0.0;
        double d2 = 0.0;

        bool operator==(const DofPoint &) const = default;
    };

    /// Case1: 2*alpha1 - alpha2 < 1 (six-corner polygon). Case2 otherwise, equality included.
    enum class RegionCase
    {
        Case1,
        Case2
    };

    std::string_view to_string(RegionCase c);

    RegionCase region_case(const CsitQuality &quality);

    /// The optimal DoF polygon for one CSIT quality. Corners run counterclockwise from
    /// the origin with coincident corners merged.
    struct DofRegion
    {
        CsitQuality quality;
        RegionCase case_tag;
        std::vector<DofPoint> corners;
    };

    DofRegion corners(const CsitQuality &quality);

    /// Minimum signed slack over d1 >= 0, d2 >= 0, d1 <= 1, d2 <= 1,
    /// 2 d1 + d2 <= 2 + alpha1 and d1 + 2 d2 <= 2 + alpha2. Negative means outside.
    double boundary_deficit(const CsitQuality &quality, DofPoint p);

    /// boundary_deficit(quality, p) >= -tol. Throws DomainError for tol < 0.
    bool contains(const CsitQuality &quality, DofPoint p, double tol = 0.0);

    // ---- planar polygon helpers (convex, counterclockwise) ----

    double polygon_area(std::span<const DofPoint> polygon);

    /// Convex hull, counterclockwise, starting at the lowest-then-leftmost point, no
    /// collinear vertices.
    std::vector<DofPoint> convex_hull(std::vector<DofPoint> points);

    /// Euclidean distance from p to a convex polygon (0 inside).
    double distance_to_polygon(DofPoint p, std::span<const DofPoint> polygon);

    /// Hausdorff distance between two convex polygons; attained at a vertex of one of them.
    double hausdorff_distance(std::span<const DofPoint> a, std::span<const DofPoint> b);
}
