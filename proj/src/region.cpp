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

#include "dofbc/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dofbc/error.hpp"

namespace dofbc
{
    std::string_view to_string(RegionCase c)
    {
        return c == RegionCase::Case1 ? "case1" : "case2";
    }

    RegionCase region_case(const CsitQuality &q)
    {
        return 2.0 * q.alpha1() - q.alpha2() < 1.0 ? RegionCase::Case1 : RegionCase::Case2;
    }

    DofRegion corners(const CsitQuality &q)
    {
        const double a1 = q.alpha1();
        const double a2 = q.alpha2();
        const RegionCase c = region_case(q);

        std::vector<DofPoint> raw{{0.0, 0.0}, {1.0, 0.0}};
        if (c == RegionCase::Case1)
        {
            raw.push_back({1.0, a1});
            raw.push_back({(2.0 + 2.0 * a1 - a2) / 3.0, (2.0 + 2.0 * a2 - a1) / 3.0});
        }
        else
        {
            raw.push_back({1.0, (1.0 + a2) / 2.0});
        }
        raw.push_back({a2, 1.0});
        raw.push_back({0.0, 1.0});

        // Coincident corners appear at the edges of the quality triangle, e.g. D = (1,0) for
        // alpha1 = 0 or B = (0,1) for alpha2 = 0. Exact comparison suffices: coincident
        // corners are computed from the same closed forms.
        std::vector<DofPoint> out;
        for (const auto &p : raw)
            if (out.empty() || !(out.back() == p))
                out.push_back(p);
        if (out.size() > 1 && out.back() == out.front())
            out.pop_back();

        return {q, c, std::move(out)};
    }

    double boundary_deficit(const CsitQuality &q, DofPoint p)
    {
        const double slacks[] = {
            p.d1,
            p.d2,
            1.0 - p.d1,
            1.0 - p.d2,
            2.0 + q.alpha1() - (2.0 * p.d1 + p.d2),
            2.0 + q.alpha2() - (p.d1 + 2.0 * p.d2),
        };
        return *std::min_element(std::begin(slacks), std::end(slacks));
    }

    bool contains(const CsitQuality &q, DofPoint p, double tol)
    {
        if (!(tol >= 0.0))
            throw DomainError("contains: tolerance must be non-negative");
        return boundary_deficit(q, p) >= -tol;
    }

    double polygon_area(std::span<const DofPoint> poly)
    {
        double twice = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i)
        {
            const auto &a = poly[i];
            const auto &b = poly[(i + 1) % poly.size()];
            twice += a.d1 * b.d2 - b.d1 * a.d2;
        }
        return 0.5 * twice;
    }

    namespace
    {
        double cross(DofPoint o, DofPoint a, DofPoint b)
        {
            return (a.d1 - o.d1) * (b.d2 - o.d2) - (a.d2 - o.d2) * (b.d1 - o.d1);
        }

        double segment_distance(DofPoint p, DofPoint a, DofPoint b)
        {
            const double dx = b.d1 - a.d1;
            const double dy = b.d2 - a.d2;
            const double len2 = dx * dx + dy * dy;
            double t = 0.0;
            if (len2 > 0.0)
                t = std::clamp(((p.d1 - a.d1) * dx + (p.d2 - a.d2) * dy) / len2, 0.0, 1.0);
            return std::hypot(p.d1 - (a.d1 + t * dx), p.d2 - (a.d2 + t * dy));
        }
    }

    std::vector<DofPoint> convex_hull(std::vector<DofPoint> pts)
    {
        // Andrew's monotone chain, sorted by (d2, d1) so the chain starts at the origin
        // for the DoF polygons used here.
        std::sort(pts.begin(), pts.end(), [](DofPoint a, DofPoint b) {
            return a.d2 < b.d2 || (a.d2 == b.d2 && a.d1 < b.d1);
        });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() < 3)
            return pts;

        constexpr double eps = 1e-14;
        std::vector<DofPoint> hull(2 * pts.size());
        std::size_t k = 0;
        for (const auto &p : pts)
        {
            while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= eps)
                --k;
            hull[k++] = p;
        }
        for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;)
        {
            while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps)
                --k;
            hull[k++] = pts[i];
        }
        hull.resize(k - 1);
        return hull;
    }

    double distance_to_polygon(DofPoint p, std::span<const DofPoint> poly)
    {
        if (poly.empty())
            return std::numeric_limits<double>::infinity();
        if (poly.size() == 1)
            return std::hypot(p.d1 - poly[0].d1, p.d2 - poly[0].d2);

        bool inside = poly.size() >= 3;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < poly.size(); ++i)
        {
            const auto &a = poly[i];
            const auto &b = poly[(i + 1) % poly.size()];
            if (cross(a, b, p) < 0.0)
                inside = false;
            best = std::min(best, segment_distance(p, a, b));
        }
        return inside ? 0.0 : best;
    }

    double hausdorff_distance(std::span<const DofPoint> a, std::span<const DofPoint> b)
    {
        double h = 0.0;
        for (const auto &p : a)
            h = std::max(h, distance_to_polygon(p, b));
        for (const auto &p : b)
            h = std::max(h, distance_to_polygon(p, a));
        return h;
    }
}
