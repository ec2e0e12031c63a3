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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dofbc/dofcalc.hpp"
#include "dofbc/region.hpp"
#include "dofbc/scheduler.hpp"
#include "dofbc/simlink.hpp"

// File formats. Every CSV starts with a header row and keeps its column order; the
// layouts are listed as schema v1 in the README. Reals are written with 17 significant
// digits so a file read back reproduces the doubles it was written from.

namespace dofbc::io
{
    using json = nlohmann::json;

    inline constexpr const char *plan_schema = "dofbc.plan/1";

    std::string format_real(double x);

    // region -----------------------------------------------------------------

    json region_to_json(const DofRegion &region);

    /// `per_edge` samples along every polygon edge, starting at its first corner.
    void write_boundary_csv(std::ostream &os, const DofRegion &region, int per_edge);

    // plans ------------------------------------------------------------------

    json plan_to_json(const PhasePlan &plan);

    /// Inverse of plan_to_json; throws DomainError on a malformed document.
    PhasePlan plan_from_json(const json &doc);

    // DoF accounting ---------------------------------------------------------

    struct CalcRow
    {
        Scheme scheme;
        CsitQuality quality;
        double delta; // X1 only; written as an empty field elsewhere
        int phases;
        DofPoint finite;
        DofPoint limit;

        double err() const; // Euclidean distance finite -> limit
    };

    void write_calc_csv(std::ostream &os, const std::vector<CalcRow> &rows);

    // link campaigns ---------------------------------------------------------

    /// One row per grid point and stream; phase is 1-based and slope_so_far is the least
    /// squares slope over the grid points up to and including the row (empty for the first).
    void write_link_csv(std::ostream &os, const LinkReport &report);

    json link_to_json(const LinkReport &report);

    // sweeps -----------------------------------------------------------------

    struct SweepRow
    {
        CsitQuality quality;
        RegionCase case_tag;
        double area;
        CoverageReport coverage;
    };

    void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);

    /// Region area between neighbouring grid points along each axis with the other fixed.
    void write_monotonicity_csv(std::ostream &os, const std::vector<SweepRow> &rows);
}
