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

#include "dofbc/io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "dofbc/error.hpp"

namespace dofbc::io
{
    std::string format_real(double x)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    // region -----------------------------------------------------------------

    json region_to_json(const DofRegion &region)
    {
        json corners = json::array();
        for (const auto &c : region.corners)
            corners.push_back({c.d1, c.d2});
        return {{"alpha1", region.quality.alpha1()},
                {"alpha2", region.quality.alpha2()},
                {"case", std::string(to_string(region.case_tag))},
                {"corners", corners}};
    }

    void write_boundary_csv(std::ostream &os, const DofRegion &region, int per_edge)
    {
        if (per_edge < 1)
            throw DomainError("boundary samples: per_edge must be >= 1");
        os << "edge,t,d1,d2\n";
        const auto &c = region.corners;
        for (std::size_t e = 0; e < c.size(); ++e)
        {
            const auto &p = c[e];
            const auto &q = c[(e + 1) % c.size()];
            for (int k = 0; k < per_edge; ++k)
            {
                const double t = static_cast<double>(k) / per_edge;
                os << e << ',' << format_real(t) << ',' << format_real(p.d1 + t * (q.d1 - p.d1)) << ','
                   << format_real(p.d2 + t * (q.d2 - p.d2)) << '\n';
            }
        }
    }

    // plans ------------------------------------------------------------------

    json plan_to_json(const PhasePlan &plan)
    {
        json derived = json::object();
        if (const auto *x1 = std::get_if<X1Constants>(&plan.derived))
            derived = {{"xi", x1->xi}, {"mu", x1->mu}, {"gamma", x1->gamma}};
        else if (const auto *x2 = std::get_if<X2Constants>(&plan.derived))
            derived = {{"tau", x2->tau}, {"beta", x2->beta}, {"eta", x2->eta}};

        json phases = json::array();
        for (const auto &p : plan.phases)
        {
            json budgets = json::array();
            for (const auto &b : p.budgets)
                budgets.push_back(
                    {{"stream", std::string(to_string(b.stream))}, {"power_exp", b.power_exp}, {"prelog", b.prelog}});
            phases.push_back({{"T", p.duration},
                              {"T_real", p.real_duration},
                              {"budgets", budgets},
                              {"quant", {{"a", p.quant_prelog_a}, {"b", p.quant_prelog_b}}}});
        }

        return {{"schema", plan_schema},
                {"scheme", std::string(to_string(plan.scheme))},
                {"quality", {{"alpha1", plan.quality.alpha1()}, {"alpha2", plan.quality.alpha2()}}},
                {"delta", plan.delta},
                {"requested_phases", plan.requested_phases},
                {"first_duration", plan.first_duration},
                {"shape", plan.shape == PlanShape::Collapsed ? "collapsed" : "regular"},
                {"c_credit_user2", plan.c_credit_user2},
                {"derived", derived},
                {"phases", phases}};
    }

    PhasePlan plan_from_json(const json &doc)
    {
        try
        {
            if (doc.at("schema").get<std::string>() != plan_schema)
                throw DomainError("plan import: unsupported schema " + doc.at("schema").get<std::string>());
            const auto scheme = scheme_from_string(doc.at("scheme").get<std::string>());
            if (!scheme)
                throw DomainError("plan import: unknown scheme");
            const auto &q = doc.at("quality");
            const std::string shape = doc.at("shape").get<std::string>();
            if (shape != "regular" && shape != "collapsed")
                throw DomainError("plan import: unknown shape " + shape);

            PhasePlan plan{.scheme = *scheme,
                           .quality = CsitQuality(q.at("alpha1").get<double>(), q.at("alpha2").get<double>()),
                           .delta = doc.at("delta").get<double>(),
                           .requested_phases = doc.at("requested_phases").get<int>(),
                           .first_duration = doc.at("first_duration").get<int>(),
                           .shape = shape == "collapsed" ? PlanShape::Collapsed : PlanShape::Regular,
                           .derived = {},
                           .phases = {},
                           .c_credit_user2 = doc.at("c_credit_user2").get<bool>()};

            const auto &d = doc.at("derived");
            if (d.contains("xi"))
                plan.derived = X1Constants{d.at("xi").get<double>(), d.at("mu").get<double>(),
                                           d.at("gamma").get<double>()};
            else if (d.contains("tau"))
                plan.derived = X2Constants{d.at("tau").get<double>(), d.at("beta").get<double>(),
                                           d.at("eta").get<double>()};

            for (const auto &jp : doc.at("phases"))
            {
                PhaseSpec p;
                p.duration = jp.at("T").get<double>();
                p.real_duration = jp.at("T_real").get<double>();
                for (const auto &jb : jp.at("budgets"))
                {
                    const auto s = stream_from_string(jb.at("stream").get<std::string>());
                    if (!s)
                        throw DomainError("plan import: unknown stream");
                    p.budgets.push_back({*s, jb.at("power_exp").get<double>(), jb.at("prelog").get<double>()});
                }
                p.quant_prelog_a = jp.at("quant").at("a").get<double>();
                p.quant_prelog_b = jp.at("quant").at("b").get<double>();
                plan.phases.push_back(std::move(p));
            }
            if (plan.phases.empty())
                throw DomainError("plan import: no phases");
            return plan;
        }
        catch (const json::exception &e)
        {
            throw DomainError(std::string("plan import: ") + e.what());
        }
    }

    // DoF accounting ---------------------------------------------------------

    double CalcRow::err() const
    {
        return std::hypot(finite.d1 - limit.d1, finite.d2 - limit.d2);
    }

    void write_calc_csv(std::ostream &os, const std::vector<CalcRow> &rows)
    {
        os << "scheme,alpha1,alpha2,delta,S,d1,d2,d1_limit,d2_limit,err\n";
        for (const auto &r : rows)
        {
            os << to_string(r.scheme) << ',' << format_real(r.quality.alpha1()) << ','
               << format_real(r.quality.alpha2()) << ',' << (r.scheme == Scheme::X1 ? format_real(r.delta) : "")
               << ',' << r.phases << ',' << format_real(r.finite.d1) << ',' << format_real(r.finite.d2) << ','
               << format_real(r.limit.d1) << ',' << format_real(r.limit.d2) << ',' << format_real(r.err()) << '\n';
        }
    }

    // link campaigns ---------------------------------------------------------

    void write_link_csv(std::ostream &os, const LinkReport &report)
    {
        os << "scheme,P,phase,stream,mi,slope_so_far\n";
        const auto &grid = report.snr_grid;
        std::vector<double> x;
        for (double p : grid)
            x.push_back(std::log2(p));
        for (std::size_t j = 0; j < grid.size(); ++j)
        {
            for (const auto &s : report.streams)
            {
                os << to_string(report.scheme) << ',' << format_real(grid[j]) << ',' << s.phase + 1 << ','
                   << to_string(s.stream) << ',' << format_real(s.mi[j]) << ',';
                if (j > 0)
                    os << format_real(fit_line(std::span(x).first(j + 1), std::span(s.mi).first(j + 1)).slope);
                os << '\n';
            }
        }
    }

    json link_to_json(const LinkReport &report)
    {
        json streams = json::array();
        for (const auto &s : report.streams)
        {
            json e = {{"phase", s.phase + 1},  {"stream", std::string(to_string(s.stream))},
                      {"prelog", s.prelog},   {"slope", s.fit.slope},
                      {"intercept", s.fit.intercept}, {"mi", s.mi}};
            if (s.stream == Stream::C)
            {
                e["mi_user1"] = s.mi_user1;
                e["mi_user2"] = s.mi_user2;
            }
            streams.push_back(std::move(e));
        }
        json received = json::array();
        for (const auto &r : report.received)
            received.push_back({{"phase", r.phase + 1},
                                {"user", r.user},
                                {"stream", std::string(to_string(r.stream))},
                                {"nominal_exp", r.nominal_exp},
                                {"slope", r.fit.slope},
                                {"power", r.power}});
        json quant = json::array();
        for (const auto &q : report.quant)
        {
            json recs = json::array();
            for (const auto &r : q.records)
                recs.push_back({{"source_power_exp", r.source_power_exp},
                                {"budget_prelog", r.budget_prelog},
                                {"measured_distortion", r.measured_distortion},
                                {"levels_per_part", r.levels_per_part},
                                {"pass_through", r.pass_through}});
            quant.push_back({{"phase", q.phase + 1},
                             {"side", std::string(1, q.side)},
                             {"source_slope", q.source_fit.slope},
                             {"distortion_slope", q.distortion_fit.slope},
                             {"records", recs}});
        }
        return {{"scheme", std::string(to_string(report.scheme))},
                {"alpha1", report.quality.alpha1()},
                {"alpha2", report.quality.alpha2()},
                {"delta", report.delta},
                {"trials", report.trials},
                {"seed", report.seed},
                {"snr_grid", report.snr_grid},
                {"durations", report.durations},
                {"estimate", {report.estimate.d1, report.estimate.d2}},
                {"accounted", {report.accounted.d1, report.accounted.d2}},
                {"streams", streams},
                {"received", received},
                {"quant", quant}};
    }

    // sweeps -----------------------------------------------------------------

    void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows)
    {
        os << "alpha1,alpha2,case,area,finite_distance,limit_distance,points\n";
        for (const auto &r : rows)
        {
            std::string pts;
            for (const auto &p : r.coverage.finite_points)
            {
                if (!pts.empty())
                    pts += ';';
                pts += format_real(p.d1) + ' ' + format_real(p.d2);
            }
            os << format_real(r.quality.alpha1()) << ',' << format_real(r.quality.alpha2()) << ','
               << to_string(r.case_tag) << ',' << format_real(r.area) << ','
               << format_real(r.coverage.finite_distance) << ',' << format_real(r.coverage.limit_distance) << ','
               << pts << '\n';
        }
    }

    void write_monotonicity_csv(std::ostream &os, const std::vector<SweepRow> &rows)
    {
        os << "axis,fixed,from,to,area_from,area_to,nondecreasing\n";
        // rows are keyed by exact grid values, so neighbours are found by ordering
        std::map<double, std::map<double, double>> by_a1, by_a2;
        for (const auto &r : rows)
        {
            by_a2[r.quality.alpha2()][r.quality.alpha1()] = r.area;
            by_a1[r.quality.alpha1()][r.quality.alpha2()] = r.area;
        }
        auto emit = [&os](const char *axis, const std::map<double, std::map<double, double>> &groups) {
            for (const auto &[fixed, line] : groups)
            {
                for (auto it = line.begin(); it != line.end() && std::next(it) != line.end(); ++it)
                {
                    const auto nx = std::next(it);
                    os << axis << ',' << format_real(fixed) << ',' << format_real(it->first) << ','
                       << format_real(nx->first) << ',' << format_real(it->second) << ','
                       << format_real(nx->second) << ',' << (nx->second >= it->second - 1e-12 ? 1 : 0) << '\n';
                }
            }
        };
        emit("alpha1", by_a2);
        emit("alpha2", by_a1);
    }
}
