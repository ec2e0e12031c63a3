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

#include "dofbc/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dofbc/error.hpp"
#include "dofbc/region.hpp"

namespace dofbc
{
    std::string_view to_string(Stream s)
    {
        switch (s)
        {
        case Stream::A: return "a";
        case Stream::A_P: return "a_p";
        case Stream::B: return "b";
        case Stream::B_P: return "b_p";
        case Stream::C: return "c";
        }
        return "?";
    }

    std::optional<Stream> stream_from_string(std::string_view s)
    {
        for (auto st : all_streams)
            if (to_string(st) == s)
                return st;
        return std::nullopt;
    }

    std::string_view to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::X1: return "x1";
        case Scheme::X2: return "x2";
        case Scheme::X3: return "x3";
        }
        return "?";
    }

    std::optional<Scheme> scheme_from_string(std::string_view s)
    {
        for (auto sc : {Scheme::X1, Scheme::X2, Scheme::X3})
            if (to_string(sc) == s)
                return sc;
        return std::nullopt;
    }

    const StreamBudget *PhaseSpec::find(Stream s) const
    {
        auto it = std::find_if(budgets.begin(), budgets.end(), [s](const StreamBudget &b) { return b.stream == s; });
        return it == budgets.end() ? nullptr : &*it;
    }

    double PhaseSpec::prelog(Stream s) const
    {
        const auto *b = find(s);
        return b ? b->prelog : 0.0;
    }

    double PhaseSpec::power_exp(Stream s) const
    {
        const auto *b = find(s);
        return b ? b->power_exp : 0.0;
    }

    std::vector<double> PhasePlan::rounding_report() const
    {
        std::vector<double> r;
        r.reserve(phases.size());
        for (const auto &p : phases)
            r.push_back(static_cast<double>(p.duration) - p.real_duration);
        return r;
    }

    double round_duration(double t)
    {
        if (!std::isfinite(t))
            throw DomainError("phase duration is not finite");
        return std::max(1.0, std::nearbyint(t)); // default FE_TONEAREST is half-to-even
    }

    namespace
    {
        // A stream with zero power and zero rate is not transmitted.
        void add_budget(PhaseSpec &p, Stream s, double power_exp, double prelog)
        {
            if (power_exp == 0.0 && prelog == 0.0)
                return;
            p.budgets.push_back({s, power_exp, prelog});
        }

        PhaseSpec make_phase(double real_duration)
        {
            PhaseSpec p;
            p.real_duration = real_duration;
            p.duration = round_duration(real_duration);
            return p;
        }

        void check_phase_args(int phases, int first_duration)
        {
            if (phases < 3)
                throw DomainError("phase count S must be at least 3");
            if (first_duration < 1)
                throw DomainError("first phase duration T1 must be at least 1");
        }

        // Phase 1 of X2 and the final phase shared by X1 and X2.
        PhaseSpec x2_first_phase(const CsitQuality &q, double t1)
        {
            const double a1 = q.alpha1(), a2 = q.alpha2();
            PhaseSpec p = make_phase(t1);
            add_budget(p, Stream::A, 1.0, 1.0);
            add_budget(p, Stream::A_P, 1.0 - a2, 1.0 - a2);
            add_budget(p, Stream::B, a1, a1);
            p.quant_prelog_a = 1.0 - a2;
            return p;
        }

        PhaseSpec final_phase(const CsitQuality &q, double t)
        {
            const double a2 = q.alpha2();
            PhaseSpec p = make_phase(t);
            add_budget(p, Stream::C, 1.0, 1.0 - a2);
            add_budget(p, Stream::A, a2, a2);
            add_budget(p, Stream::B, a2, a2);
            return p;
        }
    }

    double default_delta(const CsitQuality &q)
    {
        if (region_case(q) != RegionCase::Case1)
            throw NotApplicableError("Δ is only defined for case-1 qualities (2 alpha1 - alpha2 < 1)");
        return (1.0 - 2.0 * q.alpha1() + q.alpha2()) / 6.0;
    }

    PhasePlan plan_x1(const CsitQuality &q, double delta, int phases, int first_duration)
    {
        if (region_case(q) != RegionCase::Case1)
            throw DomainError("scheme X1 requires a case-1 quality (2 alpha1 - alpha2 < 1)");
        check_phase_args(phases, first_duration);
        const double a1 = q.alpha1(), a2 = q.alpha2();
        const double bound = (1.0 - 2.0 * a1 + a2) / 3.0;
        if (!(delta > 0.0 && delta < bound))
        {
            std::ostringstream os;
            os << "X1 requires 0 < delta < " << bound << ", got " << delta;
            throw DomainError(os.str());
        }

        const double xi = (2.0 - a1 - a2) / (1.0 - a1 - delta);
        const double mu = (a1 - a2 + 2.0 * delta) / (1.0 - a1 - delta);
        const double gamma = (a1 - a2 + 2.0 * delta) / (1.0 - a2);

        PhasePlan plan{.scheme = Scheme::X1,
                       .quality = q,
                       .delta = delta,
                       .requested_phases = phases,
                       .first_duration = first_duration,
                       .shape = PlanShape::Regular,
                       .derived = X1Constants{xi, mu, gamma},
                       .phases = {},
                       .c_credit_user2 = false};

        double t = first_duration;
        PhaseSpec first = make_phase(t);
        add_budget(first, Stream::A, 1.0, 1.0);
        add_budget(first, Stream::A_P, 1.0 - a2, 1.0 - a2);
        add_budget(first, Stream::B, 1.0, 1.0);
        add_budget(first, Stream::B_P, 1.0 - a1, 1.0 - a1);
        first.quant_prelog_a = 1.0 - a2;
        first.quant_prelog_b = 1.0 - a1;
        plan.phases.push_back(std::move(first));

        for (int s = 2; s <= phases - 1; ++s)
        {
            t *= (s == 2) ? xi : mu;
            PhaseSpec mid = make_phase(t);
            add_budget(mid, Stream::C, 1.0, 1.0 - a1 - delta);
            add_budget(mid, Stream::A, a1 + delta, a1 + delta);
            add_budget(mid, Stream::A_P, a1 - a2 + delta, a1 - a2 + delta);
            add_budget(mid, Stream::B, a1 + delta, a1 + delta);
            add_budget(mid, Stream::B_P, delta, delta);
            mid.quant_prelog_a = a1 - a2 + delta;
            mid.quant_prelog_b = delta;
            plan.phases.push_back(std::move(mid));
        }

        plan.phases.push_back(final_phase(q, t * gamma));
        return plan;
    }

    PhasePlan plan_x2(const CsitQuality &q, int phases, int first_duration)
    {
        check_phase_args(phases, first_duration);
        const double a1 = q.alpha1(), a2 = q.alpha2();

        PhasePlan plan{.scheme = Scheme::X2,
                       .quality = q,
                       .delta = 0.0,
                       .requested_phases = phases,
                       .first_duration = first_duration,
                       .shape = PlanShape::Regular,
                       .derived = {},
                       .phases = {},
                       .c_credit_user2 = false};

        const double t1 = first_duration;
        plan.phases.push_back(x2_first_phase(q, t1));

        // alpha1 = alpha2 makes beta = eta = 0 and alpha1 = 1 makes tau infinite; both are
        // served by sending phase 1 and then the final phase right away. The final phase
        // carries T1 (1 - alpha2) bits at rate 1 - alpha2, so T2 = T1. With alpha2 = 1
        // nothing is quantized and phase 1 alone is the plan.
        if (a1 == a2 || a1 == 1.0)
        {
            plan.shape = PlanShape::Collapsed;
            if (a2 == 1.0)
            {
                plan.phases.front().quant_prelog_a = 0.0;
            }
            else
            {
                plan.phases.push_back(final_phase(q, t1));
            }
            return plan;
        }

        const double tau = (1.0 - a2) / (1.0 - a1);
        const double beta = (a1 - a2) / (1.0 - a1);
        const double eta = (a1 - a2) / (1.0 - a2);
        plan.derived = X2Constants{tau, beta, eta};

        double t = t1;
        for (int s = 2; s <= phases - 1; ++s)
        {
            t *= (s == 2) ? tau : beta;
            PhaseSpec mid = make_phase(t);
            add_budget(mid, Stream::C, 1.0, 1.0 - a1);
            add_budget(mid, Stream::A, a1, a1);
            add_budget(mid, Stream::A_P, a1 - a2, a1 - a2);
            add_budget(mid, Stream::B, a1, a1);
            mid.quant_prelog_a = a1 - a2;
            plan.phases.push_back(std::move(mid));
        }
        plan.phases.push_back(final_phase(q, t * eta));
        return plan;
    }

    PhasePlan plan_x3(const CsitQuality &q)
    {
        const double a1 = q.alpha1(), a2 = q.alpha2();
        PhaseSpec p = make_phase(1.0);
        add_budget(p, Stream::C, 1.0, 1.0 - a1);
        add_budget(p, Stream::A, a2, a2);
        add_budget(p, Stream::B, a1, a1);
        return PhasePlan{.scheme = Scheme::X3,
                         .quality = q,
                         .delta = 0.0,
                         .requested_phases = 1,
                         .first_duration = 1,
                         .shape = PlanShape::Regular,
                         .derived = {},
                         .phases = {std::move(p)},
                         .c_credit_user2 = true};
    }

    bool ValidationReport::valid() const
    {
        return budget_violations.empty() && duration_violations.empty() && max_relative_residual() <= ledger_tolerance;
    }

    double ValidationReport::max_relative_residual() const
    {
        double m = 0.0;
        for (const auto &r : ledger)
            m = std::max(m, std::abs(r.real_residual) / std::max(1.0, std::abs(r.emitted_bits)));
        return m;
    }

    ValidationReport validate_plan(const PhasePlan &plan)
    {
        ValidationReport rep;
        constexpr double eps = 1e-12;
        const auto &ph = plan.phases;

        auto complain = [](std::vector<std::string> &into, std::size_t phase, const std::string &what) {
            into.push_back("phase " + std::to_string(phase + 1) + ": " + what);
        };

        if (ph.empty())
            rep.duration_violations.push_back("plan has no phases");

        for (std::size_t s = 0; s < ph.size(); ++s)
        {
            const auto &p = ph[s];
            if (!(p.real_duration > 0.0))
                complain(rep.duration_violations, s, "real duration not positive");
            if (!(p.duration >= 1.0))
                complain(rep.duration_violations, s, "integer duration below 1");
            else if (p.duration != std::floor(p.duration))
                complain(rep.duration_violations, s, "integer duration is fractional");

            for (const auto &b : p.budgets)
            {
                const std::string name(to_string(b.stream));
                if (!(b.power_exp >= 0.0 && b.power_exp <= 1.0))
                    complain(rep.budget_violations, s, name + " power exponent outside [0,1]");
                if (!(b.prelog >= 0.0 && b.prelog <= 1.0))
                    complain(rep.budget_violations, s, name + " prelog outside [0,1]");
                if (b.prelog > b.power_exp + eps)
                    complain(rep.budget_violations, s, name + " prelog exceeds its power exponent");
            }
            if (!(p.quant_prelog_a >= 0.0 && p.quant_prelog_b >= 0.0))
                complain(rep.budget_violations, s, "negative quantization prelog");
            if (s == 0 && p.has(Stream::C) && !plan.c_credit_user2)
                complain(rep.budget_violations, s, "first phase has no interference to carry on c");
            if (s + 1 == ph.size() && p.quant_total() != 0.0)
                complain(rep.budget_violations, s, "final phase quantizes interference that nothing carries");
        }

        for (std::size_t s = 0; s + 1 < ph.size(); ++s)
        {
            const auto &cur = ph[s];
            const auto &next = ph[s + 1];
            const double carried = next.prelog(Stream::C);
            LedgerResidual r{.from_phase = s,
                             .emitted_bits = cur.real_duration * cur.quant_total(),
                             .real_residual = next.real_duration * carried - cur.real_duration * cur.quant_total(),
                             .integer_residual = next.duration * carried - cur.duration * cur.quant_total()};
            rep.ledger.push_back(r);
        }
        return rep;
    }
}
