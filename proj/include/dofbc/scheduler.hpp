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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dofbc/model.hpp"

namespace dofbc
{
    /// Symbols of the general transmit vector: a, a' for user 1, b, b' for user 2, and the
    /// common stream c that carries quantized interference of the previous phase.
    enum class Stream
    {
        A,
        A_P,
        B,
        B_P,
        C
    };

    inline constexpr std::array<Stream, 5> all_streams{Stream::A, Stream::A_P, Stream::B, Stream::B_P, Stream::C};

    std::string_view to_string(Stream s);
    std::optional<Stream> stream_from_string(std::string_view s);

    /// Power exponent (E|s|^2 = P^power_exp) and rate prelog (bits = prelog log P) of one stream.
    struct StreamBudget
    {
        Stream stream;
        double power_exp;
        double prelog;

        bool operator==(const StreamBudget &) const = default;
    };

    struct PhaseSpec
    {
        double duration = 1.;      // integer channel uses; a double so long plans cannot overflow
        double real_duration = 1.; // exact recursion value before rounding
        std::vector<StreamBudget> budgets;
        double quant_prelog_a = 0.; // per-slot prelog of the quantized c_bar^(a)
        double quant_prelog_b = 0.; // per-slot prelog of the quantized c_bar^(b)

        const StreamBudget *find(Stream s) const;
        bool has(Stream s) const { return find(s) != nullptr; }
        double prelog(Stream s) const;    // 0 when absent
        double power_exp(Stream s) const; // 0 when absent
        double quant_total() const { return quant_prelog_a + quant_prelog_b; }

        bool operator==(const PhaseSpec &) const = default;
    };

    enum class Scheme
    {
        X1,
        X2,
        X3
    };

    std::string_view to_string(Scheme s);
    std::optional<Scheme> scheme_from_string(std::string_view s);

    struct X1Constants
    {
        double xi, mu, gamma;
        bool operator==(const X1Constants &) const = default;
    };

    struct X2Constants
    {
        double tau, beta, eta;
        bool operator==(const X2Constants &) const = default;
    };

    using PlanConstants = std::variant<std::monostate, X1Constants, X2Constants>;

    enum class PlanShape
    {
        Regular,
        /// X2 with alpha1 = alpha2 or alpha1 = 1: phase 1 followed directly by the final phase.
        Collapsed,
    };

    struct PhasePlan
    {
        Scheme scheme;
        CsitQuality quality;
        double delta = 0.0; // X1 only
        int requested_phases = 1;
        int first_duration = 1;
        PlanShape shape = PlanShape::Regular;
        PlanConstants derived;
        std::vector<PhaseSpec> phases;
        /// X3 credits the c stream to user 2; elsewhere c carries only quantized interference.
        bool c_credit_user2 = false;

        /// integer minus real duration, per phase
        std::vector<double> rounding_report() const;

        bool operator==(const PhasePlan &) const = default;
    };

    /// Half of the admissible Δ upper bound (1 - 2 alpha1 + alpha2)/3.
    /// Throws NotApplicableError for case-2 qualities.
    double default_delta(const CsitQuality &q);

    PhasePlan plan_x1(const CsitQuality &q, double delta, int phases, int first_duration);
    PhasePlan plan_x2(const CsitQuality &q, int phases, int first_duration);
    PhasePlan plan_x3(const CsitQuality &q);

    /// Round half to even, clamped at 1. Throws DomainError for a non-finite duration.
    double round_duration(double real_duration);

    struct LedgerResidual
    {
        std::size_t from_phase; // zero-based; bits flow from phase `from_phase` to the next
        double emitted_bits;    // T_s (quant_a + quant_b), real durations
        double real_residual;   // T_{s+1} r_c(s+1) - T_s (quant_a + quant_b), real durations
        double integer_residual;
    };

    struct ValidationReport
    {
        std::vector<LedgerResidual> ledger;
        std::vector<std::string> budget_violations;
        std::vector<std::string> duration_violations;

        /// Ledger residuals on real durations within 1e-12 relative, no violations.
        bool valid() const;
        double max_relative_residual() const;
    };

    inline constexpr double ledger_tolerance = 1e-12;

    ValidationReport validate_plan(const PhasePlan &plan);
}
