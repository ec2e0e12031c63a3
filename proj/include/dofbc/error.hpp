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

#include <stdexcept>
#include <string>

namespace dofbc
{
    /// Input outside the domain of an operation (bad CSIT quality, SNR, Δ, phase count, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// Input is inside the domain but geometrically degenerate (zero estimate vector, singular channel).
    class DegenerateInputError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    /// Operation does not apply to the region case of the given quality (e.g. Δ for case 2).
    class NotApplicableError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };
}
