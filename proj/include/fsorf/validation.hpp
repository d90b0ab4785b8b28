// SPDX-License-Identifier: Apache-2.0
//
// fsorf: performance analysis of dual-hop hybrid FSO/RF links
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
#include <string_view>
#include <vector>

#include "fsorf/link_analytics.hpp"

namespace fsorf
{

struct OracleCase
{
    std::string label;
    MeijerGSpec spec;
    double z = 0;
};

// The G^{3,1}_{2,4} and both G^{6,3}_{5,8} kernels of the two turbulence
// presets at five arguments each (30 cases).
std::vector<OracleCase> oracle_test_set();

struct Check
{
    std::string name;
    double measured = 0;
    double tolerance = 0;
    bool passed = false;
    std::string note;
};

// Closed-form BER that disagrees with the quadrature while a corrected term
// restores agreement.
struct Discrepancy
{
    std::string name;
    std::string corrected_term;
    double printed_rel_error = 0;
    double corrected_rel_error = 0;
};

struct Section
{
    std::string name;
    std::vector<Check> checks;
    std::vector<Discrepancy> discrepancies;

    [[nodiscard]] bool passed() const;
    // Null when every check passed.
    [[nodiscard]] const Check* first_failure() const;
};

struct ValidationOptions
{
    // Passed through to the closed forms as ClosedFormOptions::psi2_perturbation.
    double psi2_perturbation = 0.0;
};

Section validate_special();
Section validate_cdf();
Section validate_ber(const ValidationOptions& opts = {});

// suite in {special, cdf, ber, all}; throws ParameterError otherwise.
std::vector<Section> run_validation(std::string_view suite, const ValidationOptions& opts = {});

void write_report(std::ostream& os, const std::vector<Section>& sections);

} // namespace fsorf
