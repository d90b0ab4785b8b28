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

#include <array>
#include <functional>

#include "fsorf/channel_models.hpp"

namespace fsorf
{

double db_to_linear(double db);
double linear_to_db(double linear);

/*!
 * End-to-end link: Rayleigh RF hop into a detect-and-forward relay, then the
 * optical hop. All SNRs are linear. The optical conversion efficiency eta is
 * carried for reporting only; it is already folded into fso.gamma_bar.
 */
struct LinkConfig
{
    FsoParams fso;
    RfParams rf;
    double gamma_th = 10.0;
    double eta = 1.0;

    void validate() const;
};

// Equal average SNR on both hops: gamma_bar_RF = gamma_bar and
// gamma_bar_FSO = eta^2 * gamma_bar, with gamma_bar = 10^(gamma_avg_db / 10).
LinkConfig make_link(const TurbulenceRegime& regime,
                     Scheme scheme,
                     double gamma_avg_db,
                     double gamma_th_db,
                     double eta = 1.0);

// Parameter lists of the G^{6,3}_{5,8} terms in the DPSK closed forms.
struct PsiVectors
{
    std::array<double, 5> psi1{};
    std::array<double, 8> psi2{};
    std::array<double, 5> psi3{};

    static PsiVectors from(const FsoParams& p);
};

//---------------------------------------------------------------------------//
// Outage
//---------------------------------------------------------------------------//

// 1 - (1 - p_rf)(1 - p_fso): the relay or the destination is in outage.
double outage_combined(double p_rf, double p_fso);

// Closed-form outage with Alamouti coding on the RF hop.
double outage_ac(const LinkConfig& cfg);

// Closed-form outage with transmit antenna selection on the RF hop.
double outage_as(const LinkConfig& cfg);

// Dispatches on cfg.rf.scheme.
double outage(const LinkConfig& cfg);

// End-to-end SNR CDF at gamma, built from the per-hop CDFs.
double cdf_end_to_end(double gamma, const LinkConfig& cfg);

//---------------------------------------------------------------------------//
// DPSK bit-error rate
//---------------------------------------------------------------------------//

struct QuadratureOptions
{
    // Successive refinement levels must agree to this relative tolerance.
    double rel_tol = 1e-8;
    int max_levels = 12;
};

// 1/2 * integral_0^inf exp(-g) F(g) dg by exp-sinh quadrature.
double ber_quadrature(const std::function<double(double)>& cdf, const QuadratureOptions& opts = {});

// Same, with F = cdf_end_to_end(., cfg).
double ber_quadrature(const LinkConfig& cfg, const QuadratureOptions& opts = {});

enum class AcBerForm
{
    // Second Meijer-G term weighted by 1 / (2 gamma_bar_RF (1 + 1/gamma_bar_RF)^2),
    // as commonly printed.
    printed,
    // Weighted by 1 / (gamma_bar_RF (1 + 1/gamma_bar_RF)^2), which is what the
    // Laplace integral of the outage expression produces.
    corrected,
};

struct ClosedFormOptions
{
    AcBerForm ac_form = AcBerForm::printed;
    // Added to every psi2 entry; a fault-injection hook for validation.
    double psi2_perturbation = 0.0;
};

// Throws RangeError when the result falls outside [-1e-9, 1/2 + 1e-9].
double ber_ac_closed(const LinkConfig& cfg, const ClosedFormOptions& opts = {});
double ber_as_closed(const LinkConfig& cfg, const ClosedFormOptions& opts = {});
double ber_closed(const LinkConfig& cfg, const ClosedFormOptions& opts = {});

// Analytic BER used for reporting: the AS closed form, or the corrected AC
// closed form (both agree with ber_quadrature).
double ber_analytic(const LinkConfig& cfg);

} // namespace fsorf
