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

#include "fsorf/link_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsorf/quadrature.hpp"

namespace fsorf
{
namespace
{

constexpr double range_tolerance = 1e-9;

double checked_ber(wide_t value, const char* what)
{
    if (!(value >= -range_tolerance && value <= 0.5 + range_tolerance))
    {
        throw RangeError(std::string(what) + ": BER outside [0, 1/2]");
    }
    return std::clamp(static_cast<double>(value), 0.0, 0.5);
}

void require_scheme(const LinkConfig& cfg, Scheme scheme, const char* what)
{
    if (cfg.rf.scheme != scheme)
    {
        throw ParameterError(std::string(what) + ": wrong diversity scheme in LinkConfig");
    }
}

// xi^2 2^{alpha+beta-shift} / (pi Gamma(alpha) Gamma(beta)), via logs.
wide_t fso_prefactor(const FsoParams& p, int shift)
{
    const wide_t x2 = p.xi_squared();
    const wide_t log_value = std::log(x2) + (p.alpha + p.beta - shift) * std::numbers::ln2_v<wide_t>
                             - std::log(std::numbers::pi_v<wide_t>) - ln_gamma(p.alpha).log_abs
                             - ln_gamma(p.beta).log_abs;
    return std::exp(log_value);
}

MeijerGSpec ber_kernel(const std::array<double, 5>& upper, const std::array<double, 8>& lower)
{
    return MeijerGSpec{6, 3, {upper.begin(), upper.end()}, {lower.begin(), lower.end()}};
}

// (alpha beta kappa)^2 / (16 gamma_bar_FSO c).
double ber_kernel_argument(const FsoParams& p, double c)
{
    const double abk = p.alpha * p.beta * p.kappa;
    return abk * abk / (16.0 * p.gamma_bar * c);
}

PsiVectors perturbed_psi(const FsoParams& p, double delta)
{
    PsiVectors psi = PsiVectors::from(p);
    for (double& v : psi.psi2)
    {
        v += delta;
    }
    return psi;
}

} // namespace

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

void LinkConfig::validate() const
{
    fso.validate();
    rf.validate();
    if (!(gamma_th > 0) || !std::isfinite(gamma_th))
    {
        throw ParameterError("LinkConfig: gamma_th must be positive and finite");
    }
    if (!(eta > 0))
    {
        throw ParameterError("LinkConfig: eta must be positive");
    }
}

LinkConfig make_link(const TurbulenceRegime& regime,
                     Scheme scheme,
                     double gamma_avg_db,
                     double gamma_th_db,
                     double eta)
{
    const double gamma_bar = db_to_linear(gamma_avg_db);
    LinkConfig cfg{regime.fso(eta * eta * gamma_bar), RfParams{gamma_bar, scheme}, db_to_linear(gamma_th_db),
                   eta};
    cfg.validate();
    return cfg;
}

PsiVectors PsiVectors::from(const FsoParams& p)
{
    const double x2 = p.xi_squared();
    PsiVectors v;
    v.psi1 = {0.0, 0.5, 1.0, (1.0 + x2) / 2.0, (2.0 + x2) / 2.0};
    v.psi2 = {x2 / 2.0,        (x2 + 1.0) / 2.0, p.alpha / 2.0, (p.alpha + 1.0) / 2.0,
              p.beta / 2.0,    (p.beta + 1.0) / 2.0, 0.0,       0.5};
    v.psi3 = {-1.0, 0.5, 1.0, (1.0 + x2) / 2.0, (2.0 + x2) / 2.0};
    return v;
}

//---------------------------------------------------------------------------//
// Outage
//---------------------------------------------------------------------------//

double outage_combined(double p_rf, double p_fso)
{
    if (!(p_rf >= 0 && p_rf <= 1) || !(p_fso >= 0 && p_fso <= 1))
    {
        throw ParameterError("outage_combined: probabilities must lie in [0, 1]");
    }
    return p_rf + p_fso * (1.0 - p_rf);
}

double outage_ac(const LinkConfig& cfg)
{
    require_scheme(cfg, Scheme::alamouti, "outage_ac");
    cfg.validate();
    const wide_t x = cfg.gamma_th / cfg.rf.gamma_bar;
    const wide_t f_fso = cdf_fso(cfg.gamma_th, cfg.fso);
    const wide_t value = 1 - (1 + x) * std::exp(-x) * (1 - f_fso);
    return std::clamp(static_cast<double>(value), 0.0, 1.0);
}

double outage_as(const LinkConfig& cfg)
{
    require_scheme(cfg, Scheme::antenna_selection, "outage_as");
    cfg.validate();
    const wide_t x = cfg.gamma_th / cfg.rf.gamma_bar;
    const wide_t e1 = std::exp(-x);
    const wide_t e2 = std::exp(-2 * x);
    const wide_t f_fso = cdf_fso(cfg.gamma_th, cfg.fso);
    // Written with the Meijer-G term kept separate: f_fso = prefactor * G.
    const wide_t value = 1 - 2 * e1 + e2 + (2 * e1 - e2) * f_fso;
    return std::clamp(static_cast<double>(value), 0.0, 1.0);
}

double outage(const LinkConfig& cfg)
{
    return cfg.rf.scheme == Scheme::alamouti ? outage_ac(cfg) : outage_as(cfg);
}

double cdf_end_to_end(double gamma, const LinkConfig& cfg)
{
    return outage_combined(cdf_rf(gamma, cfg.rf), cdf_fso(gamma, cfg.fso));
}

//---------------------------------------------------------------------------//
// BER
//---------------------------------------------------------------------------//

double ber_quadrature(const std::function<double(double)>& cdf, const QuadratureOptions& opts)
{
    auto integrand = [&](double g) {
        const double weight = std::exp(-g);
        return weight == 0.0 ? 0.0 : 0.5 * weight * cdf(g);
    };
    const auto est = quad::integrate_exp_sinh(integrand, opts.rel_tol, opts.max_levels);
    return est.value;
}

double ber_quadrature(const LinkConfig& cfg, const QuadratureOptions& opts)
{
    cfg.validate();
    return ber_quadrature([&](double g) { return cdf_end_to_end(g, cfg); }, opts);
}

double ber_ac_closed(const LinkConfig& cfg, const ClosedFormOptions& opts)
{
    require_scheme(cfg, Scheme::alamouti, "ber_ac_closed");
    cfg.validate();
    const FsoParams& fso = cfg.fso;
    const wide_t g_rf = cfg.rf.gamma_bar;
    const wide_t c = 1 + 1 / g_rf;
    const PsiVectors psi = perturbed_psi(fso, opts.psi2_perturbation);
    const double z = ber_kernel_argument(fso, static_cast<double>(c));

    const wide_t g1 = meijer_g(ber_kernel(psi.psi1, psi.psi2), z);
    const wide_t g3 = meijer_g(ber_kernel(psi.psi3, psi.psi2), z);
    const wide_t second_weight = opts.ac_form == AcBerForm::printed ? 1 / (g_rf * 2 * c * c)
                                                                     : 1 / (g_rf * c * c);

    const wide_t rf_part = wide_t{0.5} - (1 + 2 / g_rf) / (2 * c * c);
    const wide_t fso_part = fso_prefactor(fso, 4) * (g1 / c + second_weight * g3);
    return checked_ber(rf_part + fso_part, "ber_ac_closed");
}

double ber_as_closed(const LinkConfig& cfg, const ClosedFormOptions& opts)
{
    require_scheme(cfg, Scheme::antenna_selection, "ber_as_closed");
    cfg.validate();
    const FsoParams& fso = cfg.fso;
    const wide_t g_rf = cfg.rf.gamma_bar;
    const wide_t c1 = 1 + 1 / g_rf;
    const wide_t c2 = 1 + 2 / g_rf;
    const PsiVectors psi = perturbed_psi(fso, opts.psi2_perturbation);
    const MeijerGSpec kernel = ber_kernel(psi.psi1, psi.psi2);

    const wide_t g_c1 = meijer_g(kernel, ber_kernel_argument(fso, static_cast<double>(c1)));
    const wide_t g_c2 = meijer_g(kernel, ber_kernel_argument(fso, static_cast<double>(c2)));

    const wide_t rf_part = wide_t{0.5} - 1 / c1 + wide_t{0.5} / c2;
    const wide_t fso_part = fso_prefactor(fso, 3) * (g_c1 / c1 - wide_t{0.5} / c2 * g_c2);
    return checked_ber(rf_part + fso_part, "ber_as_closed");
}

double ber_closed(const LinkConfig& cfg, const ClosedFormOptions& opts)
{
    return cfg.rf.scheme == Scheme::alamouti ? ber_ac_closed(cfg, opts) : ber_as_closed(cfg, opts);
}

double ber_analytic(const LinkConfig& cfg)
{
    return ber_closed(cfg, ClosedFormOptions{AcBerForm::corrected, 0.0});
}

} // namespace fsorf
