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

#include "fsorf/channel_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fsorf
{
namespace
{

constexpr double cdf_tolerance = 1e-9;

bool positive_or_inf(double v)
{
    return v > 0 && !std::isnan(v);
}

double clamp_probability(double value, const char* what)
{
    if (!(value >= -cdf_tolerance && value <= 1 + cdf_tolerance))
    {
        throw RangeError(std::string(what) + ": value outside [0, 1] beyond round-off");
    }
    return std::clamp(value, 0.0, 1.0);
}

} // namespace

//---------------------------------------------------------------------------//
// Parameters
//---------------------------------------------------------------------------//

double mean_pointing_gain(double xi)
{
    if (std::isinf(xi))
    {
        return 1.0;
    }
    const double x2 = xi * xi;
    return x2 / (1.0 + x2);
}

FsoParams FsoParams::make(double alpha, double beta, double xi, double gamma_bar)
{
    FsoParams p{alpha, beta, xi, mean_pointing_gain(xi), gamma_bar};
    p.validate();
    return p;
}

void FsoParams::validate() const
{
    if (!positive_or_inf(alpha) || !positive_or_inf(beta) || !positive_or_inf(xi))
    {
        throw ParameterError("FsoParams: alpha, beta and xi must be positive");
    }
    if (!(kappa > 0) || !std::isfinite(kappa))
    {
        throw ParameterError("FsoParams: kappa must be positive and finite");
    }
    if (!(gamma_bar > 0) || !std::isfinite(gamma_bar))
    {
        throw ParameterError("FsoParams: gamma_bar must be positive and finite");
    }
}

TurbulenceRegime moderate_regime()
{
    return {"moderate", 4.0, 1.9, 10.45};
}

TurbulenceRegime strong_regime()
{
    return {"strong", 4.2, 1.4, 2.45};
}

TurbulenceRegime regime_preset(std::string_view name)
{
    if (name == "moderate")
    {
        return moderate_regime();
    }
    if (name == "strong")
    {
        return strong_regime();
    }
    throw ParameterError("unknown turbulence regime '" + std::string(name) + "'");
}

std::string_view to_string(Scheme scheme)
{
    return scheme == Scheme::alamouti ? "alamouti" : "as";
}

Scheme parse_scheme(std::string_view text)
{
    if (text == "alamouti" || text == "ac")
    {
        return Scheme::alamouti;
    }
    if (text == "as" || text == "selection" || text == "antenna_selection")
    {
        return Scheme::antenna_selection;
    }
    throw ParameterError("unknown diversity scheme '" + std::string(text) + "'");
}

void RfParams::validate() const
{
    if (!(gamma_bar > 0) || !std::isfinite(gamma_bar))
    {
        throw ParameterError("RfParams: gamma_bar must be positive and finite");
    }
}

//---------------------------------------------------------------------------//
// Samplers
//---------------------------------------------------------------------------//

double sample_gamma(double shape, RngStream& rng)
{
    if (!positive_or_inf(shape))
    {
        throw ParameterError("sample_gamma: shape must be positive");
    }
    if (std::isinf(shape))
    {
        return shape;
    }
    if (shape < 1.0)
    {
        // If X ~ Gamma(a + 1) and U ~ U(0,1), X U^{1/a} ~ Gamma(a).
        const double boosted = sample_gamma(shape + 1.0, rng);
        return boosted * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true)
    {
        const double x = rng.normal();
        double v = 1.0 + c * x;
        if (v <= 0.0)
        {
            continue;
        }
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
        {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
        {
            return d * v;
        }
    }
}

double sample_gamma_gamma(double alpha, double beta, RngStream& rng)
{
    if (!positive_or_inf(alpha) || !positive_or_inf(beta))
    {
        throw ParameterError("sample_gamma_gamma: shapes must be positive");
    }
    const double x = std::isinf(alpha) ? 1.0 : sample_gamma(alpha, rng) / alpha;
    const double y = std::isinf(beta) ? 1.0 : sample_gamma(beta, rng) / beta;
    return x * y;
}

double sample_pointing_loss(double xi, RngStream& rng)
{
    if (!positive_or_inf(xi))
    {
        throw ParameterError("sample_pointing_loss: xi must be positive");
    }
    const double re = rng.normal();
    const double im = rng.normal();
    if (std::isinf(xi))
    {
        return 1.0;
    }
    const double energy = 0.5 * (re * re + im * im);
    return std::exp(-energy / (xi * xi));
}

double sample_pointing_loss_inverse(double xi, RngStream& rng)
{
    if (!positive_or_inf(xi))
    {
        throw ParameterError("sample_pointing_loss_inverse: xi must be positive");
    }
    const double u = rng.uniform();
    return std::isinf(xi) ? 1.0 : std::pow(u, 1.0 / (xi * xi));
}

double sample_fso_snr(const FsoParams& p, RngStream& rng)
{
    const double irradiance = sample_gamma_gamma(p.alpha, p.beta, rng) * sample_pointing_loss(p.xi, rng);
    const double normalised = irradiance / mean_pointing_gain(p.xi);
    return p.gamma_bar * normalised * normalised;
}

double sample_rf_snr(const RfParams& p, RngStream& rng)
{
    const double g1 = p.gamma_bar * rng.exponential();
    const double g2 = p.gamma_bar * rng.exponential();
    return p.scheme == Scheme::alamouti ? g1 + g2 : std::max(g1, g2);
}

//---------------------------------------------------------------------------//
// Analytic statistics
//---------------------------------------------------------------------------//

MeijerGSpec fso_cdf_kernel(const FsoParams& p)
{
    const double x2 = p.xi_squared();
    return MeijerGSpec{3, 1, {1.0, 1.0 + x2}, {x2, p.alpha, p.beta, 0.0}};
}

double cdf_fso(double gamma, const FsoParams& p)
{
    p.validate();
    if (!(gamma >= 0))
    {
        throw ParameterError("cdf_fso: gamma must be non-negative");
    }
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.xi))
    {
        throw ParameterError("cdf_fso: analytic CDF needs finite alpha, beta and xi");
    }
    if (gamma == 0)
    {
        return 0.0;
    }
    if (std::isinf(gamma))
    {
        return 1.0;
    }
    const double x2 = p.xi_squared();
    const double log_prefactor = std::log(x2) - static_cast<double>(ln_gamma(p.alpha).log_abs)
                                 - static_cast<double>(ln_gamma(p.beta).log_abs);
    const double z = p.alpha * p.beta * p.kappa * std::sqrt(gamma / p.gamma_bar);
    const double g = meijer_g(fso_cdf_kernel(p), z);
    return clamp_probability(std::exp(log_prefactor) * g, "cdf_fso");
}

double cdf_rayleigh(double gamma, double gamma_bar)
{
    if (!(gamma >= 0) || !(gamma_bar > 0))
    {
        throw ParameterError("cdf_rayleigh: need gamma >= 0 and gamma_bar > 0");
    }
    return -std::expm1(-gamma / gamma_bar);
}

double mgf_rf_alamouti(double s, double gamma_bar)
{
    if (!(s >= 0) || !(gamma_bar > 0))
    {
        throw ParameterError("mgf_rf_alamouti: need s >= 0 and gamma_bar > 0");
    }
    const double branch = 1.0 / (s * gamma_bar + 1.0);
    return branch * branch;
}

double cdf_rf(double gamma, const RfParams& p)
{
    p.validate();
    if (!(gamma >= 0))
    {
        throw ParameterError("cdf_rf: gamma must be non-negative");
    }
    const double x = gamma / p.gamma_bar;
    if (p.scheme == Scheme::alamouti)
    {
        // 1 - (1 + x) e^{-x}; below x = 0.5 sum e^{-x} sum_{k>=2} x^k / k!
        // directly, the closed form cancels there.
        if (x < 0.5)
        {
            double term = 0.5 * x * x;
            double sum = term;
            for (int k = 3; term > 1e-18 * sum; ++k)
            {
                term *= x / k;
                sum += term;
            }
            return std::exp(-x) * sum;
        }
        return -std::expm1(-x) - x * std::exp(-x);
    }
    const double branch = -std::expm1(-x);
    return branch * branch;
}

} // namespace fsorf
