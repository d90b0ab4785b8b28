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

#include <string>
#include <string_view>

#include "fsorf/rng.hpp"
#include "fsorf/special_functions.hpp"

namespace fsorf
{

//---------------------------------------------------------------------------//
// Parameters
//---------------------------------------------------------------------------//

/*!
 * Optical hop: Gamma-Gamma turbulence with zero-boresight pointing error.
 *
 * `kappa` scales the Meijer-G argument of the CDF. It defaults to the mean
 * pointing gain xi^2 / (1 + xi^2), under which the CDF describes the SNR
 * gamma_bar * (I / E[I])^2 produced by `sample_fso_snr`. Any of alpha, beta or
 * xi may be +inf to switch that fading component off.
 */
struct FsoParams
{
    double alpha = 4.0;
    double beta = 1.9;
    double xi = 10.45;
    double kappa = 0.0;
    double gamma_bar = 1.0; // linear average electrical SNR

    // Parameters with kappa derived from xi.
    static FsoParams make(double alpha, double beta, double xi, double gamma_bar);

    [[nodiscard]] double xi_squared() const { return xi * xi; }
    // Throws ParameterError on non-positive or NaN fields.
    void validate() const;
};

// E[h_p / A_0] = xi^2 / (1 + xi^2); equals 1 for xi = +inf.
double mean_pointing_gain(double xi);

struct TurbulenceRegime
{
    std::string name;
    double alpha = 0;
    double beta = 0;
    double xi = 0;

    [[nodiscard]] FsoParams fso(double gamma_bar) const
    {
        return FsoParams::make(alpha, beta, xi, gamma_bar);
    }
};

TurbulenceRegime moderate_regime();
TurbulenceRegime strong_regime();

// "moderate" or "strong"; throws ParameterError otherwise.
TurbulenceRegime regime_preset(std::string_view name);

enum class Scheme
{
    alamouti,
    antenna_selection,
};

std::string_view to_string(Scheme scheme);
// Accepts "alamouti"/"ac" and "as"/"selection"/"antenna_selection".
Scheme parse_scheme(std::string_view text);

// RF hop: two transmit antennas over i.i.d. Rayleigh fading.
struct RfParams
{
    double gamma_bar = 1.0; // linear average SNR per branch
    Scheme scheme = Scheme::alamouti;

    void validate() const;
};

//---------------------------------------------------------------------------//
// Samplers
//---------------------------------------------------------------------------//

// Gamma(shape, scale 1). Marsaglia-Tsang squeeze; shapes below one are boosted
// with X * U^{1/shape}. shape = +inf returns +inf (callers normalise).
double sample_gamma(double shape, RngStream& rng);

// Unit-mean irradiance X * Y with X ~ Gamma(alpha, 1/alpha), Y ~ Gamma(beta, 1/beta).
double sample_gamma_gamma(double alpha, double beta, RngStream& rng);

// Normalised pointing gain h_p / A_0 = exp(-r^2 / (2 xi^2)) with r^2 the
// squared magnitude of a standard complex Gaussian pair.
double sample_pointing_loss(double xi, RngStream& rng);

// Same law by inversion: U^{1/xi^2}.
double sample_pointing_loss_inverse(double xi, RngStream& rng);

// gamma_bar * (I / E[I])^2 with I = I_a * h_p / A_0 (square-law detection).
double sample_fso_snr(const FsoParams& p, RngStream& rng);

// Alamouti: gamma_1 + gamma_2; selection: max(gamma_1, gamma_2); each
// gamma_i exponential with mean gamma_bar.
double sample_rf_snr(const RfParams& p, RngStream& rng);

//---------------------------------------------------------------------------//
// Analytic statistics
//---------------------------------------------------------------------------//

// The Meijer-G instance G^{3,1}_{2,4}(. | 1, 1 + xi^2; xi^2, alpha, beta, 0).
MeijerGSpec fso_cdf_kernel(const FsoParams& p);

// CDF of the optical SNR, clamped to [0, 1].
double cdf_fso(double gamma, const FsoParams& p);

// 1 - exp(-gamma / gamma_bar).
double cdf_rayleigh(double gamma, double gamma_bar);

// (1 / (s gamma_bar + 1))^2, the MGF of the Alamouti SNR sum.
double mgf_rf_alamouti(double s, double gamma_bar);

// Alamouti: 1 - (1 + x) e^{-x}; selection: (1 - e^{-x})^2; x = gamma / gamma_bar.
double cdf_rf(double gamma, const RfParams& p);

} // namespace fsorf
