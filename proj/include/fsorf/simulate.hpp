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

#include <complex>
#include <cstddef>
#include <cstdint>

#include "fsorf/link_analytics.hpp"
#include "fsorf/rng.hpp"

namespace fsorf
{

// Samples drawn from one RngStream. Stream k covers samples
// [k * sim_block_size, (k + 1) * sim_block_size), so the sequence of draws
// does not depend on how the work is split across threads.
inline constexpr std::size_t sim_block_size = 8192;

struct SimConfig
{
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned n_workers = 1;
    // Samples handed to a worker at a time; rounded up to whole blocks.
    std::size_t batch_size = 65536;
    // Symbol-level estimator only: draw per-hop bit errors instead of
    // averaging the conditional error probabilities.
    bool bit_flip = false;

    // n_samples >= 1000, n_workers >= 1, batch_size >= 1.
    void validate() const;
};

enum class SimMethod
{
    snr_level,
    symbol_level,
};

struct SimResult
{
    double estimate = 0;
    double ci95_half_width = 0;
    std::size_t n_samples = 0;
    SimMethod method = SimMethod::snr_level;
    // Outage estimates: the Wilson bounds. BER estimates: estimate -/+ half width.
    double ci95_low = 0;
    double ci95_high = 0;
    // Fewer than 20 expected events; the interval is unreliable.
    bool undersampled = false;
};

struct LinkEstimates
{
    SimResult outage;
    SimResult ber;
};

// One pass over the channel draws yields both estimates; mc_outage and mc_ber
// are views of it.
LinkEstimates mc_link(const LinkConfig& cfg, const SimConfig& sim);

// Fraction of draws with min(gamma_RF, gamma_FSO) < gamma_th.
SimResult mc_outage(const LinkConfig& cfg, const SimConfig& sim);

// Mean of 1/2 exp(-min(gamma_RF, gamma_FSO)).
SimResult mc_ber(const LinkConfig& cfg, const SimConfig& sim);

// Wilson score interval for k successes out of n.
SimResult wilson_result(std::size_t k, std::size_t n);

// Normal interval from a running sum and sum of squares.
SimResult normal_result(double sum, double sum_sq, std::size_t n);

//---------------------------------------------------------------------------//
// Symbol-level operations
//---------------------------------------------------------------------------//

struct AlamoutiOutput
{
    std::complex<double> r1;
    std::complex<double> r2;
    double gain = 0;      // |h1|^2 + |h2|^2, the signal coefficient after combining
    double noise_var = 0; // sigma1^2 * gain, per combined output
};

// Sends x1, x2 as the 2x2 Alamouti block over (h1, h2) with complex AWGN of
// variance sigma1^2 per receive sample, then applies the linear combiner.
AlamoutiOutput alamouti_roundtrip(std::complex<double> h1,
                                  std::complex<double> h2,
                                  std::complex<double> x1,
                                  std::complex<double> x2,
                                  double sigma1,
                                  RngStream& rng);

struct AntennaChoice
{
    int index = 1; // 1 or 2
    double gamma = 0;
};

// Larger SNR wins; ties go to antenna 1.
AntennaChoice select_antenna(double gamma_11, double gamma_12);

// DC-biased intensity modulation x_R = 1 + eta d over intensity I with real
// AWGN of standard deviation sigma2; after removing the bias I the destination
// decides by sign. Returns +1 or -1.
int relay_forward(int d, double eta, double intensity, double sigma2, RngStream& rng);

// Error probability of two cascaded binary hops with independent errors.
inline double compose_hop_errors(double p1, double p2)
{
    return p1 + p2 - 2.0 * p1 * p2;
}

// Detect-and-forward simulation: per-draw Rayleigh channels through the
// Alamouti combiner (or antenna selection), FSO intensity from the
// Gamma-Gamma and pointing samplers, per-hop DPSK error 1/2 exp(-gamma_hop),
// end-to-end error p1 + p2 - 2 p1 p2.
SimResult symbol_level_e2e_ber(const LinkConfig& cfg, const SimConfig& sim);

} // namespace fsorf
