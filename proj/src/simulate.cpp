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

#include "fsorf/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fsorf
{
namespace
{

constexpr double z95 = 1.959963984540054;
constexpr double min_events = 20.0;

// Stream indices of the two estimators are disjoint.
constexpr std::uint64_t snr_stream_base = 0;
constexpr std::uint64_t symbol_stream_base = std::uint64_t{1} << 40;

// Neumaier compensated sum.
class CompensatedSum
{
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
        {
            comp_ += (sum_ - t) + x;
        }
        else
        {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};

struct BlockStats
{
    std::size_t count = 0; // outage events
    CompensatedSum sum;
    CompensatedSum sum_sq;
};

/*
 * Runs `kernel(rng, n, stats)` once per block of sim_block_size samples (the
 * last block may be short) on sim.n_workers threads and merges the per-block
 * statistics in block order.
 */
template <class Kernel>
BlockStats run_blocks(const SimConfig& sim, std::uint64_t stream_base, Kernel&& kernel)
{
    sim.validate();
    const std::size_t n_blocks = (sim.n_samples + sim_block_size - 1) / sim_block_size;
    const std::size_t blocks_per_batch = std::max<std::size_t>(1, (sim.batch_size + sim_block_size - 1) / sim_block_size);
    std::vector<BlockStats> blocks(n_blocks);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try
        {
            for (;;)
            {
                const std::size_t first = next.fetch_add(blocks_per_batch);
                if (first >= n_blocks)
                {
                    return;
                }
                const std::size_t last = std::min(n_blocks, first + blocks_per_batch);
                for (std::size_t b = first; b < last; ++b)
                {
                    RngStream rng(sim.seed, stream_base + b);
                    const std::size_t n = std::min(sim_block_size, sim.n_samples - b * sim_block_size);
                    kernel(rng, n, blocks[b]);
                }
            }
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
            {
                failure = std::current_exception();
            }
            next.store(n_blocks);
        }
    };

    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(sim.n_workers, n_blocks));
    if (n_threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> threads;
        threads.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i)
        {
            threads.emplace_back(worker);
        }
        for (auto& t : threads)
        {
            t.join();
        }
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }

    BlockStats total;
    for (const auto& b : blocks)
    {
        total.count += b.count;
        total.sum.add(b.sum.value());
        total.sum_sq.add(b.sum_sq.value());
    }
    return total;
}

double dpsk_kernel(double gamma)
{
    return 0.5 * std::exp(-gamma);
}

std::complex<double> complex_normal(RngStream& rng, double variance)
{
    const double s = std::sqrt(variance / 2.0);
    const double re = rng.normal();
    const double im = rng.normal();
    return {s * re, s * im};
}

} // namespace

void SimConfig::validate() const
{
    if (n_samples < 1000)
    {
        throw ParameterError("SimConfig: n_samples must be at least 1000");
    }
    if (n_workers < 1)
    {
        throw ParameterError("SimConfig: n_workers must be at least 1");
    }
    if (batch_size < 1)
    {
        throw ParameterError("SimConfig: batch_size must be at least 1");
    }
}

SimResult wilson_result(std::size_t k, std::size_t n)
{
    if (n == 0 || k > n)
    {
        throw ParameterError("wilson_result: need 0 <= k <= n and n > 0");
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z95 * z95;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z95 / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));

    SimResult r;
    r.estimate = p;
    r.ci95_half_width = half;
    // The bounds are exactly 0 and 1 at the extremes; avoid round-off there.
    r.ci95_low = k == 0 ? 0.0 : std::max(0.0, center - half);
    r.ci95_high = k == n ? 1.0 : std::min(1.0, center + half);
    r.n_samples = n;
    r.undersampled = static_cast<double>(k) < min_events || static_cast<double>(n - k) < min_events;
    return r;
}

SimResult normal_result(double sum, double sum_sq, std::size_t n)
{
    if (n < 2)
    {
        throw ParameterError("normal_result: need at least two samples");
    }
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
    SimResult r;
    r.estimate = mean;
    r.ci95_half_width = z95 * std::sqrt(var / nn);
    r.ci95_low = mean - r.ci95_half_width;
    r.ci95_high = mean + r.ci95_half_width;
    r.n_samples = n;
    r.undersampled = nn * mean < min_events;
    return r;
}

LinkEstimates mc_link(const LinkConfig& cfg, const SimConfig& sim)
{
    cfg.validate();
    const BlockStats total = run_blocks(sim, snr_stream_base, [&](RngStream& rng, std::size_t n, BlockStats& out) {
        for (std::size_t i = 0; i < n; ++i)
        {
            const double g_rf = sample_rf_snr(cfg.rf, rng);
            const double g_fso = sample_fso_snr(cfg.fso, rng);
            const double g = std::min(g_rf, g_fso);
            if (g < cfg.gamma_th)
            {
                ++out.count;
            }
            const double k = dpsk_kernel(g);
            out.sum.add(k);
            out.sum_sq.add(k * k);
        }
    });
    LinkEstimates est{wilson_result(total.count, sim.n_samples),
                      normal_result(total.sum.value(), total.sum_sq.value(), sim.n_samples)};
    return est;
}

SimResult mc_outage(const LinkConfig& cfg, const SimConfig& sim)
{
    return mc_link(cfg, sim).outage;
}

SimResult mc_ber(const LinkConfig& cfg, const SimConfig& sim)
{
    return mc_link(cfg, sim).ber;
}

//---------------------------------------------------------------------------//
// Symbol level
//---------------------------------------------------------------------------//

AlamoutiOutput alamouti_roundtrip(std::complex<double> h1,
                                  std::complex<double> h2,
                                  std::complex<double> x1,
                                  std::complex<double> x2,
                                  double sigma1,
                                  RngStream& rng)
{
    if (!(sigma1 >= 0))
    {
        throw ParameterError("alamouti_roundtrip: sigma1 must be non-negative");
    }
    const double var = sigma1 * sigma1;
    const std::complex<double> n1 = complex_normal(rng, var);
    const std::complex<double> n2 = complex_normal(rng, var);

    // Slot 1: antennas send (x1, x2); slot 2: (-x2*, x1*).
    const std::complex<double> y1 = h1 * x1 + h2 * x2 + n1;
    const std::complex<double> y2 = -h1 * std::conj(x2) + h2 * std::conj(x1) + n2;

    AlamoutiOutput out;
    out.r1 = std::conj(h1) * y1 + h2 * std::conj(y2);
    out.r2 = std::conj(h2) * y1 - h1 * std::conj(y2);
    out.gain = std::norm(h1) + std::norm(h2);
    out.noise_var = var * out.gain;
    return out;
}

AntennaChoice select_antenna(double gamma_11, double gamma_12)
{
    if (!(gamma_11 >= 0) || !(gamma_12 >= 0))
    {
        throw ParameterError("select_antenna: SNRs must be non-negative");
    }
    return gamma_12 > gamma_11 ? AntennaChoice{2, gamma_12} : AntennaChoice{1, gamma_11};
}

int relay_forward(int d, double eta, double intensity, double sigma2, RngStream& rng)
{
    if (d != 1 && d != -1)
    {
        throw ParameterError("relay_forward: symbol must be +1 or -1");
    }
    if (!(intensity > 0) || !(sigma2 >= 0) || !(eta >= 0))
    {
        throw ParameterError("relay_forward: need I > 0, sigma2 >= 0, eta >= 0");
    }
    const double x_r = 1.0 + eta * d;
    const double received = intensity * x_r + sigma2 * rng.normal();
    const double ac = received - intensity;
    return ac >= 0 ? 1 : -1;
}

SimResult symbol_level_e2e_ber(const LinkConfig& cfg, const SimConfig& sim)
{
    cfg.validate();
    const double sigma1 = 1.0 / std::sqrt(cfg.rf.gamma_bar);

    const BlockStats total = run_blocks(sim, symbol_stream_base, [&](RngStream& rng, std::size_t n, BlockStats& out) {
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::complex<double> h1 = complex_normal(rng, 1.0);
            const std::complex<double> h2 = complex_normal(rng, 1.0);

            double g_rf = 0;
            if (cfg.rf.scheme == Scheme::alamouti)
            {
                const double s1 = rng.uniform() < 0.5 ? -1.0 : 1.0;
                const double s2 = rng.uniform() < 0.5 ? -1.0 : 1.0;
                const AlamoutiOutput a = alamouti_roundtrip(h1, h2, s1, s2, sigma1, rng);
                g_rf = a.gain * a.gain / a.noise_var;
            }
            else
            {
                g_rf = select_antenna(std::norm(h1) * cfg.rf.gamma_bar, std::norm(h2) * cfg.rf.gamma_bar).gamma;
            }
            const double g_fso = sample_fso_snr(cfg.fso, rng);

            const double p1 = dpsk_kernel(g_rf);
            const double p2 = dpsk_kernel(g_fso);
            if (dpsk_kernel(std::min(g_rf, g_fso)) < std::max(p1, p2))
            {
                throw std::logic_error("symbol_level_e2e_ber: min-SNR kernel below a per-hop kernel");
            }

            double err = 0;
            if (sim.bit_flip)
            {
                const bool e1 = rng.uniform() < p1;
                const bool e2 = rng.uniform() < p2;
                err = (e1 != e2) ? 1.0 : 0.0;
            }
            else
            {
                err = compose_hop_errors(p1, p2);
            }
            out.sum.add(err);
            out.sum_sq.add(err * err);
        }
    });
    SimResult r = normal_result(total.sum.value(), total.sum_sq.value(), sim.n_samples);
    r.method = SimMethod::symbol_level;
    return r;
}

} // namespace fsorf
