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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "fsorf/simulate.hpp"
#include "test_support.hpp"

using namespace fsorf;
using fsorf_test::binomial_se;
using fsorf_test::rel_err;

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

LinkConfig raw_link(const FsoParams& fso, Scheme s, double g_rf, double gamma_th)
{
    return LinkConfig{fso, RfParams{g_rf, s}, gamma_th, 1.0};
}

// Upper Gaussian tail by Simpson integration of the density.
double gaussian_tail(double x)
{
    return fsorf_test::simpson([](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); },
                               x, x + 40.0, 40000);
}

} // namespace

TEST_SUITE("intervals")
{
    TEST_CASE("Wilson interval")
    {
        const SimResult zero = wilson_result(0, 1000);
        CHECK(zero.estimate == 0.0);
        CHECK(zero.ci95_low == 0.0);
        CHECK(zero.ci95_high > 0.0);
        CHECK(zero.undersampled);
        const SimResult half = wilson_result(500, 1000);
        CHECK(half.estimate == 0.5);
        // Wilson half width reduces to z sqrt(p(1-p)/n) / (1 + z^2/n) plus a tiny term.
        CHECK(half.ci95_half_width == doctest::Approx(0.0309).epsilon(0.01));
        CHECK(!half.undersampled);
        CHECK_THROWS_AS(wilson_result(5, 4), ParameterError);
    }

    TEST_CASE("normal interval")
    {
        const SimResult r = normal_result(50.0, 50.0, 100);
        CHECK(r.estimate == 0.5);
        CHECK(r.ci95_half_width == doctest::Approx(1.959963984540054 * std::sqrt(0.25 * 100.0 / 99.0 / 100.0)));
    }

    TEST_CASE("configuration limits")
    {
        const LinkConfig cfg = make_link(moderate_regime(), Scheme::alamouti, 10.0, 10.0);
        CHECK_THROWS_AS(mc_outage(cfg, SimConfig{999, 1, 1, 1000, false}), ParameterError);
        CHECK_THROWS_AS(mc_outage(cfg, SimConfig{1000, 1, 0, 1000, false}), ParameterError);
        CHECK_THROWS_AS(mc_outage(cfg, SimConfig{1000, 1, 1, 0, false}), ParameterError);
    }
}

TEST_SUITE("snr level")
{
    TEST_CASE("degenerate outage events")
    {
        const FsoParams flat{inf, inf, inf, 1.0, 10.0};
        const SimConfig sim{100'000, 3, 1, 65536, false};
        const SimResult none = mc_outage(raw_link(flat, Scheme::alamouti, 10.0, 1e-12), sim);
        CHECK(none.estimate == 0.0);
        CHECK(none.undersampled);
        const SimResult all = mc_outage(raw_link(flat, Scheme::alamouti, 10.0, 1e300), sim);
        CHECK(all.estimate == 1.0);
    }

    TEST_CASE("deterministic effective SNR gives the constant kernel")
    {
        const SimConfig sim{10'000, 3, 1, 65536, false};
        const FsoParams flat{inf, inf, inf, 1.0, 2.0};
        const SimResult r = mc_ber(raw_link(flat, Scheme::alamouti, 1e300, 10.0), sim);
        CHECK(r.estimate == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-14));
        CHECK(r.ci95_half_width < 1e-12);
        const FsoParams dark{inf, inf, inf, 1.0, 1e-300};
        CHECK(mc_ber(raw_link(dark, Scheme::alamouti, 1e300, 10.0), sim).estimate == doctest::Approx(0.5));
    }

    TEST_CASE("kernel average over one Rayleigh branch")
    {
        const double g = 9.0;
        RngStream rng(5, 0);
        constexpr std::size_t n = 10'000'000;
        double s = 0;
        double s2 = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double k = 0.5 * std::exp(-g * rng.exponential());
            s += k;
            s2 += k * k;
        }
        const SimResult r = normal_result(s, s2, n);
        CHECK(std::abs(r.estimate - 0.05) < 3.0 * r.ci95_half_width);
    }

    TEST_CASE("outage agrees with the closed form (moderate, Alamouti, 10 dB)")
    {
        const LinkConfig cfg = make_link(moderate_regime(), Scheme::alamouti, 10.0, 10.0);
        const SimResult r = mc_outage(cfg, SimConfig{10'000'000, 2024, 1, 65536, false});
        CHECK(std::abs(r.estimate - outage_ac(cfg)) < 3.0 * r.ci95_half_width);
    }

    TEST_CASE("outage agrees with the closed form (strong, selection, 20 dB)")
    {
        const LinkConfig cfg = make_link(strong_regime(), Scheme::antenna_selection, 20.0, 10.0);
        const SimResult r = mc_outage(cfg, SimConfig{10'000'000, 2025, 1, 65536, false});
        CHECK(std::abs(r.estimate - outage_as(cfg)) < 3.0 * r.ci95_half_width);
    }

    TEST_CASE("BER agrees with the closed form (moderate, selection, 20 dB)")
    {
        const LinkConfig cfg = make_link(moderate_regime(), Scheme::antenna_selection, 20.0, 10.0);
        const SimResult r = mc_ber(cfg, SimConfig{10'000'000, 2026, 1, 65536, false});
        CHECK(std::abs(r.estimate - ber_as_closed(cfg)) < 3.0 * r.ci95_half_width);
    }

    TEST_CASE("results do not depend on worker count or batch size")
    {
        const LinkConfig cfg = make_link(strong_regime(), Scheme::alamouti, 12.0, 10.0);
        const LinkEstimates base = mc_link(cfg, SimConfig{200'003, 77, 1, 65536, false});
        for (unsigned workers : {1u, 3u, 4u})
        {
            for (std::size_t batch : {std::size_t{1}, std::size_t{8192}, std::size_t{50'000}, std::size_t{1'000'000}})
            {
                CAPTURE(workers);
                CAPTURE(batch);
                const LinkEstimates e = mc_link(cfg, SimConfig{200'003, 77, workers, batch, false});
                CHECK(e.outage.estimate == base.outage.estimate);
                CHECK(e.outage.ci95_half_width == base.outage.ci95_half_width);
                CHECK(e.ber.estimate == base.ber.estimate);
                CHECK(e.ber.ci95_half_width == base.ber.ci95_half_width);
            }
        }
        const LinkEstimates other = mc_link(cfg, SimConfig{200'003, 78, 1, 65536, false});
        CHECK(other.ber.estimate != base.ber.estimate);
    }

    TEST_CASE("interval width scales as one over root n")
    {
        const LinkConfig cfg = make_link(moderate_regime(), Scheme::antenna_selection, 10.0, 10.0);
        const LinkEstimates small = mc_link(cfg, SimConfig{100'000, 9, 1, 65536, false});
        const LinkEstimates large = mc_link(cfg, SimConfig{10'000'000, 9, 1, 65536, false});
        CHECK(rel_err(small.outage.ci95_half_width / large.outage.ci95_half_width, 10.0) < 0.1);
        CHECK(rel_err(small.ber.ci95_half_width / large.ber.ci95_half_width, 10.0) < 0.1);
    }
}

TEST_SUITE("symbol level")
{
    TEST_CASE("noiseless Alamouti combining")
    {
        RngStream rng(1, 0);
        const std::complex<double> h1{0.3, -1.2};
        const std::complex<double> h2{-0.7, 0.4};
        const std::complex<double> x1{1.0, 0.0};
        const std::complex<double> x2{0.0, -1.0};
        const AlamoutiOutput out = alamouti_roundtrip(h1, h2, x1, x2, 0.0, rng);
        const double g = std::norm(h1) + std::norm(h2);
        CHECK(out.gain == doctest::Approx(g).epsilon(1e-15));
        CHECK(std::abs(out.r1 - g * x1) < 1e-14);
        CHECK(std::abs(out.r2 - g * x2) < 1e-14);
        CHECK(out.noise_var == 0.0);

        const AlamoutiOutput single = alamouti_roundtrip(h1, 0.0, x1, x2, 0.0, rng);
        CHECK(single.gain == doctest::Approx(std::norm(h1)).epsilon(1e-15));
        CHECK(std::abs(single.r1 - std::norm(h1) * x1) < 1e-14);
    }

    TEST_CASE("combined noise variance is sigma^2 (|h1|^2 + |h2|^2)")
    {
        RngStream rng(2, 0);
        const std::complex<double> h1{0.9, 0.5};
        const std::complex<double> h2{-0.2, 1.1};
        const double sigma = 0.7;
        constexpr int trials = 1'000'000;
        double acc = 0;
        for (int i = 0; i < trials; ++i)
        {
            const AlamoutiOutput out = alamouti_roundtrip(h1, h2, 0.0, 0.0, sigma, rng);
            acc += 0.5 * (std::norm(out.r1) + std::norm(out.r2));
        }
        const double g = std::norm(h1) + std::norm(h2);
        CHECK(rel_err(acc / trials / g, sigma * sigma) < 0.01);
    }

    TEST_CASE("post-combining SNR averages twice the branch SNR")
    {
        RngStream rng(3, 0);
        const double g_bar = 4.0;
        const double sigma = 1.0 / std::sqrt(g_bar);
        constexpr int trials = 1'000'000;
        double acc = 0;
        for (int i = 0; i < trials; ++i)
        {
            const std::complex<double> h1{rng.normal() / std::sqrt(2.0), rng.normal() / std::sqrt(2.0)};
            const std::complex<double> h2{rng.normal() / std::sqrt(2.0), rng.normal() / std::sqrt(2.0)};
            const AlamoutiOutput out = alamouti_roundtrip(h1, h2, 1.0, 1.0, sigma, rng);
            acc += out.gain * out.gain / out.noise_var;
        }
        CHECK(rel_err(acc / trials, 2.0 * g_bar) < 0.01);
    }

    TEST_CASE("antenna selection")
    {
        CHECK(select_antenna(3, 1).index == 1);
        CHECK(select_antenna(3, 1).gamma == 3);
        CHECK(select_antenna(1, 3).index == 2);
        CHECK(select_antenna(1, 3).gamma == 3);
        CHECK(select_antenna(2, 2).index == 1);
        CHECK(select_antenna(2, 2).gamma == 2);
        CHECK_THROWS_AS(select_antenna(-1, 2), ParameterError);
    }

    TEST_CASE("relay forwarding decisions")
    {
        RngStream rng(4, 0);
        for (int d : {-1, 1})
        {
            for (int i = 0; i < 100; ++i)
            {
                CHECK(relay_forward(d, 1.0, 0.8, 0.0, rng) == d);
            }
        }
        CHECK_THROWS_AS(relay_forward(0, 1.0, 1.0, 1.0, rng), ParameterError);

        constexpr int trials = 1'000'000;
        int flips = 0;
        for (int i = 0; i < trials; ++i)
        {
            flips += relay_forward(1, 0.0, 1.0, 1.0, rng) != 1;
        }
        CHECK(std::abs(static_cast<double>(flips) / trials - 0.5) < 3.0 * binomial_se(0.5, trials));

        // I eta / sigma2 = 3.
        flips = 0;
        for (int i = 0; i < trials; ++i)
        {
            const int d = (i % 2 == 0) ? 1 : -1;
            flips += relay_forward(d, 0.75, 2.0, 0.5, rng) != d;
        }
        const double tail = gaussian_tail(3.0);
        CHECK(tail == doctest::Approx(0.0013498980316301).epsilon(1e-9));
        CHECK(std::abs(static_cast<double>(flips) / trials - tail) < 3.0 * binomial_se(tail, trials));
    }

    TEST_CASE("error composition of cascaded hops")
    {
        CHECK(compose_hop_errors(0.0, 0.0) == 0.0);
        CHECK(compose_hop_errors(0.013, 0.0) == 0.013);
        CHECK(compose_hop_errors(0.0, 0.2) == 0.2);
        CHECK(compose_hop_errors(0.5, 0.3) == doctest::Approx(0.5));
    }

    TEST_CASE("noiseless hops give zero end-to-end errors")
    {
        const FsoParams bright = moderate_regime().fso(1e300);
        const SimResult r = symbol_level_e2e_ber(raw_link(bright, Scheme::alamouti, 1e300, 10.0),
                                                 SimConfig{10'000, 1, 1, 65536, false});
        CHECK(r.estimate == 0.0);
        CHECK(r.method == SimMethod::symbol_level);
    }

    TEST_CASE("one perfect hop leaves the other hop's error rate")
    {
        // Deterministic optical SNR g0 and a noiseless RF hop.
        const double g0 = 1.5;
        const FsoParams flat{inf, inf, inf, 1.0, g0};
        const SimResult r = symbol_level_e2e_ber(raw_link(flat, Scheme::antenna_selection, 1e300, 10.0),
                                                 SimConfig{10'000, 1, 1, 65536, false});
        CHECK(r.estimate == doctest::Approx(0.5 * std::exp(-g0)).epsilon(1e-14));
    }

    TEST_CASE("detect-and-forward estimate versus the min-SNR kernel (moderate, 15 dB)")
    {
        for (Scheme s : {Scheme::alamouti, Scheme::antenna_selection})
        {
            const LinkConfig cfg = make_link(moderate_regime(), s, 15.0, 10.0);
            const SimConfig sim{2'000'000, 31, 1, 65536, false};
            const double symbol = symbol_level_e2e_ber(cfg, sim).estimate;
            const double kernel = mc_ber(cfg, sim).estimate;
            const double ratio = symbol / kernel;
            MESSAGE("symbol-level / min-SNR BER ratio (" << to_string(s) << ") = " << ratio);
            CHECK(ratio >= 0.5);
            CHECK(ratio <= 2.0);
        }
    }

    TEST_CASE("bit-flip audit mode agrees with kernel averaging")
    {
        const LinkConfig cfg = make_link(strong_regime(), Scheme::alamouti, 10.0, 10.0);
        const SimResult kernel = symbol_level_e2e_ber(cfg, SimConfig{2'000'000, 41, 1, 65536, false});
        const SimResult flips = symbol_level_e2e_ber(cfg, SimConfig{2'000'000, 41, 1, 65536, true});
        CHECK(std::abs(kernel.estimate - flips.estimate) < 3.0 * flips.ci95_half_width);
        CHECK(kernel.ci95_half_width < flips.ci95_half_width);
    }

    TEST_CASE("symbol-level results are reproducible across worker counts")
    {
        const LinkConfig cfg = make_link(moderate_regime(), Scheme::antenna_selection, 8.0, 10.0);
        const SimResult a = symbol_level_e2e_ber(cfg, SimConfig{100'000, 5, 1, 65536, false});
        const SimResult b = symbol_level_e2e_ber(cfg, SimConfig{100'000, 5, 3, 10'000, false});
        CHECK(a.estimate == b.estimate);
        CHECK(a.ci95_half_width == b.ci95_half_width);
    }
}
