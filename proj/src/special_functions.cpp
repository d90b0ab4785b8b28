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

#include "fsorf/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fsorf/quadrature.hpp"

namespace fsorf
{
namespace
{

using cwide = std::complex<wide_t>;

constexpr wide_t pi_w = 3.141592653589793238462643383279502884L;
constexpr wide_t half_log_two_pi = 0.918938533204672741780329736405617639L;

bool is_nonpositive_integer(wide_t x)
{
    return x <= 0 && x == std::floor(x);
}

// Distance of d from the nearest integer.
double integer_distance(double d)
{
    return std::abs(d - std::round(d));
}

} // namespace

//---------------------------------------------------------------------------//
// Gamma
//---------------------------------------------------------------------------//

LogGamma ln_gamma(wide_t x)
{
    if (!std::isfinite(x))
    {
        throw ParameterError("ln_gamma: non-finite argument");
    }
    if (is_nonpositive_integer(x))
    {
        std::ostringstream msg;
        msg << "ln_gamma: pole at x = " << static_cast<double>(x);
        throw PoleError(msg.str());
    }
    int sign = 1;
    // Reentrant variant: the plain lgamma writes the global signgam.
    const wide_t value = ::lgammal_r(x, &sign);
    return {value, sign};
}

std::complex<wide_t> ln_gamma_complex(std::complex<wide_t> z)
{
    if (z.imag() == 0 && is_nonpositive_integer(z.real()))
    {
        return {std::numeric_limits<wide_t>::infinity(), 0};
    }
    // Shift into Re(w) >= 16 where the Stirling series below is accurate to
    // better than 1e-22, then undo the shift with the recurrence.
    constexpr wide_t stirling_min = 16;
    cwide shift_log{0, 0};
    cwide w = z;
    cwide product{1, 0};
    int pending = 0;
    while (w.real() < stirling_min)
    {
        product *= w;
        w += 1;
        if (++pending == 8)
        {
            shift_log += std::log(product);
            product = 1;
            pending = 0;
        }
    }
    if (pending > 0)
    {
        shift_log += std::log(product);
    }

    static constexpr wide_t coeffs[] = {
        1.0L / 12,        -1.0L / 360,       1.0L / 1260,         -1.0L / 1680,
        1.0L / 1188,      -691.0L / 360360,  1.0L / 156,          -3617.0L / 122400,
        43867.0L / 244188, -174611.0L / 125400};
    const cwide inv = wide_t{1} / w;
    const cwide inv2 = inv * inv;
    cwide series{0, 0};
    cwide power = inv;
    for (wide_t c : coeffs)
    {
        series += c * power;
        power *= inv2;
    }
    const cwide result = (w - wide_t{0.5}) * std::log(w) - w + half_log_two_pi + series;
    return result - shift_log;
}

//---------------------------------------------------------------------------//
// pFq
//---------------------------------------------------------------------------//

SeriesResult gen_hypergeometric_series(std::span<const wide_t> a,
                                       std::span<const wide_t> b,
                                       wide_t z,
                                       const SeriesOptions& opts)
{
    for (wide_t bj : b)
    {
        if (!std::isfinite(bj) || is_nonpositive_integer(bj))
        {
            throw ParameterError("gen_hypergeometric: lower parameter is a non-positive integer");
        }
    }
    for (wide_t ai : a)
    {
        if (!std::isfinite(ai))
        {
            throw ParameterError("gen_hypergeometric: non-finite upper parameter");
        }
    }
    if (!std::isfinite(z))
    {
        throw ParameterError("gen_hypergeometric: non-finite argument");
    }
    if (a.size() > b.size() + 1)
    {
        throw ParameterError("gen_hypergeometric: series diverges for p > q + 1");
    }
    if (a.size() == b.size() + 1 && std::abs(z) >= 1)
    {
        throw ParameterError("gen_hypergeometric: |z| >= 1 outside the disc of convergence");
    }

    SeriesResult out;
    wide_t term = 1;
    wide_t sum = 1;
    wide_t abs_sum = 1;
    int small = 0;
    std::size_t k = 0;
    for (;; ++k)
    {
        if (k >= opts.max_terms)
        {
            throw ConvergenceError("gen_hypergeometric: term limit exceeded");
        }
        const wide_t kk = static_cast<wide_t>(k);
        wide_t ratio = z / (kk + 1);
        for (wide_t ai : a)
        {
            ratio *= ai + kk;
        }
        for (wide_t bj : b)
        {
            ratio /= bj + kk;
        }
        term *= ratio;
        if (term == 0)
        {
            // Terminating series: every later term vanishes too.
            ++k;
            break;
        }
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) <= opts.rel_tol * std::abs(sum))
        {
            if (++small >= opts.window)
            {
                ++k;
                break;
            }
        }
        else
        {
            small = 0;
        }
    }
    out.value = sum;
    out.abs_sum = abs_sum;
    out.terms = k + 1;
    return out;
}

double gen_hypergeometric(std::span<const double> a,
                          std::span<const double> b,
                          double z,
                          const SeriesOptions& opts)
{
    const std::vector<wide_t> aw(a.begin(), a.end());
    const std::vector<wide_t> bw(b.begin(), b.end());
    return static_cast<double>(gen_hypergeometric_series(aw, bw, z, opts).value);
}

//---------------------------------------------------------------------------//
// Meijer G
//---------------------------------------------------------------------------//

void MeijerGSpec::validate() const
{
    if (m < 0 || m > q() || n < 0 || n > p())
    {
        throw ParameterError("MeijerGSpec: require 0 <= m <= q and 0 <= n <= p, got " + to_string());
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(a.begin(), a.end(), finite) || !std::all_of(b.begin(), b.end(), finite))
    {
        throw ParameterError("MeijerGSpec: non-finite parameter");
    }
}

std::string MeijerGSpec::to_string() const
{
    std::ostringstream os;
    os.precision(17);
    os << "G^{" << m << "," << n << "}_{" << p() << "," << q() << "}(a=[";
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        os << (i ? "," : "") << a[i];
    }
    os << "]; b=[";
    for (std::size_t i = 0; i < b.size(); ++i)
    {
        os << (i ? "," : "") << b[i];
    }
    os << "])";
    return os.str();
}

namespace
{

struct ContourStrip
{
    wide_t left = -std::numeric_limits<wide_t>::infinity();  // rightmost left-family pole
    wide_t right = std::numeric_limits<wide_t>::infinity();  // leftmost right-family pole
};

ContourStrip pole_strip(const MeijerGSpec& spec)
{
    ContourStrip strip;
    for (int i = 0; i < spec.n; ++i)
    {
        strip.left = std::max<wide_t>(strip.left, wide_t{spec.a[i]} - 1);
    }
    for (int j = 0; j < spec.m; ++j)
    {
        strip.right = std::min<wide_t>(strip.right, spec.b[j]);
    }
    return strip;
}

double vertical_convergence_index(const MeijerGSpec& spec)
{
    return spec.m + spec.n - 0.5 * (spec.p() + spec.q());
}

// log of the Mellin-Barnes integrand at complex s, including z^s.
cwide log_integrand(const MeijerGSpec& spec, cwide s, wide_t log_z)
{
    cwide acc = s * log_z;
    for (int j = 0; j < spec.q(); ++j)
    {
        if (j < spec.m)
        {
            acc += ln_gamma_complex(wide_t{spec.b[j]} - s);
        }
        else
        {
            acc -= ln_gamma_complex(wide_t{1} - wide_t{spec.b[j]} + s);
        }
    }
    for (int i = 0; i < spec.p(); ++i)
    {
        if (i < spec.n)
        {
            acc += ln_gamma_complex(wide_t{1} - wide_t{spec.a[i]} + s);
        }
        else
        {
            acc -= ln_gamma_complex(wide_t{spec.a[i]} - s);
        }
    }
    return acc;
}

MeijerGSpec reflected(const MeijerGSpec& spec)
{
    MeijerGSpec out;
    out.m = spec.n;
    out.n = spec.m;
    out.a.reserve(spec.b.size());
    out.b.reserve(spec.a.size());
    for (double bj : spec.b)
    {
        out.a.push_back(1.0 - bj);
    }
    for (double ai : spec.a)
    {
        out.b.push_back(1.0 - ai);
    }
    return out;
}

// Minimizes the integrand scale over the admissible strip; near the minimum
// the vertical line passes through the saddle and the integral suffers the
// least cancellation.
wide_t saddle_abscissa(const MeijerGSpec& spec, double z)
{
    const ContourStrip strip = pole_strip(spec);
    const wide_t log_z = std::log(static_cast<wide_t>(z));
    auto objective = [&](wide_t c) {
        const wide_t lo = log_integrand(spec, cwide{c, 0.25L}, log_z).real();
        const wide_t hi = log_integrand(spec, cwide{c, 0.75L}, log_z).real();
        return (lo + hi) / 2;
    };

    wide_t lo = 0;
    wide_t hi = 0;
    const bool left_open = !std::isfinite(strip.left);
    const bool right_open = !std::isfinite(strip.right);
    if (!left_open && !right_open)
    {
        const wide_t margin = (strip.right - strip.left) * 1e-6L;
        lo = strip.left + margin;
        hi = strip.right - margin;
    }
    else
    {
        // Walk outwards from the finite edge with doubling steps until the
        // objective starts to rise.
        const wide_t direction = left_open ? -1 : 1;
        const wide_t edge = left_open ? strip.right : strip.left;
        wide_t step = 0.5L;
        wide_t prev = edge + direction * step;
        wide_t prev_val = objective(prev);
        wide_t before = edge;
        for (int iter = 0; iter < 60; ++iter)
        {
            step *= 2;
            const wide_t next = edge + direction * step;
            const wide_t next_val = objective(next);
            if (!(next_val < prev_val))
            {
                lo = std::min(before, next);
                hi = std::max(before, next);
                break;
            }
            before = prev;
            prev = next;
            prev_val = next_val;
            lo = std::min(before, next);
            hi = std::max(before, next);
        }
        const wide_t margin = 1e-6L;
        if (left_open)
        {
            hi = std::min(hi, strip.right - margin);
        }
        else
        {
            lo = std::max(lo, strip.left + margin);
        }
    }

    constexpr wide_t inv_phi = 0.618033988749894848204586834365638118L;
    wide_t x1 = hi - inv_phi * (hi - lo);
    wide_t x2 = lo + inv_phi * (hi - lo);
    wide_t f1 = objective(x1);
    wide_t f2 = objective(x2);
    for (int iter = 0; iter < 80 && (hi - lo) > 1e-6L * (1 + std::abs(lo)); ++iter)
    {
        if (f1 < f2)
        {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
        else
        {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    return (lo + hi) / 2;
}

void check_contour_admissible(const MeijerGSpec& spec)
{
    if (vertical_convergence_index(spec) <= 0)
    {
        throw DegenerateParameterError("Mellin-Barnes integral does not converge on a vertical line for "
                                       + spec.to_string());
    }
    const ContourStrip strip = pole_strip(spec);
    if (!(strip.left < strip.right))
    {
        throw DegenerateParameterError("no vertical line separates the pole families of "
                                       + spec.to_string());
    }
}

struct SlaterOutcome
{
    wide_t value = 0;
    wide_t abs_sum = 0;
};

// Slater residue expansion; `b` is the (possibly regularized) lower list.
SlaterOutcome slater_sum(const MeijerGSpec& spec,
                         const std::vector<wide_t>& a,
                         const std::vector<wide_t>& b,
                         wide_t z,
                         const SeriesOptions& series_opts)
{
    const int p = spec.p();
    const int q = spec.q();
    const int m = spec.m;
    const int n = spec.n;
    const wide_t log_z = std::log(z);
    const int parity = p - m - n;
    const wide_t x = (parity % 2 == 0) ? z : -z;

    std::vector<wide_t> upper(static_cast<std::size_t>(p));
    std::vector<wide_t> lower;
    lower.reserve(static_cast<std::size_t>(q));

    SlaterOutcome out;
    for (int h = 0; h < m; ++h)
    {
        const wide_t bh = b[h];
        wide_t log_coef = bh * log_z;
        int sign = 1;
        bool vanishes = false;
        auto multiply = [&](wide_t arg) {
            const LogGamma g = ln_gamma(arg);
            log_coef += g.log_abs;
            sign *= g.sign;
        };
        auto divide = [&](wide_t arg) {
            if (is_nonpositive_integer(arg))
            {
                vanishes = true; // 1/Gamma at a pole
                return;
            }
            const LogGamma g = ln_gamma(arg);
            log_coef -= g.log_abs;
            sign *= g.sign;
        };
        for (int j = 0; j < m; ++j)
        {
            if (j != h)
            {
                multiply(b[j] - bh);
            }
        }
        for (int i = 0; i < n; ++i)
        {
            multiply(1 + bh - a[i]);
        }
        for (int j = m; j < q; ++j)
        {
            divide(1 + bh - b[j]);
        }
        for (int i = n; i < p; ++i)
        {
            divide(a[i] - bh);
        }
        if (vanishes)
        {
            continue;
        }

        lower.clear();
        for (int i = 0; i < p; ++i)
        {
            upper[i] = 1 + bh - a[i];
        }
        for (int j = 0; j < q; ++j)
        {
            if (j != h)
            {
                lower.push_back(1 + bh - b[j]);
            }
        }
        const SeriesResult series = gen_hypergeometric_series(upper, lower, x, series_opts);
        const wide_t scale = std::exp(log_coef);
        out.value += sign * scale * series.value;
        out.abs_sum += scale * series.abs_sum;
    }
    return out;
}

} // namespace

double mellin_barnes_integral(const MeijerGSpec& spec, double z, wide_t abscissa, const ContourOptions& opts)
{
    const wide_t log_z = std::log(static_cast<wide_t>(z));
    auto log_f = [&](wide_t t) { return log_integrand(spec, cwide{abscissa, t}, log_z); };

    // Locate the truncation height by scanning log-magnitudes; the scan also
    // fixes the normalization that keeps the quadrature in range.
    const wide_t log_cut = std::log(opts.truncation);
    wide_t log_peak = log_f(0).real();
    wide_t t = 0;
    int below = 0;
    wide_t height = 0;
    while (true)
    {
        t += 0.25L + t / 64;
        const wide_t lm = log_f(t).real();
        log_peak = std::max(log_peak, lm);
        if (lm < log_peak + log_cut)
        {
            if (++below >= 4)
            {
                height = t;
                break;
            }
        }
        else
        {
            below = 0;
        }
        if (t > 1e5L)
        {
            throw ConvergenceError("Mellin-Barnes integrand does not decay for " + spec.to_string());
        }
    }

    auto f = [&](wide_t tt) {
        const cwide lv = log_f(tt);
        if (!std::isfinite(lv.real()))
        {
            return wide_t{0};
        }
        return std::exp(lv.real() - log_peak) * std::cos(lv.imag());
    };
    const wide_t oscillation = std::max<wide_t>(1, std::abs(log_z));
    const auto segments = static_cast<std::size_t>(
        std::clamp<wide_t>(std::ceil(height * oscillation / 2), 4, 4000));
    const auto est = quad::integrate_adaptive<wide_t>(f, 0, height, opts.rel_tol,
                                                      opts.truncation * height, opts.max_intervals,
                                                      segments);
    return static_cast<double>(std::exp(log_peak) * est.value / pi_w);
}

double meijer_g_oracle(const MeijerGSpec& spec, double z, const ContourOptions& opts)
{
    spec.validate();
    if (!(z > 0) || !std::isfinite(z))
    {
        throw ParameterError("meijer_g_oracle: z must be positive and finite");
    }
    check_contour_admissible(spec);
    const ContourStrip strip = pole_strip(spec);
    wide_t abscissa = 0;
    if (std::isfinite(strip.left) && std::isfinite(strip.right))
    {
        abscissa = (strip.left + strip.right) / 2;
    }
    else if (std::isfinite(strip.right))
    {
        abscissa = strip.right - 0.5L;
    }
    else if (std::isfinite(strip.left))
    {
        abscissa = strip.left + 0.5L;
    }
    return mellin_barnes_integral(spec, z, abscissa, opts);
}

MeijerGResult meijer_g_eval(const MeijerGSpec& spec_in, double z, const MeijerGOptions& opts)
{
    spec_in.validate();
    if (!(z > 0) || !std::isfinite(z))
    {
        throw ParameterError("meijer_g: z must be positive and finite");
    }

    MeijerGSpec spec = spec_in;
    wide_t arg = z;
    const bool reflect = spec.p() > spec.q() || (spec.p() == spec.q() && z > 1);
    if (reflect)
    {
        spec = reflected(spec_in);
        arg = wide_t{1} / arg;
    }

    auto contour = [&](MeijerGResult result) {
        check_contour_admissible(spec_in);
        result.method = MeijerGMethod::contour;
        result.reflected = false;
        result.shifts.clear();
        result.value = mellin_barnes_integral(spec_in, z, saddle_abscissa(spec_in, z));
        result.cancellation = 1;
        return result;
    };

    MeijerGResult result;
    result.reflected = reflect;
    // Series with p == q converge too slowly near the unit circle.
    if (spec.p() == spec.q() && arg > 0.9L)
    {
        return contour(result);
    }

    const int m = spec.m;
    const int n = spec.n;
    std::vector<wide_t> a(spec.a.begin(), spec.a.end());
    std::vector<wide_t> b(spec.b.begin(), spec.b.end());

    auto collides = [&](wide_t d) { return integer_distance(static_cast<double>(d)) < opts.collision_tol; };
    auto positive_integer = [&](wide_t d) { return d > 0.5L && collides(d); };

    // Coincident right-family poles: shift the later parameter once.
    auto record = [&](int j) {
        const double before = static_cast<double>(b[j]);
        b[j] += opts.regularization_shift;
        result.shifts.push_back({j, before, static_cast<double>(b[j])});
    };
    for (int j = 1; j < m; ++j)
    {
        for (int i = 0; i < j; ++i)
        {
            if (collides(b[j] - b[i]))
            {
                record(j);
                break;
            }
        }
    }
    // A lower parameter beyond m sitting a positive integer above some b_h
    // would put a pole in the residue series denominators.
    for (int j = m; j < spec.q(); ++j)
    {
        for (int h = 0; h < m; ++h)
        {
            if (positive_integer(b[j] - b[h]))
            {
                record(j);
                break;
            }
        }
    }
    for (int j = 1; j < m; ++j)
    {
        for (int i = 0; i < j; ++i)
        {
            if (collides(b[j] - b[i]))
            {
                throw DegenerateParameterError("coincident poles persist after regularization in "
                                               + spec_in.to_string());
            }
        }
    }
    for (int j = m; j < spec.q(); ++j)
    {
        for (int h = 0; h < m; ++h)
        {
            if (positive_integer(b[j] - b[h]))
            {
                throw DegenerateParameterError("residue series denominator pole persists after "
                                               "regularization in "
                                               + spec_in.to_string());
            }
        }
    }
    for (int i = 0; i < n; ++i)
    {
        for (int h = 0; h < m; ++h)
        {
            if (positive_integer(a[i] - b[h]))
            {
                throw DegenerateParameterError("left and right pole families overlap in "
                                               + spec_in.to_string());
            }
        }
    }

    SlaterOutcome slater;
    try
    {
        slater = slater_sum(spec, a, b, arg, opts.series);
    }
    catch (const ConvergenceError&)
    {
        if (opts.max_cancellation <= 0)
        {
            throw;
        }
        return contour(result);
    }

    const wide_t magnitude = std::abs(slater.value);
    const wide_t cancellation = magnitude > 0 ? slater.abs_sum / magnitude
                                              : (slater.abs_sum > 0 ? std::numeric_limits<wide_t>::infinity() : 1);
    if (opts.max_cancellation > 0 && cancellation > opts.max_cancellation)
    {
        return contour(result);
    }
    result.method = MeijerGMethod::slater;
    result.value = static_cast<double>(slater.value);
    result.cancellation = static_cast<double>(cancellation);
    return result;
}

} // namespace fsorf
