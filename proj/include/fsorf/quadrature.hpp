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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <queue>
#include <vector>

#include "fsorf/errors.hpp"

namespace fsorf::quad
{

template<class Real>
struct Estimate
{
    Real value = 0;
    Real error = 0;
    std::size_t evaluations = 0;
};

namespace detail
{
// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr long double kronrod_nodes[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr long double kronrod_weights[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr long double gauss_weights[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template<class Real>
struct Segment
{
    Real lo, hi, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template<class Real, class F>
Segment<Real> gauss_kronrod_15(F& f, Real lo, Real hi)
{
    const Real center = (lo + hi) / 2;
    const Real half = (hi - lo) / 2;
    const Real fc = f(center);
    Real kronrod = fc * static_cast<Real>(kronrod_weights[7]);
    Real gauss = fc * static_cast<Real>(gauss_weights[3]);
    for (int j = 0; j < 7; ++j)
    {
        const Real dx = half * static_cast<Real>(kronrod_nodes[j]);
        const Real pair = f(center - dx) + f(center + dx);
        kronrod += static_cast<Real>(kronrod_weights[j]) * pair;
        if (j % 2 == 1)
        {
            gauss += static_cast<Real>(gauss_weights[j / 2]) * pair;
        }
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}
} // namespace detail

/*!
 * Globally adaptive Gauss-Kronrod (G7/K15) quadrature on [lo, hi].
 *
 * The interval is first split into `initial_segments` pieces; the segment with
 * the largest error estimate is bisected until the summed error drops below
 * max(abs_tol, rel_tol * |value|).
 */
template<class Real, class F>
Estimate<Real> integrate_adaptive(F&& f,
                                  Real lo,
                                  Real hi,
                                  Real rel_tol,
                                  Real abs_tol = 0,
                                  std::size_t max_segments = 10000,
                                  std::size_t initial_segments = 1)
{
    std::priority_queue<detail::Segment<Real>> queue;
    Real value = 0;
    Real error = 0;
    const Real width = (hi - lo) / static_cast<Real>(initial_segments);
    for (std::size_t i = 0; i < initial_segments; ++i)
    {
        const Real a = lo + width * static_cast<Real>(i);
        const Real b = (i + 1 == initial_segments) ? hi : a + width;
        auto seg = detail::gauss_kronrod_15(f, a, b);
        value += seg.value;
        error += seg.error;
        queue.push(seg);
    }
    std::size_t evaluations = 15 * initial_segments;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)))
    {
        if (queue.size() >= max_segments)
        {
            throw ConvergenceError("adaptive quadrature: segment limit reached");
        }
        const auto worst = queue.top();
        queue.pop();
        const Real mid = (worst.lo + worst.hi) / 2;
        const auto left = detail::gauss_kronrod_15(f, worst.lo, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.hi);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    value = 0;
    error = 0;
    while (!queue.empty())
    {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {value, error, evaluations};
}

/*!
 * Double-exponential (exp-sinh) quadrature on [0, inf).
 *
 * Substitutes x = exp(pi/2 sinh t) and applies the trapezoidal rule in t,
 * halving the step until two successive levels agree to `rel_tol`. Handles
 * integrable algebraic singularities at 0 and integrands that decay at least
 * exponentially.
 */
template<class F>
Estimate<double> integrate_exp_sinh(F&& f, double rel_tol, int max_levels = 12)
{
    constexpr double half_pi = std::numbers::pi / 2;
    constexpr double t_max = 4.5;
    std::size_t evaluations = 0;

    auto node = [&](double t) {
        const double u = half_pi * std::sinh(t);
        const double x = std::exp(u);
        if (!std::isfinite(x) || x == 0.0)
        {
            return 0.0;
        }
        ++evaluations;
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * x * half_pi * std::cosh(t);
    };

    double h = 1.0;
    double sum = node(0.0);
    for (double t = h; t <= t_max; t += h)
    {
        sum += node(t) + node(-t);
    }
    double previous = sum * h;
    for (int level = 1; level <= max_levels; ++level)
    {
        h /= 2;
        // Odd multiples of the new step are the only new nodes.
        for (double t = h; t <= t_max; t += 2 * h)
        {
            sum += node(t) + node(-t);
        }
        const double current = sum * h;
        const double diff = std::abs(current - previous);
        if (level >= 3 && diff <= rel_tol * std::abs(current))
        {
            return {current, diff, evaluations};
        }
        previous = current;
    }
    throw ConvergenceError("exp-sinh quadrature: level limit reached");
}

} // namespace fsorf::quad
