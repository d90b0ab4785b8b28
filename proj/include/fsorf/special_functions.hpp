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
#include <span>
#include <string>
#include <vector>

#include "fsorf/errors.hpp"

namespace fsorf
{

// Widest native floating type; residue series and coefficients are
// accumulated in it.
using wide_t = long double;

//---------------------------------------------------------------------------//
// Gamma function
//---------------------------------------------------------------------------//

struct LogGamma
{
    wide_t log_abs = 0; // log|Gamma(x)|
    int sign = 1;       // sign of Gamma(x)
};

// log|Gamma(x)| and sign. Throws PoleError for x in {0, -1, -2, ...} and
// ParameterError for non-finite x.
LogGamma ln_gamma(wide_t x);

// Principal-branch-free log Gamma for complex arguments; only exp() of the
// result is meaningful (imaginary part is defined modulo 2*pi). Used by the
// Mellin-Barnes quadrature. Exact poles return +inf in the real part.
std::complex<wide_t> ln_gamma_complex(std::complex<wide_t> z);

//---------------------------------------------------------------------------//
// Generalized hypergeometric series pFq
//---------------------------------------------------------------------------//

struct SeriesOptions
{
    // A term counts as "small" when |term| <= rel_tol * |partial sum|.
    wide_t rel_tol = 1e-16L;
    // Number of consecutive small terms required to stop.
    int window = 3;
    std::size_t max_terms = 1'000'000;
};

struct SeriesResult
{
    wide_t value = 0;
    wide_t abs_sum = 0; // sum of |terms|; abs_sum / |value| is the cancellation factor
    std::size_t terms = 0;
};

// Sum_k [prod (a_i)_k / prod (b_j)_k] z^k / k!.
//
// Entire when a.size() <= b.size(); for a.size() == b.size() + 1 the series is
// only summed for |z| < 1. Throws ParameterError when some b_j is a
// non-positive integer and ConvergenceError when max_terms is exceeded.
SeriesResult gen_hypergeometric_series(std::span<const wide_t> a,
                                       std::span<const wide_t> b,
                                       wide_t z,
                                       const SeriesOptions& opts = {});

double gen_hypergeometric(std::span<const double> a,
                          std::span<const double> b,
                          double z,
                          const SeriesOptions& opts = {});

//---------------------------------------------------------------------------//
// Meijer G-function
//---------------------------------------------------------------------------//

/*!
 * Parameters of G^{m,n}_{p,q}(z | a; b).
 *
 * p and q are the lengths of a and b. The first n entries of a and the first
 * m entries of b contribute Gamma factors to the numerator of the
 * Mellin-Barnes integrand
 *
 *   prod_{j<=m} Gamma(b_j - s) prod_{i<=n} Gamma(1 - a_i + s)
 *   ---------------------------------------------------------- z^s
 *   prod_{j>m} Gamma(1 - b_j + s) prod_{i>n} Gamma(a_i - s)
 */
struct MeijerGSpec
{
    int m = 0;
    int n = 0;
    std::vector<double> a;
    std::vector<double> b;

    [[nodiscard]] int p() const { return static_cast<int>(a.size()); }
    [[nodiscard]] int q() const { return static_cast<int>(b.size()); }

    // Throws ParameterError unless 0 <= m <= q, 0 <= n <= p and every
    // parameter is finite.
    void validate() const;
    [[nodiscard]] std::string to_string() const;
};

enum class MeijerGMethod
{
    slater,  // residue (Slater) expansion
    contour, // Mellin-Barnes quadrature on a saddle-placed vertical contour
};

struct ParameterShift
{
    int index = 0;       // zero-based index into the evaluated lower list
    double original = 0; // value before shifting
    double shifted = 0;
};

struct MeijerGResult
{
    double value = 0;
    MeijerGMethod method = MeijerGMethod::slater;
    // True when the series ran on G^{n,m}_{q,p}(1/z | 1-b; 1-a).
    bool reflected = false;
    // Non-empty when coincident poles forced a parameter perturbation.
    std::vector<ParameterShift> shifts;
    // Sum of absolute residue-series terms over |value| (slater only).
    double cancellation = 1;

    [[nodiscard]] bool regularized() const { return !shifts.empty(); }
};

struct MeijerGOptions
{
    SeriesOptions series;
    // Parameters closer than this to an integer difference are treated as
    // coincident and shifted by `regularization_shift`.
    double collision_tol = 1e-8;
    double regularization_shift = 1e-7;
    // Slater results whose cancellation factor exceeds this are recomputed on
    // a saddle-point contour. Zero disables the fallback.
    double max_cancellation = 1e6;
};

// Evaluate G^{m,n}_{p,q}(z) for z > 0 with metadata.
//
// Uses the Slater residue expansion. When p == q and the expansion does not
// converge at z, the reflection G(z | a; b) = G^{n,m}_{q,p}(1/z | 1-b; 1-a) is
// applied first. Throws ParameterError for z <= 0 and DegenerateParameterError
// when poles cannot be separated or regularized.
MeijerGResult meijer_g_eval(const MeijerGSpec& spec, double z, const MeijerGOptions& opts = {});

inline double meijer_g(const MeijerGSpec& spec, double z, const MeijerGOptions& opts = {})
{
    return meijer_g_eval(spec, z, opts).value;
}

struct ContourOptions
{
    wide_t rel_tol = 1e-13L;
    // Integrand magnitudes below this fraction of the peak are truncated.
    wide_t truncation = 1e-18L;
    std::size_t max_intervals = 20000;
};

// Independent evaluation by quadrature of the Mellin-Barnes integral along the
// vertical line midway between the two pole families. Throws
// DegenerateParameterError when no separating line exists or the integral does
// not converge on a vertical line, ConvergenceError when quadrature fails.
double meijer_g_oracle(const MeijerGSpec& spec, double z, const ContourOptions& opts = {});

// Mellin-Barnes integral on the vertical line Re(s) = abscissa. The abscissa
// must separate the pole families; callers are responsible for that.
double mellin_barnes_integral(const MeijerGSpec& spec,
                              double z,
                              wide_t abscissa,
                              const ContourOptions& opts = {});

} // namespace fsorf
