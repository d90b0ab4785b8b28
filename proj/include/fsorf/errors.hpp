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

#include <stdexcept>
#include <string>

namespace fsorf
{

// Invalid argument values (non-positive shapes, z <= 0, malformed sequences).
class ParameterError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Gamma function evaluated at a non-positive integer.
class PoleError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Meijer-G parameters that cannot be evaluated: coincident poles that survive
// regularization, or overlapping left/right pole families.
class DegenerateParameterError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// A series or quadrature hit its iteration cap before meeting tolerance.
class ConvergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A closed-form result landed outside its admissible range.
class RangeError : public std::range_error
{
  public:
    using std::range_error::range_error;
};

} // namespace fsorf
