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

#include <cmath>
#include <cstdint>
#include <random>

namespace fsorf
{

/*!
 * A reproducible random stream identified by (seed, stream index).
 *
 * The engine is seeded through std::seed_seq from all four 32-bit halves of
 * the pair, so distinct stream indices under one seed yield unrelated
 * sequences. Identical pairs reproduce identical sequences.
 */
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_{seed}, stream_{stream}, engine_{make_engine(seed, stream)}
    {
    }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t stream() const { return stream_; }

    // Uniform on the open interval (0, 1).
    double uniform()
    {
        double u = 0;
        do
        {
            u = std::generate_canonical<double, 53>(engine_);
        } while (u <= 0.0);
        return u;
    }

    double normal() { return normal_(engine_); }

    // Exponential with unit mean.
    double exponential() { return -std::log(uniform()); }

    std::mt19937_64& engine() { return engine_; }

  private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64{seq};
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace fsorf
