// risup: link-level simulation of multi-RIS-aided multi-user uplinks
// Copyright (C) 2026 The risup authors
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

#ifndef RISUP_RNG_HPP
#define RISUP_RNG_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace risup
{

/// Stream identifiers used as the last component of a derivation path.
/// Each consumer of randomness within a trial owns one, so adding or
/// removing a scheme never shifts the draws seen by another.
enum class StreamTag : std::uint64_t
{
    channel = 0,
    positions = 1,
    omur_rp_phases = 2,
    oppbf_phases = 3,
    jr_init = 4,
    oracle = 5,
};

/*!
 * Counter-keyed random stream.
 *
 * A stream is identified by a 64-bit key obtained by hashing a derivation
 * path such as (seed, power point, trial, tag). The key seeds a
 * xoshiro256** generator through splitmix64, so any two paths give
 * statistically independent streams and the draws of a trial depend only
 * on its path, never on execution order.
 *
 * All distribution transforms are implemented here rather than through
 * <random> distributions, whose algorithms are implementation-defined, so
 * results are bit-identical across standard libraries.
 */
class RandomStream
{
  public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t key);

    /// Stream for a derivation path rooted at `seed`.
    static RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform on (0, 1).
    double uniform_open();

    /// Standard normal (Marsaglia polar method; the spare value is cached).
    double normal();

    /// Uniform phase on [0, 2*pi).
    double phase();

    /// Gamma(shape, scale) by Marsaglia-Tsang squeeze/rejection; shapes
    /// below one use the u^(1/shape) boost. Requires shape > 0, scale > 0.
    double gamma(double shape, double scale);

  private:
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// splitmix64 finalizer; bijective 64-bit mixing.
std::uint64_t mix64(std::uint64_t x);

} // namespace risup

#endif
