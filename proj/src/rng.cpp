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

#include "risup/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risup
{

namespace
{

constexpr std::uint64_t rotl(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

} // namespace

std::uint64_t mix64(std::uint64_t x)
{
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t key)
{
    std::uint64_t sm = key;
    for (auto& word : state_)
    {
        sm += golden_gamma;
        word = mix64(sm);
    }
}

RandomStream RandomStream::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
{
    // Sponge-style absorption: each component is folded into the running
    // key through a full mix, so (a, b) and (b, a) give distinct keys.
    std::uint64_t key = mix64(seed + golden_gamma);
    std::uint64_t position = 1;
    for (auto component : path)
    {
        key = mix64(key ^ mix64(component + position * golden_gamma));
        ++position;
    }
    return RandomStream(key);
}

std::uint64_t RandomStream::next_u64()
{
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open()
{
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do
    {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double RandomStream::phase()
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double p = uniform() * two_pi;
    // rounding of (1 - 2^-53) * 2pi can land on 2pi itself
    return p < two_pi ? p : 0.0;
}

double RandomStream::gamma(double shape, double scale)
{
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("gamma: shape and scale must be positive");

    if (shape < 1.0)
    {
        const double boosted = gamma(shape + 1.0, 1.0);
        return boosted * std::pow(uniform_open(), 1.0 / shape) * scale;
    }

    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;)
    {
        double x, v;
        do
        {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v * scale;
    }
}

} // namespace risup
