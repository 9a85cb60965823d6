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

// Test-only reference routines. Nothing here calls into the library's
// numerical code paths, so these stay independent of what they check.

#ifndef RISUP_TESTS_ORACLES_HPP
#define RISUP_TESTS_ORACLES_HPP

#include "risup/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle
{

/// Adaptive Simpson quadrature on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 50)
{
    auto rule = [](double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); };
    std::function<double(double, double, double, double, double, double, double, int)> recurse =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int left) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            const double flm = f(lm), frm = f(rm);
            const double left_area = rule(flo, flm, fmid, mid - lo);
            const double right_area = rule(fmid, frm, fhi, hi - mid);
            const double delta = left_area + right_area - whole;
            if (left <= 0 || std::abs(delta) <= 15.0 * eps)
                return left_area + right_area + delta / 15.0;
            return recurse(lo, mid, flo, flm, fmid, left_area, eps / 2.0, left - 1) +
                   recurse(mid, hi, fmid, frm, fhi, right_area, eps / 2.0, left - 1);
        };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return recurse(a, b, fa, fm, fb, rule(fa, fm, fb, b - a), tol, depth);
}

/// Kolmogorov-Smirnov statistic of `samples` against a CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double F = cdf(samples[i]);
        worst = std::max({worst, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
    }
    return worst;
}

/// Asymptotic Kolmogorov critical value at significance 0.01.
inline double ks_critical_001(std::size_t n)
{
    return 1.6276236115189502 / std::sqrt(static_cast<double>(n));
}

/// Random channel with complex Gaussian coefficients, drawn with a
/// standard-library engine rather than the library's streams.
inline risup::ChannelRealization random_channel(std::size_t elements, std::size_t users, std::mt19937_64& engine)
{
    std::normal_distribution<double> n01;
    risup::ChannelRealization real(elements, users);
    for (auto& v : real.f)
        v = {n01(engine), n01(engine)};
    for (auto& v : real.g)
        v = {n01(engine), n01(engine)};
    for (auto& v : real.d)
        v = {n01(engine), n01(engine)};
    return real;
}

/// Received amplitude of one user as the double sum over surfaces and
/// their elements, written directly from the signal model.
inline std::complex<double> double_sum_channel(const risup::ChannelRealization& real,
                                               const std::vector<std::size_t>& elements_per_surface,
                                               const std::vector<double>& theta,
                                               std::size_t user)
{
    std::complex<double> acc{0.0, 0.0};
    std::size_t m = 0;
    for (std::size_t s = 0; s < elements_per_surface.size(); ++s)
        for (std::size_t n = 0; n < elements_per_surface[s]; ++n, ++m)
            acc += real.f[m] * std::exp(std::complex<double>(0.0, theta[m])) * real.g[user * real.num_elements + m];
    return acc + real.d[user];
}

/// (sum_m |f_m||g_mk| + |d_k|)^2 straight from magnitudes.
inline double coherent_gain_closed_form(const risup::ChannelRealization& real, std::size_t user)
{
    double amplitude = std::abs(real.d[user]);
    for (std::size_t m = 0; m < real.num_elements; ++m)
        amplitude += std::abs(real.f[m]) * std::abs(real.g[user * real.num_elements + m]);
    return amplitude * amplitude;
}

struct SampleStats
{
    double mean = 0.0;
    double std_error = 0.0;
};

inline SampleStats sample_stats(const std::vector<double>& xs)
{
    double sum = 0.0, sum2 = 0.0;
    for (double x : xs)
    {
        sum += x;
        sum2 += x * x;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = sum / n;
    const double var = (sum2 - n * mean * mean) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

} // namespace oracle

#endif
