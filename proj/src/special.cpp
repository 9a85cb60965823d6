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

#include "risup/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace risup
{

namespace
{

constexpr int max_iterations = 100000;
constexpr double epsilon = 1e-16;

// log of the common prefactor x^a e^-x / Gamma(a)
double log_prefactor(double a, double x)
{
    return a * std::log(x) - x - std::lgamma(a);
}

double series_p(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    double denom = a;
    for (int n = 0; n < max_iterations; ++n)
    {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if (std::abs(term) < std::abs(sum) * epsilon)
            break;
    }
    return sum * std::exp(log_prefactor(a, x));
}

double continued_fraction_q(double a, double x)
{
    constexpr double tiny = std::numeric_limits<double>::min() / epsilon;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iterations; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < epsilon)
            break;
    }
    return std::exp(log_prefactor(a, x)) * h;
}

void check_arguments(double a, double x)
{
    if (!(a > 0.0))
        throw std::invalid_argument("incomplete gamma: shape must be positive");
    if (!(x >= 0.0))
        throw std::invalid_argument("incomplete gamma: argument must be nonnegative");
}

} // namespace

double regularized_gamma_p(double a, double x)
{
    check_arguments(a, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return series_p(a, x);
    return 1.0 - continued_fraction_q(a, x);
}

double regularized_gamma_q(double a, double x)
{
    check_arguments(a, x);
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return 1.0 - series_p(a, x);
    return continued_fraction_q(a, x);
}

double gamma_ratio(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("gamma_ratio: arguments must be positive");
    if (a < 150.0 && b < 150.0)
        return std::tgamma(a) / std::tgamma(b);
    return std::exp(std::lgamma(a) - std::lgamma(b));
}

} // namespace risup
