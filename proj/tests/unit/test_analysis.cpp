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

#include "risup/analysis.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace risup;

namespace
{

double gamma_pdf(double alpha, double beta, double a)
{
    if (a <= 0.0)
        return 0.0;
    return std::exp(alpha * std::log(beta) + (alpha - 1.0) * std::log(a) - beta * a - std::lgamma(alpha));
}

// Nakagami magnitude through the standard library's gamma sampler.
double std_nakagami(const NakagamiParams& p, std::mt19937_64& eng)
{
    std::gamma_distribution<double> g(p.m, p.omega / p.m);
    return std::sqrt(g(eng));
}

LinkStatistics desk_links(std::size_t elements)
{
    Topology t;
    t.num_users = 2;
    t.elements_per_surface = {elements, elements};
    const std::vector<Point2> users{{40.0, 30.0}, {-150.0, 120.0}};
    return link_statistics(t, users, FadingShapes{}, PathLossModel{});
}

} // namespace

TEST_CASE("u_term closed forms")
{
    for (double mg : {0.5, 1.0, 2.5, 7.0})
        for (double mf : {0.5, 2.5})
        {
            const NakagamiParams g{mg, 3.0e-9}, f{mf, 2.0e-4};
            CHECK(u_term(g, f, 2) == doctest::Approx(g.omega * f.omega).epsilon(1e-13));
        }
    // Gamma(1.5)^2 = pi / 4
    CHECK(u_term({1.0, 1.0}, {1.0, 1.0}, 1) == doctest::Approx(0.7853981633974483).epsilon(1e-14));
    CHECK_THROWS_AS(u_term({1.0, 1.0}, {1.0, 1.0}, 3), std::invalid_argument);
}

TEST_CASE("u_term first order against Monte Carlo")
{
    const NakagamiParams g{2.5, 1.7}, f{1.3, 0.4};
    std::mt19937_64 eng(401);
    std::vector<double> xs(1000000);
    for (auto& x : xs)
        x = std_nakagami(g, eng) * std_nakagami(f, eng);
    const auto s = oracle::sample_stats(xs);
    CHECK(std::abs(s.mean - u_term(g, f, 1)) < 4.0 * s.std_error);
}

TEST_CASE("moments without surfaces")
{
    const auto stats = LinkStatistics::uniform(2, {}, {2.5, 2.0}, {1.0, 1.0}, {1.0, 1.0});
    const auto m = moments_ak(stats, 1);
    CHECK(m.mu1 == doctest::Approx(1.345670678410752).epsilon(1e-13));
    CHECK(m.mu2 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(moments_ak(stats, 2), std::out_of_range);
}

TEST_CASE("moments with a single element expand by hand")
{
    const NakagamiParams d{2.5, 2.0}, g{1.5, 0.7}, f{3.0, 1.2};
    const auto stats = LinkStatistics::uniform(1, {1}, d, g, f);
    // E|d| by quadrature of x * pdf(x) with pdf from the Gamma law of x^2
    auto nak_pdf = [&](double x) { return 2.0 * x * gamma_pdf(d.m, d.m / d.omega, x * x); };
    const double ed = oracle::simpson([&](double x) { return x * nak_pdf(x); }, 0.0, 12.0, 1e-13);
    const double u1 = std::tgamma(g.m + 0.5) / std::tgamma(g.m) * std::tgamma(f.m + 0.5) / std::tgamma(f.m) /
                      std::sqrt(g.m / g.omega * f.m / f.omega);
    const double u2 = g.omega * f.omega;
    const auto m = moments_ak(stats, 0);
    CHECK(m.mu1 == doctest::Approx(ed + u1).epsilon(1e-10));
    CHECK(m.mu2 == doctest::Approx(d.omega + 2.0 * ed * u1 + u2).epsilon(1e-10));
}

TEST_CASE("moments at desk geometry against Monte Carlo")
{
    const auto stats = desk_links(8);
    std::mt19937_64 eng(402);
    for (std::size_t k = 0; k < 2; ++k)
    {
        const auto m = moments_ak(stats, k);
        std::vector<double> a(1000000), a2(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            double v = std_nakagami(stats.direct[k], eng);
            for (std::size_t s = 0; s < 2; ++s)
                for (std::size_t n = 0; n < 8; ++n)
                    v += std_nakagami(stats.ris_bs[s], eng) * std_nakagami(stats.user_ris_at(s, k), eng);
            a[i] = v;
            a2[i] = v * v;
        }
        const auto s1 = oracle::sample_stats(a), s2 = oracle::sample_stats(a2);
        CAPTURE(k);
        CHECK(std::abs(s1.mean - m.mu1) < 4.0 * s1.std_error);
        CHECK(std::abs(s2.mean - m.mu2) < 4.0 * s2.std_error);
    }
}

TEST_CASE("gamma fit round trip")
{
    for (const auto& mom : {Moments{1.0, 1.5}, Moments{3.2e-6, 1.1e-11}, Moments{20.0, 401.0}})
    {
        const auto fit = GammaFit::from_moments(mom);
        const double var = mom.mu2 - mom.mu1 * mom.mu1;
        CHECK(std::abs(fit.mean() - mom.mu1) <= 1e-12 * mom.mu1);
        CHECK(std::abs(fit.variance() - var) <= 1e-12 * var);
        CHECK(fit.alpha == doctest::Approx(mom.mu1 * mom.mu1 / var).epsilon(1e-14));
    }
    CHECK_THROWS_AS(GammaFit::from_moments({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GammaFit::from_moments({1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("cdf_ak basics")
{
    const auto fit = GammaFit::from_shape_rate(2.5, 1.3);
    CHECK(cdf_ak(fit, 0.0) == 0.0);
    CHECK(cdf_ak(fit, 1e6) == doctest::Approx(1.0));
    CHECK_THROWS_AS(cdf_ak(fit, -0.1), std::invalid_argument);
    const auto expo = GammaFit::from_shape_rate(1.0, 0.8);
    CHECK(cdf_ak(expo, 1.0 / 0.8) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));

    const double quad = oracle::simpson([](double a) { return gamma_pdf(2.5, 1.3, a); }, 0.0, 2.0, 1e-13);
    CHECK(std::abs(cdf_ak(fit, 2.0) - quad) < 1e-8);

    double prev = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const double c = cdf_ak(fit, 0.08 * i);
        CHECK(c >= prev);
        CHECK(c <= 1.0);
        prev = c;
    }
}

TEST_CASE("single-user and opportunistic outage")
{
    const auto fit = GammaFit::from_shape_rate(6.0, 2.0e5);
    const double snr = 1e11;
    CHECK(outage_su(fit, 1.0, snr) == cdf_ak(fit, std::sqrt(1.0 / snr)));
    CHECK(outage_su(fit, 1.0, 1e30) < 1e-12);
    CHECK(outage_su(fit, 1e-9, snr) < 1e-12);
    CHECK_THROWS_AS(outage_su(fit, 0.0, snr), std::invalid_argument);
    CHECK_THROWS_AS(outage_su(fit, 1.0, 0.0), std::invalid_argument);

    const std::vector<GammaFit> one{fit};
    CHECK(outage_or(one, 1.0, snr) == outage_su(fit, 1.0, snr));
    const std::vector<GammaFit> four(4, fit);
    CHECK(outage_or(four, 2.0, snr) == doctest::Approx(std::pow(outage_su(fit, 2.0, snr), 4)).epsilon(1e-13));
    CHECK_THROWS(outage_or(std::vector<GammaFit>{}, 1.0, snr));

    double prev = 1.0;
    for (int i = 0; i < 100; ++i)
    {
        const double p = outage_or(four, 1.0, snr * std::pow(10.0, 0.05 * i));
        CHECK(p <= prev);
        CHECK(p >= 0.0);
        prev = p;
    }
}

TEST_CASE("squared-gamma density")
{
    const auto fit = GammaFit::from_shape_rate(2.5, 1.3);
    CHECK_THROWS_AS(gen_gamma_pdf(fit, 0.0), std::invalid_argument);
    // substitute x = u^2 to remove the 1/sqrt(x) behaviour near zero
    const double mass =
        oracle::simpson([&](double u) { return u <= 0.0 ? 0.0 : 2.0 * u * gen_gamma_pdf(fit, u * u); }, 0.0, 40.0,
                        1e-12);
    CHECK(std::abs(mass - 1.0) < 1e-6);

    for (int i = 1; i <= 20; ++i)
    {
        const double x = 0.4 * i;
        const double h = 1e-4;
        const double fd = (cdf_ak(fit, std::sqrt(x + h)) - cdf_ak(fit, std::sqrt(x - h))) / (2.0 * h);
        CHECK(std::abs(gen_gamma_pdf(fit, x) - fd) < 1e-5);
    }
}

TEST_CASE("squared-gamma density fits squared gamma samples")
{
    const auto fit = GammaFit::from_shape_rate(2.5, 1.3);
    std::mt19937_64 eng(403);
    std::gamma_distribution<double> gd(2.5, 1.0 / 1.3);
    const int n = 100000;
    const int bins = 20;
    const double top = 25.0;
    const double width = top / (bins - 1);
    std::vector<double> counts(bins, 0.0);
    for (int i = 0; i < n; ++i)
    {
        const double a = gd(eng);
        const double x = a * a;
        counts[x >= top ? bins - 1 : static_cast<int>(x / width)] += 1.0;
    }
    double chi2 = 0.0, used = 0.0;
    for (int b = 0; b < bins - 1; ++b)
    {
        const double lo = b * width, hi = lo + width;
        // integrate in u = sqrt(x)
        const double p = oracle::simpson([&](double u) { return u <= 0.0 ? 0.0 : 2.0 * u * gen_gamma_pdf(fit, u * u); },
                                         std::sqrt(lo), std::sqrt(hi), 1e-12);
        used += p;
        const double expected = n * p;
        chi2 += (counts[b] - expected) * (counts[b] - expected) / expected;
    }
    const double expected_tail = n * (1.0 - used);
    REQUIRE(expected_tail > 5.0);
    chi2 += (counts[bins - 1] - expected_tail) * (counts[bins - 1] - expected_tail) / expected_tail;
    // 0.99 quantile of chi-square with 19 degrees of freedom
    CHECK(chi2 < 36.19086912927004);
}

TEST_CASE("product oracle: limits and single factor")
{
    const std::vector<GammaFit> one{GammaFit::from_shape_rate(3.0, 2.0)};
    RandomStream rng(404);
    CHECK(cdf_product_oracle(one, 1e12, 10000, rng).probability == 1.0);
    CHECK(cdf_product_oracle(one, 0.0, 10000, rng).probability == 0.0);
    CHECK_THROWS_AS(cdf_product_oracle(one, 1.0, 9999, rng), std::invalid_argument);

    for (double x : {0.2, 1.0, 2.25, 5.0})
    {
        const auto est = cdf_product_oracle(one, x, 200000, rng);
        const double exact = cdf_ak(one[0], std::sqrt(x));
        CAPTURE(x);
        CHECK(std::abs(est.probability - exact) < 4.0 * est.std_error);
    }
}

TEST_CASE("product oracle: two exponential factors against nested quadrature")
{
    const double b1 = 1.0, b2 = 2.5;
    const std::vector<GammaFit> fits{GammaFit::from_shape_rate(1.0, b1), GammaFit::from_shape_rate(1.0, b2)};
    RandomStream rng(405);
    for (double x : {0.05, 0.3, 1.0, 4.0})
    {
        // P(a1 a2 <= sqrt(x)) = int pdf1(a) * [int_0^{sqrt(x)/a} pdf2(b) db] da
        const double t = std::sqrt(x);
        auto inner = [&](double a) {
            return oracle::simpson([&](double b) { return gamma_pdf(1.0, b2, b); }, 0.0, std::min(t / a, 60.0 / b2), 1e-11);
        };
        const double truth =
            oracle::simpson([&](double a) { return a <= 0.0 ? 1.0 * b1 : gamma_pdf(1.0, b1, a) * inner(a); }, 0.0,
                            60.0, 1e-9);
        const auto est = cdf_product_oracle(fits, x, 200000, rng);
        CAPTURE(x);
        CHECK(std::abs(est.probability - truth) < 4.0 * est.std_error);
    }
}

TEST_CASE("IR bound: single user and monotonicity")
{
    const auto fit = GammaFit::from_shape_rate(4.0, 3.0e5);
    const std::vector<GammaFit> one{fit};
    RandomStream rng(406);
    const auto b = outage_ir_upper_bound(one, 1.0, 1e11, 200000, rng);
    CHECK(std::abs(b.probability - outage_su(fit, 1.0, 1e11)) < 4.0 * b.std_error);

    const std::vector<GammaFit> fits{fit, GammaFit::from_shape_rate(2.0, 1.0e5), GammaFit::from_shape_rate(9.0, 5.0e5)};
    double prev = 1.0;
    for (int i = 0; i < 30; ++i)
    {
        RandomStream common(407);
        const double p = outage_ir_upper_bound(fits, 1.0, 1e10 * std::pow(10.0, 0.1 * i), 10000, common).probability;
        CHECK(p <= prev);
        CHECK(p >= 0.0);
        prev = p;
    }
}
