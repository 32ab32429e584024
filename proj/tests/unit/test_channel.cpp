// SPDX-License-Identifier: Apache-2.0
//
// embms-linksim: link-level simulator for LTE point-to-multipoint transmission
// Copyright (C) 2026 The embms-linksim authors
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

#include "doctest.h"
#include "test_util.hpp"

#include "embms/channel.hpp"
#include "embms/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace embms;
using namespace embms::channel;

namespace
{
    std::vector<cd> qpsk_stream(size_t n, Rng &rng)
    {
        const double a = 1.0 / std::sqrt(2.0);
        std::vector<cd> v(n);
        for (auto &x : v)
            x = cd(rng() & 1u ? a : -a, rng() & 1u ? a : -a);
        return v;
    }
}

TEST_SUITE("channel")
{
    TEST_CASE("noise variance")
    {
        CHECK(noise_variance(0.0) == doctest::Approx(1.0));
        CHECK(noise_variance(10.0) == doctest::Approx(0.1));
        CHECK(noise_variance(-10.0) == doctest::Approx(10.0));
    }

    TEST_CASE("name parsing")
    {
        CHECK(parse_channel("awgn") == ChannelKind::awgn);
        CHECK(parse_channel("rayleigh") == ChannelKind::rayleigh);
        CHECK(parse_fading("per-re") == Fading::per_re);
        CHECK(parse_fading("per-subframe") == Fading::per_subframe);
        CHECK(to_string(Fading::per_subframe) == "per-subframe");
        CHECK_THROWS_AS(parse_channel("rician"), ConfigError);
        CHECK_THROWS_AS(parse_fading("slow"), ConfigError);
    }

    TEST_CASE("noise is negligible at very high CNR")
    {
        Rng rng(97);
        const auto x = qpsk_stream(1000, rng);
        const auto y = apply_awgn(x, 200.0, rng);
        for (size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(y[i] - x[i]) < 1e-8);
    }

    TEST_CASE("measured SNR matches the requested CNR")
    {
        Rng rng(101);
        const auto x = qpsk_stream(1000000, rng);
        for (double cnr : {-5.0, 0.0, 12.0, 30.0})
        {
            const auto y = apply_awgn(x, cnr, rng);
            double ps = 0.0, pn = 0.0;
            for (size_t i = 0; i < x.size(); ++i)
            {
                ps += std::norm(x[i]);
                pn += std::norm(y[i] - x[i]);
            }
            CHECK(std::abs(10.0 * std::log10(ps / pn) - cnr) < 0.1);
        }
    }

    TEST_CASE("Rayleigh coefficients are unit power, uncorrelated and Rayleigh distributed")
    {
        Rng rng(103);
        const int n = 250000;
        const auto h = draw_rayleigh(2, 2, n, rng);
        double p = 0.0;
        cd corr_t(0.0), corr_re(0.0), mean(0.0);
        for (int re = 0; re < n; ++re)
        {
            p += std::norm(h.at(re, 0, 0));
            mean += h.at(re, 1, 0);
            corr_t += h.at(re, 0, 0) * std::conj(h.at(re, 0, 1));
            if (re > 0)
                corr_re += h.at(re, 1, 1) * std::conj(h.at(re - 1, 1, 1));
        }
        CHECK(std::abs(p / n - 1.0) < 0.01);
        CHECK(std::abs(mean / double(n)) < 0.01);
        CHECK(std::abs(corr_t / double(n)) < 0.01);
        CHECK(std::abs(corr_re / double(n)) < 0.01);

        // Kolmogorov-Smirnov against F(r) = 1 - exp(-r^2) at the 1% level.
        std::vector<double> r;
        for (int re = 0; re < n; ++re)
            r.push_back(std::abs(h.at(re, 1, 0)));
        std::sort(r.begin(), r.end());
        double d = 0.0;
        for (size_t i = 0; i < r.size(); ++i)
        {
            const double f = 1.0 - std::exp(-r[i] * r[i]);
            d = std::max({d, double(i + 1) / double(r.size()) - f, f - double(i) / double(r.size())});
        }
        CHECK(d < 1.63 / std::sqrt(double(r.size())));
    }

    TEST_CASE("per-subframe fading holds one matrix")
    {
        Rng rng(107);
        const auto h = draw_rayleigh(2, 4, 100, rng, Fading::per_subframe);
        for (int re = 1; re < 100; ++re)
            CHECK(std::equal(h.matrix(re).begin(), h.matrix(re).end(), h.matrix(0).begin()));
        const auto f = draw_rayleigh(2, 4, 100, rng);
        CHECK_FALSE(std::equal(f.matrix(1).begin(), f.matrix(1).end(), f.matrix(0).begin()));
    }

    TEST_CASE("antenna configuration validation")
    {
        Rng rng(109);
        CHECK_THROWS_AS(draw_rayleigh(3, 4, 10, rng), ConfigError);
        CHECK_THROWS_AS(draw_rayleigh(2, 1, 10, rng), ConfigError);
        CHECK_NOTHROW(draw_rayleigh(4, 4, 10, rng));
        const auto a = awgn_matrices(2, 3, 5);
        CHECK(a.at(4, 0, 0) == cd(1.0));
        CHECK(a.at(4, 1, 1) == cd(1.0));
        CHECK(a.at(4, 2, 0) == cd(0.0));
        CHECK(a.at(4, 0, 1) == cd(0.0));
    }

    TEST_CASE("transmit power is split equally across layers")
    {
        Rng rng(113);
        const int n = 200000;
        std::vector<std::vector<cd>> layers{qpsk_stream(n, rng), qpsk_stream(n, rng)};
        const auto out = apply_channel(layers, awgn_matrices(2, 2, n), 200.0, rng);
        CHECK(out.realization.layer_power == doctest::Approx(0.5));
        CHECK(out.realization.noise_var == doctest::Approx(1e-20));
        REQUIRE(out.received.size() == 2);
        double p = 0.0;
        for (const cd &v : out.received[0])
            p += std::norm(v);
        CHECK(p / n == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(std::abs(out.received[1][7] - layers[1][7] / std::sqrt(2.0)) < 1e-8);

        // Rayleigh 2x2: total received power per antenna is 1.
        const auto ray = apply_channel(layers, draw_rayleigh(2, 2, n, rng), 200.0, rng);
        p = 0.0;
        for (const cd &v : ray.received[1])
            p += std::norm(v);
        CHECK(std::abs(p / n - 1.0) < 0.02);

        std::vector<std::vector<cd>> one{qpsk_stream(10, rng)};
        CHECK_THROWS_AS(apply_channel(one, awgn_matrices(2, 2, 10), 10.0, rng), std::invalid_argument);
        CHECK_THROWS_AS(apply_channel(layers, awgn_matrices(2, 2, 10), 10.0, rng), std::invalid_argument);
    }

    TEST_CASE("channel draws are reproducible from the seed")
    {
        std::vector<std::vector<cd>> layers{std::vector<cd>(50, cd(1.0))};
        Rng a(7), b(7), c(8);
        const auto ya = apply_channel(layers, draw_rayleigh(1, 2, 50, a), 5.0, a);
        const auto yb = apply_channel(layers, draw_rayleigh(1, 2, 50, b), 5.0, b);
        const auto yc = apply_channel(layers, draw_rayleigh(1, 2, 50, c), 5.0, c);
        CHECK(ya.received == yb.received);
        CHECK(ya.received != yc.received);
    }
}
