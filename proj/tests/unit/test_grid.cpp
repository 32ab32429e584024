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

#include "embms/errors.hpp"
#include "embms/grid.hpp"

#include <cmath>
#include <set>
#include <sstream>

using namespace embms;
using namespace embms::grid;

namespace
{
    std::vector<cd> random_symbols(size_t n, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        std::vector<cd> v(n);
        for (auto &x : v)
            x = cd(g(rng), g(rng));
        return v;
    }
}

TEST_SUITE("grid")
{
    TEST_CASE("data RE counts per subframe")
    {
        const auto sc = build_layout(scptm_numerology(50), 50);
        CHECK(sc.data_re_count() == 6900);
        CHECK(sc.n_symbols() == 14);
        CHECK(sc.n_subcarriers() == 600);
        CHECK(sc.count(ReKind::reference_signal) == 300);
        CHECK(sc.count(ReKind::control) == 1200);

        const auto mb = build_layout(mbsfn_numerology(1.25), 50);
        CHECK(mb.data_re_count() == 6000);
        CHECK(mb.count(ReKind::reference_signal) == 1200);
        CHECK(mb.n_symbols() == 1);
        CHECK(mb.n_subcarriers() == 7200);

        CHECK(build_layout(scptm_numerology(50), 1).data_re_count() == 138);
        CHECK(build_layout(mbsfn_numerology(15.0), 50).data_re_count() == 6300);
    }

    TEST_CASE("data RE count equals the per-RB budget for every supported configuration")
    {
        for (int n_rb : {1, 6, 15, 25, 50, 75, 100, 110})
        {
            CAPTURE(n_rb);
            for (const auto &num : {scptm_numerology(n_rb), mbsfn_numerology(1.25), mbsfn_numerology(15.0)})
                for (int ports : {1, 2, 4})
                {
                    const auto g = build_layout(num, n_rb, ports);
                    CHECK(long(g.data_re_count()) * 2 == n_avail(num, n_rb, 2));
                    CHECK(g.count(ReKind::reference_signal) == n_rb * num.n_rs_rb);
                    CHECK(g.count(ReKind::data) + g.count(ReKind::reference_signal) + g.count(ReKind::control) ==
                          g.n_symbols() * g.n_subcarriers());
                }
        }
        CHECK_THROWS_AS(ResourceGrid(scptm_numerology(50), 0), ConfigError);
        CHECK_THROWS_AS(ResourceGrid(scptm_numerology(50), 111), ConfigError);
        CHECK_THROWS_AS(ResourceGrid(scptm_numerology(50), 50, 5), ConfigError);
        CHECK_THROWS_AS(ResourceGrid(mbsfn_numerology(7.5), 50), ConfigError);
    }

    TEST_CASE("data fill order is frequency first")
    {
        const auto g = build_layout(scptm_numerology(50), 50);
        const auto pos = g.data_positions();
        CHECK(std::is_sorted(pos.begin(), pos.end()));
        CHECK(std::set<int>(pos.begin(), pos.end()).size() == pos.size());
        for (int p : pos)
            CHECK(g.kind(p / g.n_subcarriers(), p % g.n_subcarriers()) == ReKind::data);
        CHECK(pos[0] == 2 * 600); // first data symbol after the control region
    }

    TEST_CASE("map and extract are inverse and leave RS untouched")
    {
        std::mt19937_64 rng(83);
        for (const auto &num : {scptm_numerology(50), mbsfn_numerology(1.25)})
        {
            auto g = build_layout(num, 25, 2);
            const auto before = g;
            std::vector<std::vector<cd>> streams{random_symbols(size_t(g.data_re_count()), rng),
                                                 random_symbols(size_t(g.data_re_count()), rng)};
            map_to_grid(streams, g);
            CHECK(extract_from_grid(g) == streams);
            for (int p = 0; p < 2; ++p)
                for (int l = 0; l < g.n_symbols(); ++l)
                    for (int k = 0; k < g.n_subcarriers(); ++k)
                        if (g.kind(l, k) == ReKind::reference_signal)
                            CHECK(g.at(p, l, k) == before.at(p, l, k));

            streams[1].pop_back();
            CHECK_THROWS_AS(map_to_grid(streams, g), std::invalid_argument);
            streams.pop_back();
            CHECK_THROWS_AS(map_to_grid(streams, g), std::invalid_argument);
        }
        auto g = build_layout(scptm_numerology(50), 50);
        std::vector<std::vector<cd>> short_stream{std::vector<cd>(6899)};
        CHECK_THROWS_AS(map_to_grid(short_stream, g), std::invalid_argument);
    }

    TEST_CASE("reference signals are unit-modulus and deterministic")
    {
        const auto a = build_layout(scptm_numerology(50), 50, 2);
        const auto b = build_layout(scptm_numerology(50), 50, 2);
        bool ports_differ = false;
        for (int l = 0; l < a.n_symbols(); ++l)
            for (int k = 0; k < a.n_subcarriers(); ++k)
                if (a.kind(l, k) == ReKind::reference_signal)
                {
                    CHECK(std::abs(a.at(0, l, k)) == doctest::Approx(1.0));
                    CHECK(a.at(0, l, k) == b.at(0, l, k));
                    ports_differ |= a.at(0, l, k) != a.at(1, l, k);
                }
        CHECK(ports_differ);
    }

    TEST_CASE("layout dump")
    {
        const auto g = build_layout(mbsfn_numerology(1.25), 1);
        std::ostringstream out;
        dump_layout(g, out);
        std::istringstream in(out.str());
        std::string line;
        int rows = 0, rs = 0;
        while (std::getline(in, line))
        {
            ++rows;
            rs += line.ends_with(",rs");
        }
        CHECK(rows == 144);
        CHECK(rs == 24);
        CHECK(out.str().find("0,0,rs\n") != std::string::npos);
    }

    TEST_CASE("OFDM parameters")
    {
        const auto p15 = ofdm_params(mbsfn_numerology(15.0), 50);
        CHECK(p15.fft_size == 1024);
        CHECK(p15.sample_rate_hz == doctest::Approx(15.36e6));
        REQUIRE(p15.cp_samples.size() == 12);
        for (int cp : p15.cp_samples)
            CHECK(double(cp) == doctest::Approx(16.6667e-6 * p15.sample_rate_hz).epsilon(1e-4));

        const auto p125 = ofdm_params(mbsfn_numerology(1.25), 50);
        CHECK(p125.fft_size == 8192);
        CHECK(double(p125.cp_samples[0]) / p125.sample_rate_hz == doctest::Approx(200e-6));

        const auto sc = ofdm_params(scptm_numerology(50), 50);
        REQUIRE(sc.cp_samples.size() == 14);
        CHECK(sc.cp_samples[0] == 80);
        CHECK(sc.cp_samples[1] == 72);
        CHECK(sc.cp_samples[7] == 80);
        CHECK(ofdm_params(scptm_numerology(6), 6).fft_size == 128);
    }

    TEST_CASE("OFDM round trip and power")
    {
        std::mt19937_64 rng(89);
        for (const auto &num : {scptm_numerology(50), mbsfn_numerology(15.0), mbsfn_numerology(1.25)})
        {
            auto g = build_layout(num, 50, 2);
            std::vector<std::vector<cd>> streams{random_symbols(size_t(g.data_re_count()), rng),
                                                 random_symbols(size_t(g.data_re_count()), rng)};
            map_to_grid(streams, g);
            const auto params = ofdm_params(num, 50);
            const auto tx = ofdm_modulate(g);
            REQUIRE(tx.size() == 2);
            long expected = 0;
            for (int cp : params.cp_samples)
                expected += cp + params.fft_size;
            CHECK(long(tx[0].size()) == expected);

            const auto rx = ofdm_demodulate(tx, g);
            double worst = 0.0;
            for (int p = 0; p < 2; ++p)
                for (size_t i = 0; i < g.port_values(p).size(); ++i)
                    worst = std::max(worst, std::abs(rx.port_values(p)[i] - g.port_values(p)[i]));
            CHECK(worst < 1e-10);

            // Useful-sample power equals subcarrier power on the last symbol (no control there).
            const int l = g.n_symbols() - 1;
            double freq = 0.0, time = 0.0;
            for (int k = 0; k < g.n_subcarriers(); ++k)
                freq += std::norm(g.at(0, l, k));
            freq /= g.n_subcarriers();
            long start = 0;
            for (int s = 0; s < l; ++s)
                start += params.cp_samples[size_t(s)] + params.fft_size;
            start += params.cp_samples[size_t(l)];
            for (int n = 0; n < params.fft_size; ++n)
                time += std::norm(tx[0][size_t(start + n)]);
            time /= params.fft_size;
            CHECK(time == doctest::Approx(freq).epsilon(1e-9));

            // Cyclic prefix copies the tail of the useful part.
            CHECK(std::abs(tx[0][size_t(start - 1)] - tx[0][size_t(start + params.fft_size - 1)]) < 1e-12);
            CHECK(ofdm_modulate(g) == tx);
        }
        const auto g = build_layout(scptm_numerology(50), 50);
        std::vector<std::vector<cd>> wrong{std::vector<cd>(10)};
        CHECK_THROWS(ofdm_demodulate(wrong, g));
    }
}
