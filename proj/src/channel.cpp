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

#include "embms/channel.hpp"

#include "embms/errors.hpp"

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace embms::channel
{
    std::string_view to_string(ChannelKind kind)
    {
        return kind == ChannelKind::awgn ? "awgn" : "rayleigh";
    }

    ChannelKind parse_channel(std::string_view text)
    {
        if (text == "awgn")
            return ChannelKind::awgn;
        if (text == "rayleigh")
            return ChannelKind::rayleigh;
        throw ConfigError("unknown channel '" + std::string(text) + "' (expected awgn or rayleigh)");
    }

    std::string_view to_string(Fading fading)
    {
        return fading == Fading::per_re ? "per-re" : "per-subframe";
    }

    Fading parse_fading(std::string_view text)
    {
        if (text == "per-re")
            return Fading::per_re;
        if (text == "per-subframe")
            return Fading::per_subframe;
        throw ConfigError("unknown fading '" + std::string(text) + "' (expected per-re or per-subframe)");
    }

    double noise_variance(double cnr_db)
    {
        return std::pow(10.0, -cnr_db / 10.0);
    }

    cd complex_gaussian(Rng &rng, double var)
    {
        boost::random::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
        const double re = n(rng);
        return {re, n(rng)};
    }

    std::vector<cd> apply_awgn(std::span<const cd> x, double cnr_db, Rng &rng)
    {
        boost::random::normal_distribution<double> n(0.0, std::sqrt(noise_variance(cnr_db) / 2.0));
        std::vector<cd> y(x.size());
        for (size_t i = 0; i < x.size(); ++i)
        {
            const double re = n(rng);
            y[i] = x[i] + cd(re, n(rng));
        }
        return y;
    }

    ChannelMatrices::ChannelMatrices(int n_tx, int n_rx, int n_re)
        : n_tx_(n_tx), n_rx_(n_rx), n_re_(n_re), h_(size_t(n_tx) * size_t(n_rx) * size_t(n_re))
    {
        if (n_tx < 1 || n_rx < 1 || n_re < 0)
            throw std::invalid_argument("ChannelMatrices: bad dimensions");
    }

    ChannelMatrices draw_rayleigh(int n_tx, int n_rx, int n_re, Rng &rng, Fading fading)
    {
        if (n_tx != 1 && n_tx != 2 && n_tx != 4)
            throw ConfigError("n_tx must be 1, 2 or 4");
        if (n_rx < n_tx)
            throw ConfigError("n_rx must be >= n_tx");

        ChannelMatrices h(n_tx, n_rx, n_re);
        boost::random::normal_distribution<double> n(0.0, std::sqrt(0.5));
        const int drawn = (fading == Fading::per_subframe) ? std::min(n_re, 1) : n_re;
        for (int re = 0; re < drawn; ++re)
            for (int r = 0; r < n_rx; ++r)
                for (int t = 0; t < n_tx; ++t)
                {
                    const double a = n(rng);
                    h.at(re, r, t) = cd(a, n(rng));
                }
        for (int re = drawn; re < n_re; ++re)
            for (int r = 0; r < n_rx; ++r)
                for (int t = 0; t < n_tx; ++t)
                    h.at(re, r, t) = h.at(0, r, t);
        return h;
    }

    ChannelMatrices awgn_matrices(int n_tx, int n_rx, int n_re)
    {
        ChannelMatrices h(n_tx, n_rx, n_re);
        for (int re = 0; re < n_re; ++re)
            for (int d = 0; d < std::min(n_tx, n_rx); ++d)
                h.at(re, d, d) = 1.0;
        return h;
    }

    ChannelOutput apply_channel(std::span<const std::vector<cd>> layers, ChannelMatrices h, double cnr_db, Rng &rng)
    {
        const int n_tx = h.n_tx(), n_rx = h.n_rx(), n_re = h.n_re();
        if (int(layers.size()) != n_tx)
            throw std::invalid_argument("apply_channel: " + std::to_string(layers.size()) + " layers for " +
                                        std::to_string(n_tx) + " transmit antennas");
        for (const auto &l : layers)
            if (int(l.size()) != n_re)
                throw std::invalid_argument("apply_channel: layer length differs from channel RE count");

        ChannelOutput out;
        out.realization.noise_var = noise_variance(cnr_db);
        out.realization.cnr_db = cnr_db;
        out.realization.layer_power = 1.0 / n_tx;

        const double amp = std::sqrt(out.realization.layer_power);
        boost::random::normal_distribution<double> n(0.0, std::sqrt(out.realization.noise_var / 2.0));
        out.received.assign(size_t(n_rx), std::vector<cd>(size_t(n_re)));
        for (int re = 0; re < n_re; ++re)
            for (int r = 0; r < n_rx; ++r)
            {
                cd acc{};
                for (int t = 0; t < n_tx; ++t)
                    acc += h.at(re, r, t) * layers[size_t(t)][size_t(re)];
                const double a = n(rng);
                out.received[size_t(r)][size_t(re)] = amp * acc + cd(a, n(rng));
            }
        out.realization.h = std::move(h);
        return out;
    }
}
