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

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace embms::channel
{
    using cd = std::complex<double>;
    using Rng = std::mt19937_64;

    enum class ChannelKind
    {
        awgn,
        rayleigh
    };

    // Per-RE fast fading or one matrix held for the whole subframe.
    enum class Fading
    {
        per_re,
        per_subframe
    };

    std::string_view to_string(ChannelKind kind);
    ChannelKind parse_channel(std::string_view text); // throws ConfigError
    std::string_view to_string(Fading fading);
    Fading parse_fading(std::string_view text); // throws ConfigError

    /// Noise variance per receive antenna for unit received signal power: 10^(-cnr_db / 10).
    double noise_variance(double cnr_db);

    /// Draw from CN(0, var).
    cd complex_gaussian(Rng &rng, double var = 1.0);

    /// y = x + n with n ~ CN(0, 10^(-cnr_db/10)) independently per symbol.
    std::vector<cd> apply_awgn(std::span<const cd> x, double cnr_db, Rng &rng);

    /// One n_rx x n_tx matrix per RE, stored RE-major then row-major.
    class ChannelMatrices
    {
    public:
        ChannelMatrices() = default;
        ChannelMatrices(int n_tx, int n_rx, int n_re);

        int n_tx() const { return n_tx_; }
        int n_rx() const { return n_rx_; }
        int n_re() const { return n_re_; }

        cd &at(int re, int rx, int tx) { return h_[index(re, rx, tx)]; }
        const cd &at(int re, int rx, int tx) const { return h_[index(re, rx, tx)]; }
        /// Row-major n_rx x n_tx block of one RE.
        std::span<const cd> matrix(int re) const
        {
            return {h_.data() + size_t(re) * size_t(n_rx_ * n_tx_), size_t(n_rx_ * n_tx_)};
        }

    private:
        size_t index(int re, int rx, int tx) const
        {
            return (size_t(re) * size_t(n_rx_) + size_t(rx)) * size_t(n_tx_) + size_t(tx);
        }

        int n_tx_ = 0;
        int n_rx_ = 0;
        int n_re_ = 0;
        std::vector<cd> h_;
    };

    /// i.i.d. CN(0, 1) entries. With Fading::per_subframe one matrix is drawn and repeated.
    /// Throws ConfigError unless n_tx is 1, 2 or 4 and n_rx >= n_tx.
    ChannelMatrices draw_rayleigh(int n_tx, int n_rx, int n_re, Rng &rng, Fading fading = Fading::per_re);

    /// Rectangular identity on every RE (receive antenna r sees transmit layer r).
    ChannelMatrices awgn_matrices(int n_tx, int n_rx, int n_re);

    struct ChannelRealization
    {
        ChannelMatrices h;
        double noise_var = 0.0; // per receive antenna
        double cnr_db = 0.0;
        double layer_power = 1.0; // transmit power of each layer
    };

    struct ChannelOutput
    {
        std::vector<std::vector<cd>> received; // [rx][re]
        ChannelRealization realization;
    };

    /// y = H x / sqrt(n_tx) + n per RE, so the total transmit power is 1 for any layer count.
    /// `layers` holds n_tx unit-power streams of equal length. Throws std::invalid_argument on
    /// dimension mismatches.
    ChannelOutput apply_channel(std::span<const std::vector<cd>> layers, ChannelMatrices h, double cnr_db, Rng &rng);
}
