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

#include "embms/numerology.hpp"

#include <complex>
#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace embms::grid
{
    using cd = std::complex<double>;

    enum class ReKind : std::uint8_t
    {
        data,
        reference_signal,
        control
    };

    std::string_view to_string(ReKind kind);

    /// One subframe of resource elements for every antenna port.
    ///
    /// Data REs are numbered frequency-first, time-second: all data subcarriers of the first
    /// OFDM symbol, then the next symbol. Reference-signal REs are spaced evenly inside each
    /// RB at non-standard positions with the per-RB count of the numerology:
    ///   - SC-PTM: symbols 4, 7, 11 with subcarriers {3, 9}, {0, 6}, {3, 9}.
    ///   - MBSFN 15 kHz: symbols 2, 6, 10, every second subcarrier, alternating offset.
    ///   - MBSFN 1.25 kHz: every sixth subcarrier of the single symbol.
    /// SC-PTM control symbols lead the subframe and are marked as reserved.
    class ResourceGrid
    {
    public:
        /// Throws ConfigError for unsupported numerologies, n_rb outside [1, 110] or n_ports outside [1, 4].
    ResourceGrid(const Numerology &num, int n_rb, int n_ports = 1);

        const Numerology &numerology() const { return num_; }
        int n_rb() const { return n_rb_; }
        int n_ports() const { return n_ports_; }
        int n_symbols() const { return n_symbols_; }
        int n_subcarriers() const { return n_subcarriers_; }

        ReKind kind(int symbol, int subcarrier) const { return kinds_[flat(symbol, subcarrier)]; }
        int data_re_count() const { return int(data_positions_.size()); }
        int count(ReKind kind) const;

        /// Flat RE indices (symbol * n_subcarriers + subcarrier) in data fill order.
        std::span<const int> data_positions() const { return data_positions_; }

        cd &at(int port, int symbol, int subcarrier) { return values_[size_t(port)][flat(symbol, subcarrier)]; }
        const cd &at(int port, int symbol, int subcarrier) const { return values_[size_t(port)][flat(symbol, subcarrier)]; }
        std::span<cd> port_values(int port) { return values_[size_t(port)]; }
        std::span<const cd> port_values(int port) const { return values_[size_t(port)]; }

    private:
        size_t flat(int symbol, int subcarrier) const { return size_t(symbol) * size_t(n_subcarriers_) + size_t(subcarrier); }

        Numerology num_;
        int n_rb_;
        int n_ports_;
        int n_symbols_;
        int n_subcarriers_;
        std::vector<ReKind> kinds_;
        std::vector<int> data_positions_;
        std::vector<std::vector<cd>> values_;
    };

    /// Skeleton grid with RS values filled in on every port.
    ResourceGrid build_layout(const Numerology &num, int n_rb, int n_ports = 1);

    /// Writes stream p into the data REs of port p. Throws std::invalid_argument when the
    /// stream count differs from the port count or a stream length differs from the data-RE count.
    void map_to_grid(std::span<const std::vector<cd>> streams, ResourceGrid &grid);

    /// Data-RE symbols of every port, in fill order.
    std::vector<std::vector<cd>> extract_from_grid(const ResourceGrid &grid);

    /// Text dump of the layout, one RE per line: symbol_index,subcarrier,kind.
    void dump_layout(const ResourceGrid &grid, std::ostream &out);

    // ---------------------------------------------------------------------------------------
    // CP-OFDM

    struct OfdmParams
    {
        int fft_size = 0;
        double sample_rate_hz = 0.0;
        std::vector<int> cp_samples; // per OFDM symbol of the subframe
    };

    /// Smallest power-of-two transform (>= 128) that holds the active subcarriers plus DC.
    /// Extended CP is a quarter of the useful symbol (16.7, 33.3, 200 us at 15, 7.5, 1.25 kHz);
    /// normal CP is 160/2048 of it on the first symbol of each slot and 144/2048 elsewhere.
    OfdmParams ofdm_params(const Numerology &num, int n_rb);

    /// Time samples per port: inverse DFT of every symbol (DC left empty, lower half of the
    /// band on negative frequencies) with the cyclic prefix prepended. Scaled so that the mean
    /// power of the useful samples equals the mean power of the symbol's subcarriers.
    std::vector<std::vector<cd>> ofdm_modulate(const ResourceGrid &grid);

    /// Drops the cyclic prefixes and transforms back. `layout` supplies the numerology,
    /// dimensions and RE kinds of the result.
    ResourceGrid ofdm_demodulate(std::span<const std::vector<cd>> samples, const ResourceGrid &layout);
}
