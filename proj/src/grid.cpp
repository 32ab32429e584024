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

#include "embms/grid.hpp"

#include "embms/bicm.hpp"
#include "embms/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>
#include <string>

namespace embms::grid
{
    namespace
    {
        constexpr std::uint32_t rs_seed_base = 0x2A5C3u;

        // Reference-signal subcarrier offsets within an RB for a full-subframe symbol index.
        std::vector<int> rs_offsets(const Numerology &num, int symbol)
        {
            if (num.mode == Mode::scptm)
            {
                if (symbol == 4 || symbol == 11)
                    return {3, 9};
                if (symbol == 7)
                    return {0, 6};
                return {};
            }
            if (num.n_sc_rb == 144)
            {
                std::vector<int> k;
                for (int i = 0; i < 144; i += 6)
                    k.push_back(i);
                return k;
            }
            if (symbol == 2 || symbol == 6 || symbol == 10)
            {
                std::vector<int> k;
                for (int i = (symbol == 6) ? 1 : 0; i < 12; i += 2)
                    k.push_back(i);
                return k;
            }
            return {};
        }
    }

    std::string_view to_string(ReKind kind)
    {
        switch (kind)
        {
        case ReKind::data:
            return "data";
        case ReKind::reference_signal:
            return "rs";
        case ReKind::control:
            return "control";
        }
        return "?";
    }

    ResourceGrid::ResourceGrid(const Numerology &num, int n_rb, int n_ports)
        : num_(num), n_rb_(n_rb), n_ports_(n_ports)
    {
        if (!num.supported())
            throw ConfigError("unsupported numerology for " + std::string(to_string(num.mode)));
        if (n_rb < 1 || n_rb > 110)
            throw ConfigError("n_rb must be in [1, 110]");
        if (n_ports < 1 || n_ports > 4)
            throw ConfigError("n_ports must be in [1, 4]");

        n_symbols_ = num.total_symbols();
        n_subcarriers_ = n_rb * num.n_sc_rb;
        kinds_.assign(size_t(n_symbols_) * size_t(n_subcarriers_), ReKind::data);

        for (int l = 0; l < n_symbols_; ++l)
        {
            const bool ctrl = l < num.n_ctrl_sym;
            const auto offsets = rs_offsets(num, l);
            for (int rb = 0; rb < n_rb; ++rb)
            {
                if (ctrl)
                {
                    for (int k = 0; k < num.n_sc_rb; ++k)
                        kinds_[flat(l, rb * num.n_sc_rb + k)] = ReKind::control;
                    continue;
                }
                for (int k : offsets)
                    kinds_[flat(l, rb * num.n_sc_rb + k)] = ReKind::reference_signal;
            }
        }

        for (int l = 0; l < n_symbols_; ++l)
            for (int k = 0; k < n_subcarriers_; ++k)
                if (kinds_[flat(l, k)] == ReKind::data)
                    data_positions_.push_back(int(flat(l, k)));

        values_.assign(size_t(n_ports), std::vector<cd>(kinds_.size(), cd{}));
    }

    int ResourceGrid::count(ReKind kind) const
    {
        int n = 0;
        for (auto k : kinds_)
            n += (k == kind);
        return n;
    }

    ResourceGrid build_layout(const Numerology &num, int n_rb, int n_ports)
    {
        ResourceGrid g(num, n_rb, n_ports);
        const int n_rs = g.count(ReKind::reference_signal);
        const double a = 1.0 / std::sqrt(2.0);
        for (int p = 0; p < n_ports; ++p)
        {
            const Bits c = bicm::gold_sequence(rs_seed_base + std::uint32_t(p), size_t(2 * n_rs));
            auto vals = g.port_values(p);
            size_t i = 0;
            for (int l = 0; l < g.n_symbols(); ++l)
                for (int k = 0; k < g.n_subcarriers(); ++k)
                    if (g.kind(l, k) == ReKind::reference_signal)
                    {
                        vals[size_t(l) * size_t(g.n_subcarriers()) + size_t(k)] =
                            cd(a * (1 - 2 * c[i]), a * (1 - 2 * c[i + 1]));
                        i += 2;
                    }
        }
        return g;
    }

    void map_to_grid(std::span<const std::vector<cd>> streams, ResourceGrid &grid)
    {
        if (int(streams.size()) != grid.n_ports())
            throw std::invalid_argument("map_to_grid: " + std::to_string(streams.size()) + " streams for " +
                                        std::to_string(grid.n_ports()) + " ports");
        const auto pos = grid.data_positions();
        for (int p = 0; p < grid.n_ports(); ++p)
        {
            const auto &s = streams[size_t(p)];
            if (s.size() != pos.size())
                throw std::invalid_argument("map_to_grid: " + std::to_string(s.size()) + " symbols for " +
                                            std::to_string(pos.size()) + " data REs");
            auto vals = grid.port_values(p);
            for (size_t i = 0; i < pos.size(); ++i)
                vals[size_t(pos[i])] = s[i];
        }
    }

    std::vector<std::vector<cd>> extract_from_grid(const ResourceGrid &grid)
    {
        const auto pos = grid.data_positions();
        std::vector<std::vector<cd>> out(size_t(grid.n_ports()));
        for (int p = 0; p < grid.n_ports(); ++p)
        {
            auto vals = grid.port_values(p);
            out[size_t(p)].reserve(pos.size());
            for (int i : pos)
                out[size_t(p)].push_back(vals[size_t(i)]);
        }
        return out;
    }

    void dump_layout(const ResourceGrid &grid, std::ostream &out)
    {
        for (int l = 0; l < grid.n_symbols(); ++l)
            for (int k = 0; k < grid.n_subcarriers(); ++k)
                out << l << ',' << k << ',' << to_string(grid.kind(l, k)) << '\n';
    }

    OfdmParams ofdm_params(const Numerology &num, int n_rb)
    {
        const int n_sc = n_rb * num.n_sc_rb;
        OfdmParams p;
        p.fft_size = 128;
        while (p.fft_size < n_sc + 1)
            p.fft_size *= 2;
        p.sample_rate_hz = p.fft_size * num.subcarrier_spacing_khz * 1e3;

        const int n = num.total_symbols();
        p.cp_samples.resize(size_t(n));
        for (int l = 0; l < n; ++l)
        {
            if (num.cp == CpType::extended)
                p.cp_samples[size_t(l)] = p.fft_size / 4;
            else
                p.cp_samples[size_t(l)] = ((l % (n / 2)) == 0 ? 160 : 144) * p.fft_size / 2048;
        }
        return p;
    }

    namespace
    {
        // Subcarrier k of an n_sc band sits on FFT bin: lower half negative, upper half from 1.
        int bin_of(int k, int n_sc, int n_fft)
        {
            const int half = n_sc / 2;
            return k < half ? n_fft - half + k : k - half + 1;
        }
    }

    std::vector<std::vector<cd>> ofdm_modulate(const ResourceGrid &grid)
    {
        const auto par = ofdm_params(grid.numerology(), grid.n_rb());
        const int n_fft = par.fft_size;
        const int n_sc = grid.n_subcarriers();
        const double scale = n_fft / std::sqrt(double(n_sc));

        Eigen::FFT<double> fft;
        std::vector<cd> freq(static_cast<size_t>(n_fft)), time(static_cast<size_t>(n_fft));
        std::vector<std::vector<cd>> out(size_t(grid.n_ports()));
        for (int p = 0; p < grid.n_ports(); ++p)
        {
            auto &o = out[size_t(p)];
            for (int l = 0; l < grid.n_symbols(); ++l)
            {
                std::fill(freq.begin(), freq.end(), cd{});
                for (int k = 0; k < n_sc; ++k)
                    freq[size_t(bin_of(k, n_sc, n_fft))] = grid.at(p, l, k);
                fft.inv(time, freq);
                for (auto &t : time)
                    t *= scale;
                const int cp = par.cp_samples[size_t(l)];
                o.insert(o.end(), time.end() - cp, time.end());
                o.insert(o.end(), time.begin(), time.end());
            }
        }
        return out;
    }

    ResourceGrid ofdm_demodulate(std::span<const std::vector<cd>> samples, const ResourceGrid &layout)
    {
        const auto par = ofdm_params(layout.numerology(), layout.n_rb());
        const int n_fft = par.fft_size;
        const int n_sc = layout.n_subcarriers();
        const double scale = std::sqrt(double(n_sc)) / n_fft;

        size_t expected = 0;
        for (int cp : par.cp_samples)
            expected += size_t(cp + n_fft);
        if (int(samples.size()) != layout.n_ports())
            throw std::invalid_argument("ofdm_demodulate: port count mismatch");

        ResourceGrid g = layout;
        Eigen::FFT<double> fft;
        std::vector<cd> time(static_cast<size_t>(n_fft)), freq(static_cast<size_t>(n_fft));
        for (int p = 0; p < layout.n_ports(); ++p)
        {
            const auto &s = samples[size_t(p)];
            if (s.size() != expected)
                throw std::invalid_argument("ofdm_demodulate: expected " + std::to_string(expected) + " samples, got " +
                                            std::to_string(s.size()));
            size_t pos = 0;
            for (int l = 0; l < layout.n_symbols(); ++l)
            {
                pos += size_t(par.cp_samples[size_t(l)]);
                std::copy(s.begin() + long(pos), s.begin() + long(pos) + n_fft, time.begin());
                pos += size_t(n_fft);
                fft.fwd(freq, time);
                for (int k = 0; k < n_sc; ++k)
                    g.at(p, l, k) = freq[size_t(bin_of(k, n_sc, n_fft))] * scale;
            }
        }
        return g;
    }
}
