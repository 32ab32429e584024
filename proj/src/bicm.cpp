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

#include "embms/bicm.hpp"

#include "embms/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace embms::bicm
{
    namespace
    {
        constexpr int gold_offset = 1600;
        constexpr std::uint32_t mask31 = 0x7FFFFFFFu;

        // Registers hold x(n) .. x(n+30) in bits 0..30.
        struct GoldGenerator
        {
            std::uint32_t x1 = 1;
            std::uint32_t x2;

            explicit GoldGenerator(std::uint32_t c_init) : x2(c_init & mask31)
            {
                for (int n = 0; n < gold_offset; ++n)
                    advance();
            }

            std::uint8_t next()
            {
                const auto c = std::uint8_t((x1 ^ x2) & 1u);
                advance();
                return c;
            }

            void advance()
            {
                const std::uint32_t n1 = (x1 ^ (x1 >> 3)) & 1u;
                const std::uint32_t n2 = (x2 ^ (x2 >> 1) ^ (x2 >> 2) ^ (x2 >> 3)) & 1u;
                x1 = (x1 >> 1) | (n1 << 30);
                x2 = (x2 >> 1) | (n2 << 30);
            }
        };

        constexpr double coord_tolerance = 1e-9;

        std::vector<double> distinct_levels(std::vector<double> v)
        {
            std::sort(v.begin(), v.end());
            std::vector<double> out;
            for (double x : v)
                if (out.empty() || x - out.back() > coord_tolerance)
                    out.push_back(x);
            return out;
        }

        size_t level_index(const std::vector<double> &levels, double x)
        {
            auto it = std::lower_bound(levels.begin(), levels.end(), x - coord_tolerance);
            return size_t(it - levels.begin());
        }
    }

    Bits gold_sequence(std::uint32_t c_init, size_t length)
    {
        GoldGenerator g(c_init);
        Bits c(length);
        for (auto &b : c)
            b = g.next();
        return c;
    }

    Bits scramble(BitSpan bits, std::uint32_t seed)
    {
        GoldGenerator g(seed);
        Bits out(bits.size());
        for (size_t i = 0; i < bits.size(); ++i)
            out[i] = std::uint8_t(bits[i] ^ g.next());
        return out;
    }

    void descramble_llrs(std::span<float> llrs, std::uint32_t seed)
    {
        GoldGenerator g(seed);
        for (float &v : llrs)
            if (g.next())
                v = -v;
    }

    Constellation::Constellation(int bits_per_symbol, std::vector<cd> points) : bits_(bits_per_symbol), points_(std::move(points))
    {
        if (bits_ < 1 || bits_ > 8 || points_.size() != (size_t(1) << bits_))
            throw std::invalid_argument("Constellation: need 2^m points");

        std::vector<double> re, im;
        for (const cd &p : points_)
        {
            re.push_back(p.real());
            im.push_back(p.imag());
        }
        axis_[0].levels = distinct_levels(re);
        axis_[1].levels = distinct_levels(im);
        if (axis_[0].levels.size() * axis_[1].levels.size() != points_.size())
            return;

        for (int b = 0; b < bits_; ++b)
        {
            bool placed = false;
            for (int a = 0; a < 2 && !placed; ++a)
            {
                Axis &ax = axis_[a];
                std::vector<int> value(ax.levels.size(), -1);
                bool consistent = true;
                for (unsigned label = 0; label < points_.size() && consistent; ++label)
                {
                    const double x = a == 0 ? points_[label].real() : points_[label].imag();
                    const size_t li = level_index(ax.levels, x);
                    const int bit = int((label >> (bits_ - 1 - b)) & 1u);
                    if (value[li] < 0)
                        value[li] = bit;
                    else if (value[li] != bit)
                        consistent = false;
                }
                if (consistent)
                {
                    ax.bit_positions.push_back(b);
                    if (ax.level_bits.empty())
                        ax.level_bits.resize(ax.levels.size());
                    for (size_t li = 0; li < ax.levels.size(); ++li)
                        ax.level_bits[li].push_back(std::uint8_t(value[li]));
                    placed = true;
                }
            }
            if (!placed)
                return;
        }
        for (auto &ax : axis_)
            for (const auto &lb : ax.level_bits)
                ax.flat_bits.insert(ax.flat_bits.end(), lb.begin(), lb.end());
        separable_ = true;
    }

    bool Constellation::gray_per_axis() const
    {
        if (!separable_)
            return false;
        for (const Axis &ax : axis_)
            for (size_t li = 1; li < ax.levels.size(); ++li)
            {
                int diff = 0;
                for (size_t i = 0; i < ax.bit_positions.size(); ++i)
                    diff += ax.level_bits[li][i] != ax.level_bits[li - 1][i];
                if (diff != 1)
                    return false;
            }
        return true;
    }

    unsigned Constellation::slice(cd y) const
    {
        unsigned best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (unsigned label = 0; label < points_.size(); ++label)
        {
            const double d = std::norm(y - points_[label]);
            if (d < best_d)
            {
                best_d = d;
                best = label;
            }
        }
        return best;
    }

    void Constellation::llrs(cd y, double noise_var, float clamp, float *out) const
    {
        if (!separable_)
        {
            llrs_exhaustive(y, noise_var, clamp, out);
            return;
        }
        const double inv = 1.0 / noise_var;
        for (int a = 0; a < 2; ++a)
        {
            const Axis &ax = axis_[a];
            const double x = a == 0 ? y.real() : y.imag();
            double dmin[2][8];
            const size_t nb = ax.bit_positions.size();
            std::fill_n(dmin[0], nb, std::numeric_limits<double>::infinity());
            std::fill_n(dmin[1], nb, std::numeric_limits<double>::infinity());
            const std::uint8_t *bits = ax.flat_bits.data();
            for (size_t li = 0; li < ax.levels.size(); ++li, bits += nb)
            {
                const double d = (x - ax.levels[li]) * (x - ax.levels[li]);
                for (size_t i = 0; i < nb; ++i)
                {
                    double &slot = dmin[bits[i]][i];
                    slot = std::min(slot, d);
                }
            }
            for (size_t i = 0; i < nb; ++i)
                out[ax.bit_positions[i]] = std::clamp(float((dmin[1][i] - dmin[0][i]) * inv), -clamp, clamp);
        }
    }

    void Constellation::llrs_exhaustive(cd y, double noise_var, float clamp, float *out) const
    {
        for (int b = 0; b < bits_; ++b)
        {
            double d0 = std::numeric_limits<double>::infinity(), d1 = d0;
            for (unsigned label = 0; label < points_.size(); ++label)
            {
                const double d = std::norm(y - points_[label]);
                if ((label >> (bits_ - 1 - b)) & 1u)
                    d1 = std::min(d1, d);
                else
                    d0 = std::min(d0, d);
            }
            out[b] = std::clamp(float((d1 - d0) / noise_var), -clamp, clamp);
        }
    }

    ConstellationSet ConstellationSet::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw DataError("cannot open constellation table " + path.string());

        std::map<int, std::vector<cd>> pts;
        std::map<int, std::vector<char>> seen;
        bool have_header = false;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const std::string where = path.filename().string() + ":" + std::to_string(line_no) + ": ";
            auto trimmed = detail::trim(line);
            if (trimmed.empty() || trimmed.front() == '#')
                continue;
            auto f = detail::split_csv(trimmed);
            if (!have_header)
            {
                if (f != std::vector<std::string>{"M", "label_bits", "re", "im"})
                    throw DataError(where + "expected header row M,label_bits,re,im");
                have_header = true;
                continue;
            }
            if (f.size() != 4)
                throw DataError(where + "expected 4 columns");
            long order;
            double re, im;
            try
            {
                order = detail::parse_int(f[0]);
                re = detail::parse_double(f[2]);
                im = detail::parse_double(f[3]);
            }
            catch (const std::exception &)
            {
                throw DataError(where + "malformed numeric field");
            }
            int m = 0;
            while ((1L << m) < order)
                ++m;
            if (order < 4 || (1L << m) != order || m % 2 != 0 || m > 8)
                throw DataError(where + "M must be 4, 16, 64 or 256");
            if (f[1].size() != size_t(m) || f[1].find_first_not_of("01") != std::string::npos)
                throw DataError(where + "label_bits must be " + std::to_string(m) + " binary digits");
            unsigned label = 0;
            for (char ch : f[1])
                label = (label << 1) | unsigned(ch - '0');

            auto &v = pts[m];
            auto &s = seen[m];
            if (v.empty())
            {
                v.resize(size_t(order));
                s.assign(size_t(order), 0);
            }
            if (s[label])
                throw DataError(where + "duplicate label");
            s[label] = 1;
            v[label] = cd(re, im);
        }
        if (!have_header)
            throw DataError(path.string() + ": missing header row");

        ConstellationSet set;
        for (int m : {2, 4, 6, 8})
        {
            auto it = pts.find(m);
            if (it == pts.end() || std::count(seen[m].begin(), seen[m].end(), 1) != (1L << m))
                throw DataError(path.string() + ": incomplete constellation for M = " + std::to_string(1 << m));
            double power = 0.0;
            for (const cd &p : it->second)
                power += std::norm(p);
            power /= double(it->second.size());
            if (std::abs(power - 1.0) > 1e-12)
                throw DataError(path.string() + ": M = " + std::to_string(1 << m) + " does not have unit average energy");
            Constellation c(m, it->second);
            if (!c.gray_per_axis())
                throw DataError(path.string() + ": M = " + std::to_string(1 << m) + " is not Gray labelled per axis");
            set.by_bits_.emplace(m, std::move(c));
        }
        return set;
    }

    const Constellation &ConstellationSet::for_bits(int bits_per_symbol) const
    {
        auto it = by_bits_.find(bits_per_symbol);
        if (it == by_bits_.end())
            throw std::invalid_argument("no constellation with " + std::to_string(bits_per_symbol) + " bits per symbol");
        return it->second;
    }

    std::vector<cd> map_symbols(BitSpan bits, const Constellation &c)
    {
        const int m = c.bits_per_symbol();
        if (bits.size() % size_t(m) != 0)
            throw std::invalid_argument("map_symbols: bit count " + std::to_string(bits.size()) +
                                        " is not a multiple of " + std::to_string(m));
        std::vector<cd> out(bits.size() / size_t(m));
        for (size_t i = 0; i < out.size(); ++i)
        {
            unsigned label = 0;
            for (int b = 0; b < m; ++b)
                label = (label << 1) | (bits[i * size_t(m) + size_t(b)] & 1u);
            out[i] = c.point(label);
        }
        return out;
    }

    std::vector<float> demap_llr(std::span<const cd> symbols, std::span<const double> noise_var, const Constellation &c,
                                 float clamp)
    {
        if (noise_var.size() != symbols.size())
            throw std::invalid_argument("demap_llr: one noise variance per symbol required");
        const size_t m = size_t(c.bits_per_symbol());
        std::vector<float> out(symbols.size() * m);
        for (size_t i = 0; i < symbols.size(); ++i)
        {
            if (!(noise_var[i] > 0.0))
                throw std::invalid_argument("demap_llr: noise variance must be positive");
            c.llrs(symbols[i], noise_var[i], clamp, out.data() + i * m);
        }
        return out;
    }
}
