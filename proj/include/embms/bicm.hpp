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

#include "embms/bits.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

namespace embms::bicm
{
    using cd = std::complex<double>;

    // ---------------------------------------------------------------------------------------
    // Scrambling

    /// Length-31 Gold sequence c(n) = x1(n + 1600) XOR x2(n + 1600), with x1 seeded by 1 and
    /// x2 by the 31-bit initialisation value.
    Bits gold_sequence(std::uint32_t c_init, size_t length);

    /// XOR with the Gold sequence; applying it twice with the same seed is the identity.
    Bits scramble(BitSpan bits, std::uint32_t seed);

    /// Receive-side counterpart of scramble for soft bits: flips the sign where c(n) = 1.
    void descramble_llrs(std::span<float> llrs, std::uint32_t seed);

    // ---------------------------------------------------------------------------------------
    // Constellations

    class Constellation
    {
    public:
        /// `points[label]`, where label packs b(0) as the most significant bit.
        Constellation(int bits_per_symbol, std::vector<cd> points);

        int bits_per_symbol() const { return bits_; }
        int order() const { return 1 << bits_; }
        const std::vector<cd> &points() const { return points_; }
        const cd &point(unsigned label) const { return points_[label]; }

        /// Index of the nearest point (hard decision).
        unsigned slice(cd y) const;

        /// Max-log LLRs of one received symbol into out[0..m).
        void llrs(cd y, double noise_var, float clamp, float *out) const;

        /// True when every label bit is carried by one axis and the points form a grid.
        bool separable() const { return separable_; }

        /// Adjacent levels on each axis differ in exactly one of that axis' label bits.
        bool gray_per_axis() const;

    private:
        struct Axis
        {
            std::vector<double> levels;                         // ascending coordinates
            std::vector<int> bit_positions;                     // label bits carried by this axis
            std::vector<std::vector<std::uint8_t>> level_bits;  // [level][i] value of bit_positions[i]
            std::vector<std::uint8_t> flat_bits;                // level_bits row after row
        };

        void llrs_exhaustive(cd y, double noise_var, float clamp, float *out) const;

        int bits_;
        std::vector<cd> points_;
        bool separable_ = false;
        Axis axis_[2];
    };

    /// All four LTE constellations, loaded from the M,label_bits,re,im data file.
    class ConstellationSet
    {
    public:
        /// Throws DataError on a missing or malformed file, a missing order, unit-energy
        /// violations beyond 1e-12, or non-Gray labelling along an axis.
        static ConstellationSet load(const std::filesystem::path &path);

        const Constellation &for_bits(int bits_per_symbol) const; // throws std::invalid_argument

    private:
        std::map<int, Constellation> by_bits_;
    };

    /// Maps consecutive m-bit groups to points. Throws std::invalid_argument when the bit
    /// count is not a multiple of m.
    std::vector<cd> map_symbols(BitSpan bits, const Constellation &c);

    /// Max-log LLRs: (min_{b=1} |y - s|^2 - min_{b=0} |y - s|^2) / noise_var, clamped to
    /// +-clamp. Throws std::invalid_argument for a non-positive variance.
    std::vector<float> demap_llr(std::span<const cd> symbols, std::span<const double> noise_var,
                                 const Constellation &c, float clamp = default_llr_clamp);
}
