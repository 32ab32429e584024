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

#include <filesystem>
#include <string_view>
#include <vector>

namespace embms
{
    enum class Mode
    {
        mbsfn,
        scptm
    };

    enum class CpType
    {
        normal,
        extended
    };

    std::string_view to_string(Mode mode);
    Mode parse_mode(std::string_view text); // throws ConfigError

    /// Frame-structure parameters of one point-to-multipoint mode.
    ///
    /// `n_sym` counts the OFDM symbols of a subframe that can carry data: control symbols
    /// (SC-PTM only) are already removed, so `n_sym + n_ctrl_sym` is the subframe length.
    struct Numerology
    {
        Mode mode = Mode::scptm;
        double subcarrier_spacing_khz = 15.0;
        CpType cp = CpType::normal;
        int n_sym = 12;
        int n_sc_rb = 12;
        int n_rs_rb = 6;
        int n_ctrl_sym = 2;

        int total_symbols() const { return n_sym + n_ctrl_sym; }
        int res_per_rb() const { return n_sym * n_sc_rb; }

        // The 7.5 kHz MBSFN carrier is representable but has no validated RS count.
        bool supported() const;
    };

    /// SC-PTM on the shared channel: 15 kHz, normal CP, 14 symbols per subframe. Carriers of
    /// 5 MHz and below (<= 25 RB) reserve 3 control symbols, wider carriers 2.
    Numerology scptm_numerology(int n_rb);

    /// MBSFN with extended CP at 15, 7.5 or 1.25 kHz subcarrier spacing.
    Numerology mbsfn_numerology(double subcarrier_spacing_khz = 1.25);

    /// Numerology used by the simulator for a mode (MBSFN always at 1.25 kHz).
    Numerology default_numerology(Mode mode, int n_rb);

    /// Coded bits that fit into one subframe for one spatial stream:
    /// m * n_rb * (n_sym * n_sc_rb - n_rs_rb).
    long n_avail(const Numerology &num, int n_rb, int bits_per_symbol);

    /// TBS over available bits. Requires 0 < tbs_bits <= n_avail_bits.
    double effective_code_rate(long tbs_bits, long n_avail_bits);

    /// BICM spectral efficiency in bits per resource element.
    double bicm_se(int bits_per_symbol, double code_rate, int n_streams);

    inline constexpr double max_code_rate = 0.925;

    bool valid_bits_per_symbol(int m);

    struct McsEntry
    {
        int mcs_index = 0;
        int modulation_order = 2; // bits per symbol
        int i_tbs = 0;
        int n_rb = 0;
        long tbs_bits = 0;
        double code_rate = 0.0; // tbs_bits / n_avail for the mode's numerology at n_rb
    };

    /// Configuration of the spectral-efficiency formula.
    struct SeConfig
    {
        int n_rb = 50;
        int n_streams = 1;
    };

    void validate(const SeConfig &config, Mode mode); // throws ConfigError

    /// Reads the comma-separated MCS/TBS file and returns the entries of `mode` at `n_rb`,
    /// ordered by MCS index. Every row of the mode (all RB counts) is validated.
    /// Throws DataError on I/O failure, malformed rows or CR above the cap.
    std::vector<McsEntry> load_mcs_table(Mode mode, const std::filesystem::path &path, int n_rb = 50);

    const McsEntry &find_mcs(const std::vector<McsEntry> &table, int mcs_index); // throws ConfigError
}
