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

#include "embms/numerology.hpp"

#include "embms/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace embms
{
    std::string_view to_string(Mode mode)
    {
        return mode == Mode::mbsfn ? "mbsfn" : "scptm";
    }

    Mode parse_mode(std::string_view text)
    {
        if (text == "mbsfn")
            return Mode::mbsfn;
        if (text == "scptm")
            return Mode::scptm;
        throw ConfigError("unknown mode '" + std::string(text) + "' (expected mbsfn or scptm)");
    }

    bool Numerology::supported() const
    {
        return !(mode == Mode::mbsfn && subcarrier_spacing_khz == 7.5);
    }

    Numerology scptm_numerology(int n_rb)
    {
        if (n_rb < 1)
            throw std::invalid_argument("scptm_numerology: n_rb must be >= 1");
        Numerology num;
        num.mode = Mode::scptm;
        num.subcarrier_spacing_khz = 15.0;
        num.cp = CpType::normal;
        num.n_ctrl_sym = n_rb <= 25 ? 3 : 2;
        num.n_sym = 14 - num.n_ctrl_sym;
        num.n_sc_rb = 12;
        num.n_rs_rb = 6; // port-0 cell RS outside the control region
        return num;
    }

    Numerology mbsfn_numerology(double subcarrier_spacing_khz)
    {
        Numerology num;
        num.mode = Mode::mbsfn;
        num.cp = CpType::extended;
        num.n_ctrl_sym = 0;
        num.subcarrier_spacing_khz = subcarrier_spacing_khz;
        if (subcarrier_spacing_khz == 15.0)
        {
            num.n_sym = 12;
            num.n_sc_rb = 12;
            num.n_rs_rb = 18; // 3 RS symbols x 6 REs
        }
        else if (subcarrier_spacing_khz == 7.5)
        {
            num.n_sym = 6;
            num.n_sc_rb = 24;
            num.n_rs_rb = 0; // not validated, see Numerology::supported()
        }
        else if (subcarrier_spacing_khz == 1.25)
        {
            num.n_sym = 1;
            num.n_sc_rb = 144;
            num.n_rs_rb = 24;
        }
        else
            throw std::invalid_argument("mbsfn_numerology: subcarrier spacing must be 15, 7.5 or 1.25 kHz");
        return num;
    }

    Numerology default_numerology(Mode mode, int n_rb)
    {
        return mode == Mode::mbsfn ? mbsfn_numerology(1.25) : scptm_numerology(n_rb);
    }

    bool valid_bits_per_symbol(int m)
    {
        return m == 2 || m == 4 || m == 6 || m == 8;
    }

    long n_avail(const Numerology &num, int n_rb, int bits_per_symbol)
    {
        if (n_rb < 1)
            throw std::invalid_argument("n_avail: n_rb must be >= 1");
        if (!valid_bits_per_symbol(bits_per_symbol))
            throw std::invalid_argument("n_avail: modulation order must be 2, 4, 6 or 8 bits per symbol");
        if (!num.supported())
            throw std::invalid_argument("n_avail: unsupported numerology (MBSFN 7.5 kHz)");
        if (num.n_rs_rb >= num.res_per_rb())
            throw std::invalid_argument("n_avail: RS count exceeds the RB size");
        return long(bits_per_symbol) * n_rb * (num.res_per_rb() - num.n_rs_rb);
    }

    double effective_code_rate(long tbs_bits, long n_avail_bits)
    {
        if (tbs_bits <= 0 || n_avail_bits <= 0)
            throw std::invalid_argument("effective_code_rate: sizes must be positive");
        if (tbs_bits > n_avail_bits)
            throw std::invalid_argument("effective_code_rate: TBS exceeds the available bits");
        return double(tbs_bits) / double(n_avail_bits);
    }

    double bicm_se(int bits_per_symbol, double code_rate, int n_streams)
    {
        if (!valid_bits_per_symbol(bits_per_symbol))
            throw std::invalid_argument("bicm_se: modulation order must be 2, 4, 6 or 8 bits per symbol");
        if (!(code_rate > 0.0 && code_rate <= max_code_rate))
            throw std::invalid_argument("bicm_se: code rate outside (0, 0.925]");
        if (n_streams < 1)
            throw std::invalid_argument("bicm_se: n_streams must be >= 1");
        return bits_per_symbol * code_rate * n_streams;
    }

    void validate(const SeConfig &config, Mode mode)
    {
        if (config.n_rb < 1)
            throw ConfigError("n_rb must be >= 1");
        if (config.n_streams < 1)
            throw ConfigError("number of streams must be >= 1");
        if (mode == Mode::mbsfn && config.n_streams != 1)
            throw ConfigError("MBSFN transmits a single stream");
    }

    std::vector<McsEntry> load_mcs_table(Mode mode, const std::filesystem::path &path, int n_rb)
    {
        std::ifstream in(path);
        if (!in)
            throw DataError("cannot open MCS/TBS table " + path.string());

        const std::vector<std::string> header = {"mode", "mcs_index", "modulation_order", "i_tbs", "n_rb", "tbs_bits"};
        std::map<int, McsEntry> selected;
        std::map<std::pair<int, int>, long> seen; // (mcs, n_rb) -> tbs
        bool have_header = false;
        std::string line;
        int line_no = 0;

        while (std::getline(in, line))
        {
            ++line_no;
            const auto where = [&] { return path.filename().string() + ":" + std::to_string(line_no) + ": "; };
            std::string_view trimmed = detail::trim(line);
            if (trimmed.empty() || trimmed.front() == '#')
                continue;
            auto fields = detail::split_csv(trimmed);
            if (!have_header)
            {
                if (fields != header)
                    throw DataError(where() + "expected header row mode,mcs_index,modulation_order,i_tbs,n_rb,tbs_bits");
                have_header = true;
                continue;
            }
            if (fields.size() != header.size())
                throw DataError(where() + "expected 6 columns");

            Mode row_mode;
            try
            {
                row_mode = parse_mode(fields[0]);
            }
            catch (const ConfigError &e)
            {
                throw DataError(where() + e.what());
            }
            if (row_mode != mode)
                continue;

            McsEntry e;
            try
            {
                e.mcs_index = detail::parse_int(fields[1]);
                e.modulation_order = detail::parse_int(fields[2]);
                e.i_tbs = detail::parse_int(fields[3]);
                e.n_rb = detail::parse_int(fields[4]);
                e.tbs_bits = detail::parse_int(fields[5]);
            }
            catch (const std::exception &)
            {
                throw DataError(where() + "malformed integer field");
            }
            if (e.mcs_index < 0 || e.mcs_index > 28)
                throw DataError(where() + "mcs_index outside 0-28");
            if (!valid_bits_per_symbol(e.modulation_order))
                throw DataError(where() + "modulation_order must be 2, 4, 6 or 8");
            if (e.i_tbs < 0 || e.i_tbs > 33)
                throw DataError(where() + "i_tbs outside 0-33");
            if (e.n_rb < 1 || e.tbs_bits <= 0)
                throw DataError(where() + "n_rb and tbs_bits must be positive");
            if (!seen.emplace(std::pair{e.mcs_index, e.n_rb}, e.tbs_bits).second)
                throw DataError(where() + "duplicate (mcs_index, n_rb) row");

            const long avail = n_avail(default_numerology(mode, e.n_rb), e.n_rb, e.modulation_order);
            if (e.tbs_bits > avail)
                throw DataError(where() + "TBS exceeds the available bits");
            e.code_rate = effective_code_rate(e.tbs_bits, avail);
            if (e.code_rate > max_code_rate)
                throw DataError(where() + "derived code rate " + std::to_string(e.code_rate) + " exceeds 0.925");

            if (e.n_rb == n_rb)
                selected.emplace(e.mcs_index, e);
        }
        if (!have_header)
            throw DataError(path.string() + ": missing header row");
        if (selected.empty())
            throw DataError(path.string() + ": no " + std::string(to_string(mode)) + " rows for n_rb = " + std::to_string(n_rb));

        std::vector<McsEntry> out;
        out.reserve(selected.size());
        for (const auto &[idx, e] : selected)
            out.push_back(e);
        return out;
    }

    const McsEntry &find_mcs(const std::vector<McsEntry> &table, int mcs_index)
    {
        auto it = std::find_if(table.begin(), table.end(), [&](const McsEntry &e) { return e.mcs_index == mcs_index; });
        if (it == table.end())
            throw ConfigError("MCS " + std::to_string(mcs_index) + " is not in the bundled table");
        return *it;
    }
}
