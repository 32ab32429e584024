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

#include "embms/fec/crc.hpp"

#include <array>
#include <stdexcept>

namespace embms::fec
{
    namespace
    {
        using Table = std::array<std::uint32_t, 256>;

        constexpr Table make_table(std::uint32_t poly)
        {
            Table t{};
            for (std::uint32_t byte = 0; byte < 256; ++byte)
            {
                std::uint32_t reg = byte << 16;
                for (int i = 0; i < 8; ++i)
                    reg = (reg & 0x800000) ? ((reg << 1) ^ poly) & 0xFFFFFF : (reg << 1) & 0xFFFFFF;
                t[byte] = reg;
            }
            return t;
        }

        constexpr Table table_24a = make_table(crc24a_poly);
        constexpr Table table_24b = make_table(crc24b_poly);
    }

    std::uint32_t crc24(BitSpan bits, CrcType type)
    {
        const Table &table = type == CrcType::tb_24a ? table_24a : table_24b;
        const std::uint32_t poly = type == CrcType::tb_24a ? crc24a_poly : crc24b_poly;

        std::uint32_t reg = 0;
        size_t i = 0;
        for (; i + 8 <= bits.size(); i += 8)
        {
            std::uint32_t byte = 0;
            for (size_t j = 0; j < 8; ++j)
                byte = (byte << 1) | (bits[i + j] & 1u);
            reg = ((reg << 8) & 0xFFFFFF) ^ table[((reg >> 16) ^ byte) & 0xFF];
        }
        for (; i < bits.size(); ++i)
        {
            const std::uint32_t fb = ((reg >> 23) ^ bits[i]) & 1u;
            reg = (reg << 1) & 0xFFFFFF;
            if (fb)
                reg ^= poly;
        }
        return reg;
    }

    Bits crc_attach(BitSpan bits, CrcType type)
    {
        if (bits.empty())
            throw std::invalid_argument("crc_attach: empty input");
        Bits out(bits.begin(), bits.end());
        const std::uint32_t parity = crc24(bits, type);
        for (int i = crc_length - 1; i >= 0; --i)
            out.push_back(std::uint8_t((parity >> i) & 1u));
        return out;
    }

    bool crc_check(BitSpan bits, CrcType type)
    {
        if (bits.size() <= size_t(crc_length))
            throw std::invalid_argument("crc_check: input must be longer than the CRC");
        return crc24(bits, type) == 0;
    }
}
