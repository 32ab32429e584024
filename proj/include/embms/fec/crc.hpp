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

#include <cstdint>

namespace embms::fec
{
    enum class CrcType
    {
        tb_24a, // transport block CRC, gCRC24A
        cb_24b  // code block CRC, gCRC24B
    };

    inline constexpr int crc_length = 24;

    // Generator polynomials without the x^24 term.
    inline constexpr std::uint32_t crc24a_poly = 0x864CFB;
    inline constexpr std::uint32_t crc24b_poly = 0x800063;

    /// 24-bit parity of `bits` (register starts at zero, no final inversion).
    std::uint32_t crc24(BitSpan bits, CrcType type);

    /// `bits` followed by its 24 parity bits, most significant first.
    Bits crc_attach(BitSpan bits, CrcType type);

    /// True iff the trailing 24 bits are the parity of the preceding ones. Requires size > 24.
    bool crc_check(BitSpan bits, CrcType type);
}
