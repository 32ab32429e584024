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
#include "embms/data_tables.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testutil
{
    inline const embms::DataTables &tables()
    {
        static const embms::DataTables t = embms::DataTables::load();
        return t;
    }

    inline embms::Bits random_bits(size_t n, std::mt19937_64 &rng)
    {
        embms::Bits b(n);
        for (auto &x : b)
            x = std::uint8_t(rng() & 1u);
        return b;
    }

    // Writes `content` to a fresh file under the system temp directory.
    inline std::filesystem::path temp_file(const std::string &name, const std::string &content)
    {
        const auto dir = std::filesystem::temp_directory_path() / "embms_tests";
        std::filesystem::create_directories(dir);
        const auto p = dir / name;
        std::ofstream(p) << content;
        return p;
    }
}
