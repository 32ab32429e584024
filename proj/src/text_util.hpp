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

// Small parsing helpers shared by the table loaders and the CSV writer.

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace embms::detail
{
    inline std::string_view trim(std::string_view s)
    {
        const auto ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    inline std::vector<std::string> split_csv(std::string_view line)
    {
        std::vector<std::string> out;
        size_t start = 0;
        while (true)
        {
            const auto pos = line.find(',', start);
            out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
            if (pos == std::string_view::npos)
                break;
            start = pos + 1;
        }
        return out;
    }

    inline long parse_int(std::string_view s)
    {
        long v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty())
            throw std::invalid_argument("not an integer: " + std::string(s));
        return v;
    }

    inline double parse_double(std::string_view s)
    {
        double v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty())
            throw std::invalid_argument("not a number: " + std::string(s));
        return v;
    }
}
