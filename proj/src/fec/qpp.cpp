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

#include "embms/fec/qpp.hpp"

#include "embms/errors.hpp"
#include "embms/fec/segmentation.hpp"
#include "../text_util.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace embms::fec
{
    QppTable QppTable::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw DataError("cannot open QPP table " + path.string());

        QppTable table;
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
                if (f != std::vector<std::string>{"k", "f1", "f2"})
                    throw DataError(where + "expected header row k,f1,f2");
                have_header = true;
                continue;
            }
            if (f.size() != 3)
                throw DataError(where + "expected 3 columns");
            int k, f1, f2;
            try
            {
                k = int(detail::parse_int(f[0]));
                f1 = int(detail::parse_int(f[1]));
                f2 = int(detail::parse_int(f[2]));
            }
            catch (const std::exception &)
            {
                throw DataError(where + "malformed integer field");
            }
            if (!valid_interleaver_size(k))
                throw DataError(where + "k = " + std::to_string(k) + " is not a turbo interleaver size");
            if (!table.params_.emplace(k, Params{f1, f2}).second)
                throw DataError(where + "duplicate k");

            std::vector<int> pi = compute_permutation(k, Params{f1, f2});
            std::vector<char> hit(static_cast<size_t>(k), 0);
            for (int i : pi)
            {
                if (hit[size_t(i)])
                    throw DataError(where + "parameters do not define a permutation");
                hit[size_t(i)] = 1;
            }
            table.permutations_.emplace(k, std::move(pi));
        }
        if (!have_header)
            throw DataError(path.string() + ": missing header row");
        for (int k : interleaver_sizes())
            if (!table.params_.count(k))
                throw DataError(path.string() + ": no entry for k = " + std::to_string(k));
        return table;
    }

    QppTable::Params QppTable::params(int k) const
    {
        auto it = params_.find(k);
        if (it == params_.end())
            throw std::invalid_argument("QPP: invalid interleaver size " + std::to_string(k));
        return it->second;
    }

    const std::vector<int> &QppTable::permutation(int k) const
    {
        auto it = permutations_.find(k);
        if (it == permutations_.end())
            throw std::invalid_argument("QPP: invalid interleaver size " + std::to_string(k));
        return it->second;
    }

    std::vector<int> QppTable::compute_permutation(int k, Params p)
    {
        std::vector<int> pi(static_cast<size_t>(k));
        // Incremental form avoids overflow: pi(i+1) = pi(i) + g(i), g(i+1) = g(i) + 2 f2 (mod k).
        long long value = 0;
        long long step = (p.f1 + p.f2) % k;
        const long long step_inc = (2LL * p.f2) % k;
        for (int i = 0; i < k; ++i)
        {
            pi[size_t(i)] = int(value);
            value = (value + step) % k;
            step = (step + step_inc) % k;
        }
        return pi;
    }
}
