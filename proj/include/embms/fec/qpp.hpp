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
#include <map>
#include <vector>

namespace embms::fec
{
    /// Quadratic permutation polynomial parameters, indexed by block size.
    class QppTable
    {
    public:
        struct Params
        {
            int f1 = 0;
            int f2 = 0;
        };

        /// Loads the k,f1,f2 data file. Throws DataError when the file is missing, malformed,
        /// does not cover every valid block size, or a row is not a permutation.
        static QppTable load(const std::filesystem::path &path);

        Params params(int k) const; // throws std::invalid_argument for an unknown k

        /// pi(i) = (f1 i + f2 i^2) mod k; the interleaved sequence is c'_i = c_pi(i).
        const std::vector<int> &permutation(int k) const; // throws std::invalid_argument for an unknown k

    private:
        static std::vector<int> compute_permutation(int k, Params p);

        std::map<int, Params> params_;
        std::map<int, std::vector<int>> permutations_;
    };
}
