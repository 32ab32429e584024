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

#include "embms/channel.hpp"

#include <Eigen/Core>

#include <complex>
#include <span>
#include <vector>

namespace embms::detector
{
    using cd = std::complex<double>;

    // Up to four layers and receive antennas without heap allocation.
    using Matrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 4>;
    using Vector = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, 8, 1>;

    struct DetectionOutput
    {
        std::vector<std::vector<cd>> symbols;       // [layer][re], bias-corrected
        std::vector<std::vector<double>> noise_var; // [layer][re], effective noise variance
        std::vector<std::vector<double>> sinr;      // [layer][re]

        int n_layers() const { return int(symbols.size()); }
    };

    /// Linear MMSE for y = sqrt(P) H x + n with unit-power layers x and noise CN(0, sigma2 I):
    ///   A = P H^H H + sigma2 I,  mu_k = 1 - sigma2 (A^-1)_kk,  SINR_k = mu_k / (1 - mu_k).
    /// The output of layer k is scaled by 1 / mu_k and carries noise variance 1 / SINR_k.
    /// Throws std::invalid_argument for negative sigma2 and std::domain_error when A is singular.
    void mmse_detect(const Vector &y, const Matrix &h, double sigma2, double layer_power, cd *z, double *var,
                     double *sinr);

    /// Whole-subframe MMSE detection. `received` is [rx][re].
    DetectionOutput mmse_detect(std::span<const std::vector<cd>> received, const channel::ChannelMatrices &h,
                                double sigma2, double layer_power = 1.0);

    /// Maximum-ratio combining z = h^H y / |h|^2 with variance sigma2 / |h|^2.
    /// Throws std::domain_error for an all-zero h.
    void mrc_combine(const Vector &y, const Vector &h, double sigma2, cd &z, double &var);

    /// Whole-subframe MRC of a single-layer channel. Throws std::invalid_argument unless n_tx = 1.
    DetectionOutput mrc_combine(std::span<const std::vector<cd>> received, const channel::ChannelMatrices &h,
                                double sigma2);

    /// MRC for one transmit layer, MMSE otherwise, with the realization's layer power.
    DetectionOutput detect(std::span<const std::vector<cd>> received, const channel::ChannelRealization &realization);
}
