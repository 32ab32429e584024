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

#include "embms/detector.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace embms::detector
{
    namespace
    {
        template <int NT>
        using RowBlock = Eigen::Map<
            const Eigen::Matrix<cd, Eigen::Dynamic, NT, NT == 1 ? Eigen::ColMajor : Eigen::RowMajor, 8, NT>>;

        // Fixed layer count lets Eigen unroll the Gram matrix, Cholesky and inverse.
        // `h` is the row-major n_rx x NT channel, `y` the n_rx received samples.
        template <int NT>
        void mmse_fixed(const cd *h, const cd *y, int n_rx, double sigma2, double layer_power, cd *z, double *var,
                        double *sinr)
        {
            using Gram = Eigen::Matrix<cd, NT, NT>;
            const RowBlock<NT> hm(h, n_rx, NT);
            const Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, 8, 1>> yv(y, n_rx);

            Gram a = layer_power * hm.adjoint().lazyProduct(hm);
            a.diagonal().array() += sigma2;

            Eigen::LLT<Gram> llt(a);
            if (llt.info() != Eigen::Success)
                throw std::domain_error("mmse_detect: singular regularized matrix");
            const Gram a_inv = llt.solve(Gram::Identity());
            const Eigen::Matrix<cd, NT, 1> w_y = std::sqrt(layer_power) * (a_inv * hm.adjoint().lazyProduct(yv));

            for (int k = 0; k < NT; ++k)
            {
                const double d = a_inv(k, k).real();
                const double mu = 1.0 - sigma2 * d;
                if (!(mu > 0.0) || !std::isfinite(d))
                    throw std::domain_error("mmse_detect: singular regularized matrix");
                z[k] = w_y(k) / mu;
                var[k] = sigma2 * d / mu;
                sinr[k] = (sigma2 * d > 0.0) ? mu / (sigma2 * d) : INFINITY;
            }
        }

        using Kernel = void (*)(const cd *, const cd *, int, double, double, cd *, double *, double *);

        Kernel kernel_for(Eigen::Index n_tx)
        {
            switch (n_tx)
            {
            case 1:
                return mmse_fixed<1>;
            case 2:
                return mmse_fixed<2>;
            case 3:
                return mmse_fixed<3>;
            default:
                return mmse_fixed<4>;
            }
        }
    }

    void mmse_detect(const Vector &y, const Matrix &h, double sigma2, double layer_power, cd *z, double *var,
                     double *sinr)
    {
        if (sigma2 < 0.0)
            throw std::invalid_argument("mmse_detect: negative noise variance");
        if (h.rows() != y.rows() || h.cols() < 1 || h.cols() > h.rows())
            throw std::invalid_argument("mmse_detect: dimension mismatch");
        Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, 8, 4> row_major = h;
        kernel_for(h.cols())(row_major.data(), y.data(), int(h.rows()), sigma2, layer_power, z, var, sinr);
    }

    namespace
    {
        DetectionOutput sized(int layers, int n_re)
        {
            DetectionOutput o;
            o.symbols.assign(size_t(layers), std::vector<cd>(size_t(n_re)));
            o.noise_var.assign(size_t(layers), std::vector<double>(size_t(n_re)));
            o.sinr.assign(size_t(layers), std::vector<double>(size_t(n_re)));
            return o;
        }

        void check_dims(std::span<const std::vector<cd>> received, const channel::ChannelMatrices &h)
        {
            if (int(received.size()) != h.n_rx())
                throw std::invalid_argument("detector: receive antenna count mismatch");
            for (const auto &r : received)
                if (int(r.size()) != h.n_re())
                    throw std::invalid_argument("detector: received length differs from channel RE count");
        }
    }

    DetectionOutput mmse_detect(std::span<const std::vector<cd>> received, const channel::ChannelMatrices &h,
                                double sigma2, double layer_power)
    {
        check_dims(received, h);
        const int nt = h.n_tx(), nr = h.n_rx(), n_re = h.n_re();
        auto out = sized(nt, n_re);
        if (sigma2 < 0.0)
            throw std::invalid_argument("mmse_detect: negative noise variance");
        if (nt < 1 || nt > 4 || nt > nr || nr > 8)
            throw std::invalid_argument("mmse_detect: unsupported antenna configuration");
        const Kernel kernel = kernel_for(nt);
        cd y[8], z[4];
        double var[4], sinr[4];
        for (int re = 0; re < n_re; ++re)
        {
            for (int r = 0; r < nr; ++r)
                y[r] = received[size_t(r)][size_t(re)];
            kernel(h.matrix(re).data(), y, nr, sigma2, layer_power, z, var, sinr);
            for (int t = 0; t < nt; ++t)
            {
                out.symbols[size_t(t)][size_t(re)] = z[t];
                out.noise_var[size_t(t)][size_t(re)] = var[t];
                out.sinr[size_t(t)][size_t(re)] = sinr[t];
            }
        }
        return out;
    }

    void mrc_combine(const Vector &y, const Vector &h, double sigma2, cd &z, double &var)
    {
        const double e = h.squaredNorm();
        if (!(e > 0.0))
            throw std::domain_error("mrc_combine: zero channel vector");
        z = h.dot(y) / e; // dot conjugates the first argument
        var = sigma2 / e;
    }

    DetectionOutput mrc_combine(std::span<const std::vector<cd>> received, const channel::ChannelMatrices &h,
                                double sigma2)
    {
        check_dims(received, h);
        if (h.n_tx() != 1)
            throw std::invalid_argument("mrc_combine: single transmit layer required");
        const int nr = h.n_rx(), n_re = h.n_re();
        auto out = sized(1, n_re);
        Vector y(nr), hv(nr);
        for (int re = 0; re < n_re; ++re)
        {
            for (int r = 0; r < nr; ++r)
            {
                y(r) = received[size_t(r)][size_t(re)];
                hv(r) = h.at(re, r, 0);
            }
            cd z;
            double var;
            mrc_combine(y, hv, sigma2, z, var);
            out.symbols[0][size_t(re)] = z;
            out.noise_var[0][size_t(re)] = var;
            out.sinr[0][size_t(re)] = var > 0.0 ? 1.0 / var : INFINITY;
        }
        return out;
    }

    DetectionOutput detect(std::span<const std::vector<cd>> received, const channel::ChannelRealization &realization)
    {
        if (realization.h.n_tx() == 1)
        {
            return mrc_combine(received, realization.h, realization.noise_var);
        }
        return mmse_detect(received, realization.h, realization.noise_var, realization.layer_power);
    }
}
