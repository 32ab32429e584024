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

#include "doctest.h"
#include "test_util.hpp"

#include "embms/detector.hpp"

#include <Eigen/LU>
#include <cmath>

using namespace embms;
using namespace embms::detector;

namespace
{
    Matrix random_matrix(int rows, int cols, channel::Rng &rng)
    {
        Matrix h(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                h(r, c) = channel::complex_gaussian(rng);
        return h;
    }

    Vector random_vector(int n, channel::Rng &rng)
    {
        Vector v(n);
        for (int i = 0; i < n; ++i)
            v(i) = channel::complex_gaussian(rng);
        return v;
    }
}

TEST_SUITE("detector")
{
    TEST_CASE("identity channel")
    {
        for (double s2 : {0.01, 0.5, 2.0})
        {
            const Matrix h = Matrix::Identity(2, 2);
            Vector y(2);
            y << cd(0.3, -0.2), cd(-1.1, 0.4);
            cd z[2];
            double var[2], sinr[2];
            mmse_detect(y, h, s2, 1.0, z, var, sinr);
            for (int k = 0; k < 2; ++k)
            {
                CHECK(sinr[k] == doctest::Approx(1.0 / s2));
                CHECK(var[k] == doctest::Approx(s2));
                CHECK(std::abs(z[k] - y(k)) < 1e-12);
            }
        }
    }

    TEST_CASE("MMSE approaches zero forcing as noise vanishes")
    {
        channel::Rng rng(127);
        for (int rep = 0; rep < 20; ++rep)
            for (auto [nr, nt] : {std::pair{2, 2}, std::pair{4, 2}, std::pair{4, 4}})
            {
                const Matrix h = random_matrix(nr, nt, rng);
                const Vector y = random_vector(nr, rng);
                const double p = 1.0 / nt;
                const Matrix hh = h.adjoint() * h;
                const Vector zf = hh.inverse() * (h.adjoint() * y) / std::sqrt(p);
                cd z[4];
                double var[4], sinr[4];
                mmse_detect(y, h, 1e-12, p, z, var, sinr);
                for (int k = 0; k < nt; ++k)
                    CHECK(std::abs(z[k] - zf(k)) < 1e-6);
            }
    }

    TEST_CASE("SISO MMSE keeps the sign of matched filtering")
    {
        channel::Rng rng(131);
        for (int rep = 0; rep < 200; ++rep)
        {
            const Matrix h = random_matrix(1, 1, rng);
            const Vector y = random_vector(1, rng);
            cd z;
            double var, sinr;
            mmse_detect(y, h, 0.3, 1.0, &z, &var, &sinr);
            const cd mf = std::conj(h(0, 0)) * y(0);
            CHECK(std::signbit(z.real()) == std::signbit(mf.real()));
            CHECK(std::signbit(z.imag()) == std::signbit(mf.imag()));
            CHECK(sinr == doctest::Approx(std::norm(h(0, 0)) / 0.3));
        }
    }

    TEST_CASE("MRC closed form and equivalence with single-column MMSE")
    {
        Vector h(2), y(2);
        h << cd(1.0, 0.0), cd(0.0, 1.0);
        y << cd(2.0, 0.0), cd(0.0, 2.0);
        cd z;
        double var;
        mrc_combine(y, h, 0.4, z, var);
        CHECK(std::abs(z - cd(2.0, 0.0)) < 1e-12);
        CHECK(var == doctest::Approx(0.2));

        channel::Rng rng(137);
        for (int rep = 0; rep < 100; ++rep)
        {
            const Vector hv = random_vector(4, rng);
            const Vector yv = random_vector(4, rng);
            mrc_combine(yv, hv, 0.7, z, var);
            cd zm;
            double vm, sm;
            mmse_detect(yv, Matrix(hv), 0.7, 1.0, &zm, &vm, &sm);
            CHECK(std::abs(z - zm) < 1e-10);
            CHECK(var == doctest::Approx(vm));
            CHECK(sm == doctest::Approx(1.0 / var));
        }
        CHECK_THROWS_AS(mrc_combine(y, Vector::Zero(2), 0.1, z, var), std::domain_error);
    }

    TEST_CASE("SINR decreases with noise")
    {
        channel::Rng rng(139);
        const Matrix h = random_matrix(2, 2, rng);
        const Vector y = random_vector(2, rng);
        double last[2] = {INFINITY, INFINITY};
        for (double s2 = 1e-3; s2 < 100.0; s2 *= 2.0)
        {
            cd z[2];
            double var[2], sinr[2];
            mmse_detect(y, h, s2, 0.5, z, var, sinr);
            for (int k = 0; k < 2; ++k)
            {
                CHECK(sinr[k] < last[k]);
                CHECK(var[k] == doctest::Approx(1.0 / sinr[k]));
                last[k] = sinr[k];
            }
        }
    }

    TEST_CASE("invalid inputs")
    {
        Matrix h(2, 2);
        h << cd(1.0), cd(0.0), cd(1.0), cd(0.0);
        Vector y = Vector::Ones(2);
        cd z[2];
        double var[2], sinr[2];
        CHECK_THROWS_AS(mmse_detect(y, h, 0.0, 1.0, z, var, sinr), std::domain_error);
        CHECK_THROWS_AS(mmse_detect(y, h, -1.0, 1.0, z, var, sinr), std::invalid_argument);
        CHECK_NOTHROW(mmse_detect(y, h, 0.1, 1.0, z, var, sinr));
    }

    TEST_CASE("subframe detection dispatch")
    {
        channel::Rng rng(149);
        const int n = 64;
        std::vector<std::vector<cd>> layers(2, std::vector<cd>(n));
        for (auto &l : layers)
            for (auto &x : l)
                x = cd(rng() & 1u ? 0.7071067811865476 : -0.7071067811865476, 0.7071067811865476);

        const auto out = channel::apply_channel(layers, channel::draw_rayleigh(2, 2, n, rng), 200.0, rng);
        const auto det = detect(out.received, out.realization);
        REQUIRE(det.n_layers() == 2);
        for (int l = 0; l < 2; ++l)
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(det.symbols[size_t(l)][size_t(i)] - layers[size_t(l)][size_t(i)]) < 1e-6);

        std::vector<std::vector<cd>> single{layers[0]};
        const auto siso = channel::apply_channel(single, channel::draw_rayleigh(1, 2, n, rng), 10.0, rng);
        const auto a = detect(siso.received, siso.realization);
        const auto b = mrc_combine(siso.received, siso.realization.h, siso.realization.noise_var);
        CHECK(a.symbols == b.symbols);
        CHECK(a.noise_var == b.noise_var);
        CHECK_THROWS_AS(mrc_combine(out.received, out.realization.h, 0.1), std::invalid_argument);
    }
}
