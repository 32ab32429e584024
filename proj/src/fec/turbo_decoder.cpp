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

#include "embms/fec/turbo.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <stdexcept>
#include <utility>

namespace embms::fec
{
    namespace
    {
        constexpr int n_states = 8;
        constexpr float neg_inf = -1.0e30f;

        // State s = s1 << 2 | s2 << 1 | s3 with s1 the most recent register.
        struct Trellis
        {
            int next[n_states][2];
            float sign_par[n_states][2]; // +1 for parity 0, -1 for parity 1
            // Gather form: the two branches entering state n.
            int pred[2][n_states];
            float pred_sign_sys[2][n_states];
            float pred_sign_par[2][n_states];
            int tail_next[n_states];
            float tail_sign_sys[n_states];
            float tail_sign_par[n_states];
        };

        constexpr Trellis make_trellis()
        {
            Trellis t{};
            int filled[n_states] = {};
            for (int s = 0; s < n_states; ++s)
            {
                const int s1 = (s >> 2) & 1, s2 = (s >> 1) & 1, s3 = s & 1;
                for (int u = 0; u < 2; ++u)
                {
                    const int a = u ^ s2 ^ s3;
                    const int p = a ^ s1 ^ s3;
                    const int n = (a << 2) | (s1 << 1) | s2;
                    t.next[s][u] = n;
                    t.sign_par[s][u] = p ? -1.0f : 1.0f;
                    const int j = filled[n]++;
                    t.pred[j][n] = s;
                    t.pred_sign_sys[j][n] = u ? -1.0f : 1.0f;
                    t.pred_sign_par[j][n] = p ? -1.0f : 1.0f;
                }
                t.tail_next[s] = (s1 << 1) | s2;
                t.tail_sign_sys[s] = (s2 ^ s3) ? -1.0f : 1.0f;
                t.tail_sign_par[s] = (s1 ^ s3) ? -1.0f : 1.0f;
            }
            return t;
        }

        constexpr Trellis trellis = make_trellis();

        using Metrics = std::array<float, n_states>;

        // f(integral_constant<0>) ... f(integral_constant<7>), so table lookups fold to constants.
        template <typename F>
        inline void unrolled(F &&f)
        {
            [&]<size_t... S>(std::index_sequence<S...>) {
                (f(std::integral_constant<size_t, S>{}), ...);
            }(std::make_index_sequence<n_states>{});
        }

        // Metric differences are all that matter; pinning state 0 keeps values bounded.
        inline void normalise(Metrics &m)
        {
            const float ref = m[0];
            for (float &v : m)
                v -= ref;
        }

        // Max-log soft-in/soft-out decoder for one constituent code.
        // sys/par/apri have k entries; tail_sys/tail_par hold the three termination steps.
        // Writes extrinsic information to ext and, when post != nullptr, the a-posteriori LLR.
        [[maybe_unused]] void siso(const float *sys, const float *par, const float *apri, int k, const float *tail_sys,
                  const float *tail_par, float *ext, float *post, std::vector<Metrics> &alpha)
        {
            alpha.resize(size_t(k) + 1);
            alpha[0].fill(neg_inf);
            alpha[0][0] = 0.0f;

            for (int i = 0; i < k; ++i)
            {
                const float a = 0.5f * (sys[i] + apri[i]);
                const float b = 0.5f * par[i];
                const Metrics &cur = alpha[size_t(i)];
                Metrics &nxt = alpha[size_t(i) + 1];
                unrolled([&](auto n) {
                    const float m0 = cur[trellis.pred[0][n]] + trellis.pred_sign_sys[0][n] * a +
                                     trellis.pred_sign_par[0][n] * b;
                    const float m1 = cur[trellis.pred[1][n]] + trellis.pred_sign_sys[1][n] * a +
                                     trellis.pred_sign_par[1][n] * b;
                    nxt[n] = std::max(m0, m1);
                });
                normalise(nxt);
            }

            Metrics beta;
            beta.fill(neg_inf);
            beta[0] = 0.0f;
            for (int t = 2; t >= 0; --t)
            {
                Metrics prev;
                for (int s = 0; s < n_states; ++s)
                    prev[size_t(s)] = beta[size_t(trellis.tail_next[s])] +
                                      0.5f * (trellis.tail_sign_sys[s] * tail_sys[t] + trellis.tail_sign_par[s] * tail_par[t]);
                beta = prev;
            }
            normalise(beta);

            for (int i = k - 1; i >= 0; --i)
            {
                const float a = 0.5f * (sys[i] + apri[i]);
                const float b = 0.5f * par[i];
                const Metrics &al = alpha[size_t(i)];
                Metrics prev;
                float best0 = neg_inf, best1 = neg_inf;
                unrolled([&](auto s) {
                    const float m0 = a + trellis.sign_par[s][0] * b + beta[trellis.next[s][0]];
                    const float m1 = -a + trellis.sign_par[s][1] * b + beta[trellis.next[s][1]];
                    prev[s] = std::max(m0, m1);
                    best0 = std::max(best0, al[s] + m0);
                    best1 = std::max(best1, al[s] + m1);
                });
                const float llr = best0 - best1;
                ext[i] = llr - sys[i] - apri[i];
                if (post)
                    post[i] = llr;
                normalise(prev);
                beta = prev;
            }
        }

#if defined(__GNUC__) && !defined(__clang__)
#define EMBMS_VECTOR_SISO 1
#pragma GCC diagnostic ignored "-Wpsabi"
        // Same recursion with all eight states in one GCC vector.
        typedef float v8f __attribute__((vector_size(32)));
        typedef int v8i __attribute__((vector_size(32)));

#define EMBMS_LANES(expr)                                                                                            \
    {                                                                                                                \
        expr(0), expr(1), expr(2), expr(3), expr(4), expr(5), expr(6), expr(7)                                       \
    }
#define P0(s) trellis.pred[0][s]
#define P1(s) trellis.pred[1][s]
#define PSS0(s) trellis.pred_sign_sys[0][s]
#define PSS1(s) trellis.pred_sign_sys[1][s]
#define PSP0(s) trellis.pred_sign_par[0][s]
#define PSP1(s) trellis.pred_sign_par[1][s]
#define N0(s) trellis.next[s][0]
#define N1(s) trellis.next[s][1]
#define SP0(s) trellis.sign_par[s][0]
#define SP1(s) trellis.sign_par[s][1]
#define TN(s) trellis.tail_next[s]
#define TS(s) trellis.tail_sign_sys[s]
#define TP(s) trellis.tail_sign_par[s]

        constexpr v8i v_pred0 = EMBMS_LANES(P0), v_pred1 = EMBMS_LANES(P1);
        constexpr v8f v_pss0 = EMBMS_LANES(PSS0), v_pss1 = EMBMS_LANES(PSS1);
        constexpr v8f v_psp0 = EMBMS_LANES(PSP0), v_psp1 = EMBMS_LANES(PSP1);
        constexpr v8i v_next0 = EMBMS_LANES(N0), v_next1 = EMBMS_LANES(N1);
        constexpr v8f v_sp0 = EMBMS_LANES(SP0), v_sp1 = EMBMS_LANES(SP1);
        constexpr v8i v_tnext = EMBMS_LANES(TN);
        constexpr v8f v_ts = EMBMS_LANES(TS), v_tp = EMBMS_LANES(TP);

#undef P0
#undef P1
#undef PSS0
#undef PSS1
#undef PSP0
#undef PSP1
#undef N0
#undef N1
#undef SP0
#undef SP1
#undef TN
#undef TS
#undef TP
#undef EMBMS_LANES

        [[gnu::always_inline]] inline v8f vmax(v8f a, v8f b)
        {
            return a > b ? a : b;
        }

        [[gnu::always_inline]] inline float hmax(v8f v)
        {
            v = vmax(v, __builtin_shuffle(v, v8i{4, 5, 6, 7, 0, 1, 2, 3}));
            v = vmax(v, __builtin_shuffle(v, v8i{2, 3, 0, 1, 6, 7, 4, 5}));
            v = vmax(v, __builtin_shuffle(v, v8i{1, 0, 3, 2, 5, 4, 7, 6}));
            return v[0];
        }

        [[gnu::always_inline]] inline v8f splat(float x)
        {
            return v8f{} + x;
        }

        // Metrics grow by at most a few hundred per step, so renormalising every 32 steps is safe in float.
        constexpr int renorm_period = 32;

        [[gnu::target_clones("avx2", "default")]] void siso_vec(const float *sys, const float *par, const float *apri, int k, const float *tail_sys,
                      const float *tail_par, float *ext, float *post, std::vector<Metrics> &alpha)
        {
            alpha.resize(size_t(k) + 1);
            v8f cur = splat(neg_inf);
            cur[0] = 0.0f;
            std::memcpy(alpha[0].data(), &cur, sizeof cur);
            for (int i = 0; i < k; ++i)
            {
                const v8f a = splat(0.5f * (sys[i] + apri[i]));
                const v8f b = splat(0.5f * par[i]);
                const v8f m0 = __builtin_shuffle(cur, v_pred0) + v_pss0 * a + v_psp0 * b;
                const v8f m1 = __builtin_shuffle(cur, v_pred1) + v_pss1 * a + v_psp1 * b;
                cur = vmax(m0, m1);
                if ((i & (renorm_period - 1)) == renorm_period - 1)
                    cur -= splat(cur[0]);
                std::memcpy(alpha[size_t(i) + 1].data(), &cur, sizeof cur);
            }

            v8f beta = splat(neg_inf);
            beta[0] = 0.0f;
            for (int t = 2; t >= 0; --t)
                beta = __builtin_shuffle(beta, v_tnext) + 0.5f * (v_ts * tail_sys[t] + v_tp * tail_par[t]);
            beta -= splat(beta[0]);

            for (int i = k - 1; i >= 0; --i)
            {
                const v8f a = splat(0.5f * (sys[i] + apri[i]));
                const v8f b = splat(0.5f * par[i]);
                const v8f m0 = a + v_sp0 * b + __builtin_shuffle(beta, v_next0);
                const v8f m1 = v_sp1 * b - a + __builtin_shuffle(beta, v_next1);
                v8f al;
                std::memcpy(&al, alpha[size_t(i)].data(), sizeof al);
                const float llr = hmax(al + m0) - hmax(al + m1);
                ext[i] = llr - sys[i] - apri[i];
                if (post)
                    post[i] = llr;
                beta = vmax(m0, m1);
                if ((i & (renorm_period - 1)) == 0)
                    beta -= splat(beta[0]);
            }
        }
#endif

        inline float clamp(float v, float limit)
        {
            return std::clamp(v, -limit, limit);
        }
    }

    TurboDecoder::TurboDecoder(const QppTable &qpp, TurboDecoderConfig config) : qpp_(&qpp), config_(config)
    {
        if (config_.max_iterations < 1)
            throw std::invalid_argument("TurboDecoder: max_iterations must be >= 1");
        if (!(config_.llr_clamp > 0.0f))
            throw std::invalid_argument("TurboDecoder: llr_clamp must be positive");
    }

    TurboDecodeResult TurboDecoder::decode(const SoftBuffer &soft, int filler_count, std::optional<CrcType> crc) const
    {
        const int k = soft.k;
        if (!valid_interleaver_size(k))
            throw std::invalid_argument("turbo_decode: invalid block size " + std::to_string(k));
        const int d = k + 4;
        if (soft.llr.size() != size_t(3 * d))
            throw std::invalid_argument("turbo_decode: soft buffer must hold 3k + 12 values");
        if (filler_count < 0 || filler_count >= k)
            throw std::invalid_argument("turbo_decode: bad filler count");

        const float lim = config_.llr_clamp;
        const float *d0 = soft.llr.data();
        const float *d1 = d0 + d;
        const float *d2 = d1 + d;

        std::vector<float> sys1(static_cast<size_t>(k)), par1(static_cast<size_t>(k)), sys2(static_cast<size_t>(k)), par2(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
        {
            sys1[size_t(i)] = clamp(d0[i], lim);
            par1[size_t(i)] = clamp(d1[i], lim);
            par2[size_t(i)] = clamp(d2[i], lim);
        }
        // Fillers are known zeros; their first-encoder parity is zero as well.
        for (int i = 0; i < filler_count; ++i)
            sys1[size_t(i)] = par1[size_t(i)] = lim;

        const float tail_sys1[3] = {clamp(d0[k], lim), clamp(d2[k], lim), clamp(d1[k + 1], lim)};
        const float tail_par1[3] = {clamp(d1[k], lim), clamp(d0[k + 1], lim), clamp(d2[k + 1], lim)};
        const float tail_sys2[3] = {clamp(d0[k + 2], lim), clamp(d2[k + 2], lim), clamp(d1[k + 3], lim)};
        const float tail_par2[3] = {clamp(d1[k + 2], lim), clamp(d0[k + 3], lim), clamp(d2[k + 3], lim)};

        const std::vector<int> &pi = qpp_->permutation(k);
        for (int i = 0; i < k; ++i)
            sys2[size_t(i)] = sys1[size_t(pi[size_t(i)])];

        std::vector<float> apri1(static_cast<size_t>(k), 0.0f), apri2(static_cast<size_t>(k)), ext(static_cast<size_t>(k)), post(static_cast<size_t>(k));
        std::vector<Metrics> alpha;
#ifdef EMBMS_VECTOR_SISO
        const auto run = siso_vec;
#else
        const auto run = siso;
#endif

        TurboDecodeResult result;
        result.bits.assign(size_t(k), 0);
        const float scale = config_.extrinsic_scale;

        for (int it = 1; it <= config_.max_iterations; ++it)
        {
            run(sys1.data(), par1.data(), apri1.data(), k, tail_sys1, tail_par1, ext.data(), nullptr, alpha);
            for (int i = 0; i < k; ++i)
                apri2[size_t(i)] = clamp(scale * ext[size_t(pi[size_t(i)])], lim);

            run(sys2.data(), par2.data(), apri2.data(), k, tail_sys2, tail_par2, ext.data(), post.data(), alpha);
            for (int i = 0; i < k; ++i)
            {
                const size_t j = size_t(pi[size_t(i)]);
                apri1[j] = clamp(scale * ext[size_t(i)], lim);
                // Ties resolve to 1 so a pure erasure never reads back as the all-zero codeword.
                result.bits[j] = post[size_t(i)] > 0.0f ? 0 : 1;
            }
            for (int i = 0; i < filler_count; ++i)
                result.bits[size_t(i)] = 0;
            result.iterations = it;

            if (crc && crc24(BitSpan(result.bits).subspan(size_t(filler_count)), *crc) == 0)
            {
                result.converged = true;
                break;
            }
        }
        return result;
    }
}
