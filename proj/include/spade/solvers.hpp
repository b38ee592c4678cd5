// SPDX-License-Identifier: Apache-2.0
//
// spade-declip: sparse audio declipping via scaled ADMM
// Copyright (C) 2026 The spade-declip authors
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

#include "spade/feasible_set.hpp"
#include "spade/frames.hpp"
#include "spade/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spade
{
    enum class Variant
    {
        ASpade,      ///< analysis SPADE
        SSpadeOrig,  ///< synthesis SPADE as originally published (coefficient-domain primal)
        SSpadeDR     ///< synthesis SPADE "done right" (time-domain constraint x = Dz)
    };

    inline std::string_view to_string(Variant v) noexcept
    {
        switch (v)
        {
            case Variant::ASpade: return "aspade";
            case Variant::SSpadeOrig: return "sspade";
            case Variant::SSpadeDR: return "sspade-dr";
        }
        return "?";
    }

    inline Variant parse_variant(std::string_view name)
    {
        if (name == "aspade" || name == "a-spade") return Variant::ASpade;
        if (name == "sspade" || name == "s-spade" || name == "sspade-orig") return Variant::SSpadeOrig;
        if (name == "sspade-dr" || name == "s-spade-dr") return Variant::SSpadeDR;
        throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
    }

    /// Sparsity projection used in the coefficient update.
    enum class Thresholding
    {
        /// Exact k-sparse projection within the conjugate-symmetric subspace
        /// that contains A x for every real x. Keeps all iterates in that
        /// subspace, which is what makes the unitary frame invertible.
        ConjugatePairs,
        /// Plain H_k on C^P.
        Plain
    };

    struct SolverParams
    {
        std::size_t s = 1;        ///< initial sparsity and increment
        std::size_t r = 1;        ///< iterations between sparsity increments
        double epsilon = 0.1;     ///< absolute l2 termination threshold
        std::size_t max_k = 0;    ///< sparsity cap; 0 means P
        Variant variant = Variant::ASpade;
        Thresholding thresholding = Thresholding::ConjugatePairs;

        std::size_t effective_max_k(std::size_t coeff_len) const noexcept { return max_k == 0 ? coeff_len : max_k; }

        void validate(std::size_t coeff_len) const
        {
            if (s < 1) throw std::invalid_argument("SolverParams: s must be >= 1");
            if (r < 1) throw std::invalid_argument("SolverParams: r must be >= 1");
            if (!(epsilon > 0.0)) throw std::invalid_argument("SolverParams: epsilon must be positive");
            if (max_k > coeff_len) throw std::invalid_argument("SolverParams: max_k must not exceed P");
        }
    };

    /// Iterates of one SPADE run. The dual variable lives in the domain of
    /// the variant's coupling constraint: `u` (C^P) for A-SPADE and the
    /// original S-SPADE, `u_time` (R^N) for S-SPADE done right.
    struct SolverState
    {
        Variant variant = Variant::ASpade;
        RealVector x_hat;
        ComplexVector z_hat;  // SSpadeOrig only
        ComplexVector z_bar;
        ComplexVector u;
        RealVector u_time;
        std::size_t k = 0;
        std::size_t i = 0;
        std::size_t iterations = 0;
        double residual = std::numeric_limits<double>::infinity();

        // SSpadeDR: errors of the thresholded f-update, both measured against x_hat - u
        // from before the step. time <= coef always (D is a contraction).
        double approx_time_error = 0.0;
        double approx_coef_error = 0.0;
    };

    struct SolveResult
    {
        RealVector x_restored;
        std::size_t iterations = 0;
        double final_residual = 0.0;
        std::size_t final_k = 0;
        bool converged = false;
    };

    inline std::size_t l0_norm(std::span<const Complex> v) noexcept
    {
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Complex &c) { return c != Complex{}; }));
    }

    /// Keeps the k largest-magnitude entries and zeroes the rest. Among equal
    /// magnitudes the lower index is kept first.
    inline ComplexVector hard_threshold(std::span<const Complex> s, std::size_t k)
    {
        const std::size_t p = s.size();
        if (k >= p) return ComplexVector(s.begin(), s.end());
        ComplexVector out(p, Complex{});
        if (k == 0) return out;

        std::vector<double> mag(p);
        for (std::size_t i = 0; i < p; ++i) mag[i] = std::norm(s[i]);
        std::vector<std::size_t> order(p);
        std::iota(order.begin(), order.end(), std::size_t{0});
        const auto before = [&](std::size_t a, std::size_t b) { return mag[a] > mag[b] || (mag[a] == mag[b] && a < b); };
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1), order.end(), before);
        for (std::size_t j = 0; j < k; ++j) out[order[j]] = s[order[j]];
        return out;
    }

    /// Orthogonal projection onto conjugate-symmetric vectors, c[j] == conj(c[(P - j) % P]).
    inline ComplexVector symmetrize_conjugate(std::span<const Complex> s)
    {
        const std::size_t p = s.size();
        ComplexVector out(p);
        for (std::size_t j = 0; j < p; ++j) out[j] = 0.5 * (s[j] + std::conj(s[(p - j) % p]));
        return out;
    }

    /// Nearest vector to s among conjugate-symmetric vectors with at most k
    /// nonzeros. A conjugate pair costs two nonzeros, the self-conjugate
    /// bins (0 and P/2) cost one. Ties go to the lower index.
    inline ComplexVector hard_threshold_conjugate(std::span<const Complex> s, std::size_t k)
    {
        const std::size_t p = s.size();
        auto sym = symmetrize_conjugate(s);
        if (k >= p) return sym;
        ComplexVector out(p, Complex{});
        if (k == 0 || p == 0) return out;

        std::vector<std::size_t> singles{0};
        if (p % 2 == 0) singles.push_back(p / 2);
        std::stable_sort(singles.begin(), singles.end(),
                         [&](std::size_t a, std::size_t b) { return std::norm(sym[a]) > std::norm(sym[b]); });

        // pair j covers {j, P - j}, 1 <= j < P - j
        std::vector<std::size_t> pairs;
        for (std::size_t j = 1; j < p - j; ++j) pairs.push_back(j);
        const auto pair_energy = [&](std::size_t j) { return 2.0 * std::norm(sym[j]); };
        std::stable_sort(pairs.begin(), pairs.end(),
                         [&](std::size_t a, std::size_t b) { return pair_energy(a) > pair_energy(b); });

        std::vector<double> pair_prefix(pairs.size() + 1, 0.0);
        for (std::size_t j = 0; j < pairs.size(); ++j) pair_prefix[j + 1] = pair_prefix[j] + pair_energy(pairs[j]);

        std::size_t best_singles = 0, best_pairs = 0;
        double best_energy = -1.0, single_energy = 0.0;
        for (std::size_t m = 0; m <= singles.size() && m <= k; ++m)
        {
            if (m > 0) single_energy += std::norm(sym[singles[m - 1]]);
            const std::size_t np = std::min((k - m) / 2, pairs.size());
            const double e = single_energy + pair_prefix[np];
            if (e > best_energy)
            {
                best_energy = e;
                best_singles = m;
                best_pairs = np;
            }
        }
        for (std::size_t m = 0; m < best_singles; ++m) out[singles[m]] = sym[singles[m]];
        for (std::size_t j = 0; j < best_pairs; ++j)
        {
            out[pairs[j]] = sym[pairs[j]];
            out[p - pairs[j]] = sym[p - pairs[j]];
        }
        return out;
    }

    inline ComplexVector sparsify(std::span<const Complex> s, std::size_t k, Thresholding rule)
    {
        return rule == Thresholding::ConjugatePairs ? hard_threshold_conjugate(s, k) : hard_threshold(s, k);
    }

    /// Initial iterates: x = y and u = 0 (z_hat = A y for the original S-SPADE).
    /// The iteration counter starts at 1 for A-SPADE / S-SPADE and at 0 for
    /// S-SPADE done right, as in the published algorithms.
    inline SolverState init_state(const ClipModel &model, const FrameOperator &op, const SolverParams &params)
    {
        if (model.size() != op.signal_len()) throw std::invalid_argument("init_state: model/frame size mismatch");
        params.validate(op.coeff_len());
        SolverState st;
        st.variant = params.variant;
        st.x_hat = model.y();
        st.k = params.s;
        switch (params.variant)
        {
            case Variant::ASpade:
                st.u.assign(op.coeff_len(), Complex{});
                st.i = 1;
                break;
            case Variant::SSpadeOrig:
                st.z_hat = op.analyze(model.y());
                st.u.assign(op.coeff_len(), Complex{});
                st.i = 1;
                break;
            case Variant::SSpadeDR:
                st.u_time.assign(op.signal_len(), 0.0);
                st.i = 0;
                break;
        }
        return st;
    }

    namespace detail
    {
        inline void check_dims(const SolverState &st, const ClipModel &model, const FrameOperator &op)
        {
            const auto n = op.signal_len(), p = op.coeff_len();
            bool ok = model.size() == n && st.x_hat.size() == n;
            switch (st.variant)
            {
                case Variant::ASpade: ok = ok && st.u.size() == p; break;
                case Variant::SSpadeOrig: ok = ok && st.u.size() == p && st.z_hat.size() == p; break;
                case Variant::SSpadeDR: ok = ok && st.u_time.size() == n; break;
            }
            if (!ok) throw std::invalid_argument("SPADE step: state dimensions do not match model/frame");
        }

        inline void advance_schedule(SolverState &st, const SolverParams &params)
        {
            ++st.i;
            if (st.i % params.r == 0) st.k += params.s;
        }
    }  // namespace detail

    /// One A-SPADE iteration.
    inline void aspade_step(SolverState &st, const ClipModel &model, const FrameOperator &op, const SolverParams &params)
    {
        detail::check_dims(st, model, op);
        const std::size_t p = op.coeff_len();

        auto ax = op.analyze(st.x_hat);
        ComplexVector v(p);
        for (std::size_t j = 0; j < p; ++j) v[j] = ax[j] + st.u[j];
        st.z_bar = sparsify(v, st.k, params.thresholding);

        for (std::size_t j = 0; j < p; ++j) v[j] = st.z_bar[j] - st.u[j];
        st.x_hat = project_gamma(op.synthesize(v), model);

        ax = op.analyze(st.x_hat);
        for (std::size_t j = 0; j < p; ++j) v[j] = ax[j] - st.z_bar[j];
        st.residual = norm2(v);
        ++st.iterations;
        if (st.residual > params.epsilon)
        {
            for (std::size_t j = 0; j < p; ++j) st.u[j] += v[j];
            detail::advance_schedule(st, params);
        }
    }

    /// One iteration of S-SPADE as originally published. It solves
    /// min ||z||_0 s.t. Dw in Gamma and ||w - z|| <= eps, which is not the
    /// synthesis formulation ||x - Dz|| <= eps; see sspade_dr_step.
    inline void sspade_orig_step(SolverState &st, const ClipModel &model, const FrameOperator &op,
                                 const SolverParams &params)
    {
        detail::check_dims(st, model, op);
        const std::size_t p = op.coeff_len();

        ComplexVector v(p);
        for (std::size_t j = 0; j < p; ++j) v[j] = st.z_hat[j] + st.u[j];
        st.z_bar = sparsify(v, st.k, params.thresholding);

        for (std::size_t j = 0; j < p; ++j) v[j] = st.z_bar[j] - st.u[j];
        st.z_hat = project_gamma_coef(v, model, op);
        // D z_hat is feasible up to rounding; the projection makes it exact
        st.x_hat = project_gamma(op.synthesize(st.z_hat), model);

        for (std::size_t j = 0; j < p; ++j) v[j] = st.z_hat[j] - st.z_bar[j];
        st.residual = norm2(v);
        ++st.iterations;
        if (st.residual > params.epsilon)
        {
            for (std::size_t j = 0; j < p; ++j) st.u[j] += v[j];
            detail::advance_schedule(st, params);
        }
    }

    /// One iteration of S-SPADE done right. The k-sparse f-update
    /// argmin ||Dz - (x - u)|| is approximated by H_k(A(x - u)); its
    /// time-domain error is bounded by the coefficient-domain error.
    inline void sspade_dr_step(SolverState &st, const ClipModel &model, const FrameOperator &op,
                               const SolverParams &params)
    {
        detail::check_dims(st, model, op);
        const std::size_t n = op.signal_len();

        RealVector target(n);
        for (std::size_t t = 0; t < n; ++t) target[t] = st.x_hat[t] - st.u_time[t];
        const auto coefs = op.analyze(target);
        st.z_bar = sparsify(coefs, st.k, params.thresholding);
        st.approx_coef_error = distance2<Complex>(st.z_bar, coefs);

        const auto dz = op.synthesize(st.z_bar);
        st.approx_time_error = distance2<double>(dz, target);

        RealVector w(n);
        for (std::size_t t = 0; t < n; ++t) w[t] = dz[t] + st.u_time[t];
        st.x_hat = project_gamma(w, model);

        for (std::size_t t = 0; t < n; ++t) w[t] = dz[t] - st.x_hat[t];
        st.residual = norm2(w);
        ++st.iterations;
        if (st.residual > params.epsilon)
        {
            for (std::size_t t = 0; t < n; ++t) st.u_time[t] += w[t];
            detail::advance_schedule(st, params);
        }
    }

    inline void spade_step(SolverState &st, const ClipModel &model, const FrameOperator &op, const SolverParams &params)
    {
        switch (st.variant)
        {
            case Variant::ASpade: aspade_step(st, model, op, params); break;
            case Variant::SSpadeOrig: sspade_orig_step(st, model, op, params); break;
            case Variant::SSpadeDR: sspade_dr_step(st, model, op, params); break;
        }
    }

    /// Runs the selected variant until the residual drops to epsilon or the
    /// sparsity schedule passes max_k. Without convergence the lowest-residual
    /// iterate is returned. The output is always projected onto Gamma, so
    /// reliable samples equal y bit for bit.
    inline SolveResult run_solver(const ClipModel &model, const FrameOperator &op, const SolverParams &params)
    {
        auto st = init_state(model, op, params);
        const std::size_t max_k = params.effective_max_k(op.coeff_len());

        SolveResult res;
        RealVector best;
        double best_residual = std::numeric_limits<double>::infinity();
        std::size_t best_k = st.k;
        for (;;)
        {
            const std::size_t k_used = st.k;
            spade_step(st, model, op, params);
            if (st.residual <= params.epsilon)
            {
                res.converged = true;
                best = st.x_hat;
                best_residual = st.residual;
                best_k = k_used;
                break;
            }
            if (st.residual < best_residual)
            {
                best = st.x_hat;
                best_residual = st.residual;
                best_k = k_used;
            }
            if (st.k > max_k) break;
        }
        res.x_restored = project_gamma(best, model);
        res.iterations = st.iterations;
        res.final_residual = best_residual;
        res.final_k = best_k;
        return res;
    }
}  // namespace spade
