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
#include "spade/solvers.hpp"
#include "spade/synthetic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace spade::verify
{
    struct OracleConfig
    {
        std::size_t n_trials = 100;
        std::uint64_t seed = 20190417;
        double tol_strict = 1e-12;
        double tol_numeric = 1e-9;

        void validate() const
        {
            if (n_trials == 0) throw std::invalid_argument("OracleConfig: n_trials must be positive");
            if (!(tol_strict > 0.0) || !(tol_numeric > 0.0) || tol_strict > tol_numeric)
                throw std::invalid_argument("OracleConfig: need 0 < tol_strict <= tol_numeric");
        }
    };

    /// Outcome of one oracle family.
    struct CheckReport
    {
        std::string name;
        bool passed = false;
        double worst = 0.0;      ///< largest observed deviation (or violation count)
        double tolerance = 0.0;
        std::size_t cases = 0;
        std::string detail;
    };

    using Rng = std::mt19937_64;

    inline RealVector random_real(Rng &rng, std::size_t n, double scale = 1.0)
    {
        std::normal_distribution<double> g(0.0, scale);
        RealVector v(n);
        for (auto &x : v) x = g(rng);
        return v;
    }

    inline ComplexVector random_complex(Rng &rng, std::size_t n, double scale = 1.0)
    {
        std::normal_distribution<double> g(0.0, scale);
        ComplexVector v(n);
        for (auto &c : v) c = Complex(g(rng), g(rng));
        return v;
    }

    // ----------------------------------------------------------------------
    // Dense reference frame. Built from the DFT definition, not from FFTW.

    inline constexpr std::size_t kMaxDenseSignal = 16;

    /// P x N analysis matrix, entries exp(-2 pi i p n / P) / sqrt(P).
    inline Eigen::MatrixXcd dense_analysis_matrix(std::size_t signal_len, std::size_t coeff_len)
    {
        if (signal_len == 0 || coeff_len < signal_len) throw std::invalid_argument("dense_analysis_matrix: bad sizes");
        if (signal_len > kMaxDenseSignal) throw std::invalid_argument("dense_analysis_matrix: N > 16 not supported");
        Eigen::MatrixXcd a(static_cast<Eigen::Index>(coeff_len), static_cast<Eigen::Index>(signal_len));
        const double scale = 1.0 / std::sqrt(static_cast<double>(coeff_len));
        for (std::size_t p = 0; p < coeff_len; ++p)
            for (std::size_t n = 0; n < signal_len; ++n)
            {
                const double phase = -2.0 * std::numbers::pi * static_cast<double>((p * n) % coeff_len) /
                                     static_cast<double>(coeff_len);
                a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n)) = std::polar(scale, phase);
            }
        return a;
    }

    /// N x P synthesis dictionary D = A^H; synthesis of z is Re(D z).
    inline Eigen::MatrixXcd dense_synthesis_matrix(std::size_t signal_len, std::size_t coeff_len)
    {
        return dense_analysis_matrix(signal_len, coeff_len).adjoint();
    }

    inline RealVector dense_synthesize(const Eigen::MatrixXcd &dictionary, std::span<const Complex> z)
    {
        Eigen::VectorXcd zv(static_cast<Eigen::Index>(z.size()));
        for (std::size_t j = 0; j < z.size(); ++j) zv(static_cast<Eigen::Index>(j)) = z[j];
        const Eigen::VectorXcd dz = dictionary * zv;
        RealVector out(static_cast<std::size_t>(dz.size()));
        for (Eigen::Index n = 0; n < dz.size(); ++n) out[static_cast<std::size_t>(n)] = dz(n).real();
        return out;
    }

    // ----------------------------------------------------------------------
    // Exhaustive sparse least squares.

    struct SparseLsSolution
    {
        std::vector<std::size_t> support;
        ComplexVector coeffs;
        double objective = 0.0;  ///< ||Re(D z) - target||_2^2
    };

    inline constexpr std::size_t kMaxBruteForceAtoms = 14;
    inline constexpr std::size_t kMaxBruteForceSparsity = 3;

    /// min ||Re(D z) - target||^2 over complex z with ||z||_0 <= k, by trying
    /// every support of size min(k, P) and solving the real least-squares
    /// problem in (Re z_S, Im z_S).
    inline SparseLsSolution brute_force_sparse_ls(const Eigen::MatrixXcd &dictionary, std::span<const double> target,
                                                  std::size_t k)
    {
        const auto n = static_cast<std::size_t>(dictionary.rows());
        const auto p = static_cast<std::size_t>(dictionary.cols());
        if (target.size() != n) throw std::invalid_argument("brute_force_sparse_ls: target length mismatch");
        if (p > kMaxBruteForceAtoms || k > kMaxBruteForceSparsity)
            throw std::invalid_argument("brute_force_sparse_ls: requires P <= 14 and k <= 3");

        Eigen::VectorXd x(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = target[i];

        SparseLsSolution best;
        best.coeffs.assign(p, Complex{});
        best.objective = x.squaredNorm();
        const std::size_t size = std::min(k, p);
        if (size == 0) return best;

        std::vector<std::size_t> support(size);
        std::function<void(std::size_t, std::size_t)> enumerate = [&](std::size_t pos, std::size_t first) {
            if (pos == size)
            {
                Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(2 * size));
                for (std::size_t j = 0; j < size; ++j)
                {
                    const auto col = dictionary.col(static_cast<Eigen::Index>(support[j]));
                    m.col(static_cast<Eigen::Index>(2 * j)) = col.real();
                    m.col(static_cast<Eigen::Index>(2 * j + 1)) = -col.imag();
                }
                const Eigen::VectorXd w = m.completeOrthogonalDecomposition().solve(x);
                const double obj = (m * w - x).squaredNorm();
                if (obj < best.objective)
                {
                    best.objective = obj;
                    best.support = support;
                    best.coeffs.assign(p, Complex{});
                    for (std::size_t j = 0; j < size; ++j)
                        best.coeffs[support[j]] =
                            Complex(w(static_cast<Eigen::Index>(2 * j)), w(static_cast<Eigen::Index>(2 * j + 1)));
                }
                return;
            }
            for (std::size_t idx = first; idx + (size - pos) <= p; ++idx)
            {
                support[pos] = idx;
                enumerate(pos + 1, idx + 1);
            }
        };
        enumerate(0, 0);
        return best;
    }

    /// min ||z - s||^2 over all supports of size <= k (plain complex H_k oracle).
    inline double brute_force_threshold_objective(std::span<const Complex> s, std::size_t k)
    {
        const std::size_t p = s.size();
        const std::size_t size = std::min(k, p);
        double total = 0.0;
        for (const auto &c : s) total += std::norm(c);
        double best = total;
        std::vector<std::size_t> support(size);
        std::function<void(std::size_t, std::size_t)> enumerate = [&](std::size_t pos, std::size_t first) {
            if (pos == size)
            {
                double kept = 0.0;
                for (auto j : support) kept += std::norm(s[j]);
                best = std::min(best, total - kept);
                return;
            }
            for (std::size_t idx = first; idx + (size - pos) <= p; ++idx)
            {
                support[pos] = idx;
                enumerate(pos + 1, idx + 1);
            }
        };
        if (size > 0) enumerate(0, 0);
        return best;
    }

    /// Same objective restricted to conjugate-symmetric z; enumerates every
    /// subset of conjugate atoms whose nonzero count fits in k.
    inline double brute_force_conjugate_threshold_objective(std::span<const Complex> s, std::size_t k)
    {
        const std::size_t p = s.size();
        std::vector<std::vector<std::size_t>> atoms;
        for (std::size_t j = 0; j < p; ++j)
        {
            const std::size_t partner = (p - j) % p;
            if (partner == j)
                atoms.push_back({j});
            else if (j < partner)
                atoms.push_back({j, partner});
        }
        if (atoms.size() > 20) throw std::invalid_argument("brute_force_conjugate_threshold_objective: P too large");
        // nearest symmetric vector is (s + conj(flip s)) / 2; the antisymmetric part is a fixed cost
        ComplexVector sym(p);
        double fixed = 0.0;
        for (std::size_t j = 0; j < p; ++j)
        {
            sym[j] = 0.5 * (s[j] + std::conj(s[(p - j) % p]));
            fixed += std::norm(s[j] - sym[j]);
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::uint32_t mask = 0; mask < (1u << atoms.size()); ++mask)
        {
            std::size_t count = 0;
            double residual = 0.0;
            for (std::size_t a = 0; a < atoms.size(); ++a)
            {
                const bool keep = (mask >> a) & 1u;
                if (keep) count += atoms[a].size();
                else
                    for (auto j : atoms[a]) residual += std::norm(sym[j]);
            }
            if (count <= k) best = std::min(best, residual);
        }
        return best + fixed;
    }

    inline double threshold_objective(std::span<const Complex> z, std::span<const Complex> s)
    {
        double acc = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) acc += std::norm(z[j] - s[j]);
        return acc;
    }

    // ----------------------------------------------------------------------
    // Check families.

    /// synthesize(analyze(x)) == x over redundancies {1, 3/2, 2, 4} and N in {16, 64, 256}.
    inline CheckReport check_parseval(const OracleConfig &cfg)
    {
        CheckReport rep{"parseval identity", false, 0.0, 1e-10, 0, ""};
        Rng rng(cfg.seed);
        for (auto red : {Redundancy{1, 1}, Redundancy{3, 2}, Redundancy{2, 1}, Redundancy{4, 1}})
            for (std::size_t n : {16u, 64u, 256u})
            {
                const auto op = make_frame(n, red);
                for (std::size_t t = 0; t < cfg.n_trials; ++t)
                {
                    const auto x = random_real(rng, n);
                    const auto back = op.synthesize(op.analyze(x));
                    rep.worst = std::max(rep.worst, distance2<double>(back, x) / norm2(x));
                    ++rep.cases;
                }
            }
        rep.passed = rep.worst <= rep.tolerance;
        rep.detail = "max relative error of synthesize(analyze(x))";
        return rep;
    }

    /// FFT frame against the dense DFT definition, N <= 16.
    inline CheckReport check_dense_agreement(const OracleConfig &cfg)
    {
        CheckReport rep{"fft frame vs dense matrix", false, 0.0, cfg.tol_strict * 10, 0, ""};
        Rng rng(cfg.seed + 1);
        for (auto red : {Redundancy{1, 1}, Redundancy{3, 2}, Redundancy{2, 1}})
            for (std::size_t n : {4u, 8u, 16u})
            {
                const auto op = make_frame(n, red);
                const auto a = dense_analysis_matrix(n, op.coeff_len());
                const auto d = dense_synthesis_matrix(n, op.coeff_len());
                for (std::size_t t = 0; t < std::min<std::size_t>(cfg.n_trials, 20); ++t)
                {
                    const auto x = random_real(rng, n);
                    const auto c = random_complex(rng, op.coeff_len());
                    Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n));
                    const Eigen::VectorXcd ax = a * xv.cast<Complex>();
                    const auto fx = op.analyze(x);
                    double err = 0.0;
                    for (std::size_t p = 0; p < fx.size(); ++p) err = std::max(err, std::abs(fx[p] - ax(static_cast<Eigen::Index>(p))));
                    const auto dc = op.synthesize(c);
                    const auto dd = dense_synthesize(d, c);
                    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(dc[i] - dd[i]));
                    rep.worst = std::max(rep.worst, err);
                    ++rep.cases;
                }
            }
        rep.passed = rep.worst <= rep.tolerance;
        rep.detail = "max abs difference, analyze and synthesize";
        return rep;
    }

    /// H_k equals the brute-force minimum for every P <= 10, k <= 3.
    /// Also checks the conjugate-pair rule against its own enumeration.
    inline CheckReport check_threshold_exactness(const OracleConfig &cfg, std::size_t vectors_per_case = 50)
    {
        CheckReport rep{"hard thresholding exactness", false, 0.0, cfg.tol_strict, 0, ""};
        Rng rng(cfg.seed + 2);
        bool sparsity_ok = true;
        for (std::size_t p = 1; p <= 10; ++p)
            for (std::size_t k = 0; k <= 3; ++k)
                for (std::size_t t = 0; t < vectors_per_case; ++t)
                {
                    const auto s = random_complex(rng, p);
                    const auto z = hard_threshold(s, k);
                    const auto zc = hard_threshold_conjugate(s, k);
                    sparsity_ok = sparsity_ok && l0_norm(z) <= k && l0_norm(zc) <= k;
                    rep.worst = std::max(rep.worst, std::abs(threshold_objective(z, s) - brute_force_threshold_objective(s, k)));
                    rep.worst = std::max(rep.worst, std::abs(threshold_objective(zc, s) -
                                                             brute_force_conjugate_threshold_objective(s, k)));
                    ++rep.cases;
                }
        rep.passed = sparsity_ok && rep.worst <= rep.tolerance;
        rep.detail = sparsity_ok ? "max |objective - brute-force minimum|" : "sparsity bound violated";
        return rep;
    }

    /// y^T r + (rho/2)||r||^2 == (rho/2)||r + y/rho||^2 - (rho/2)||y/rho||^2,
    /// and ||c||^2 == ||[Re c; Im c]||^2.
    inline CheckReport check_scaled_form(const OracleConfig &cfg)
    {
        CheckReport rep{"scaled-form identity", false, 0.0, cfg.tol_strict, 0, ""};
        Rng rng(cfg.seed + 3);
        std::uniform_int_distribution<std::size_t> dim(1, 16);
        std::uniform_real_distribution<double> log_rho(std::log(0.1), std::log(10.0));
        double stack_worst = 0.0;
        for (std::size_t t = 0; t < cfg.n_trials; ++t)
        {
            const std::size_t m = dim(rng);
            const auto r = random_real(rng, m);
            const auto y = random_real(rng, m);
            const double rho = std::exp(log_rho(rng));
            double unscaled = 0.0, shifted = 0.0, dual = 0.0;
            for (std::size_t i = 0; i < m; ++i)
            {
                unscaled += y[i] * r[i] + 0.5 * rho * r[i] * r[i];
                const double ui = y[i] / rho;
                shifted += (r[i] + ui) * (r[i] + ui);
                dual += ui * ui;
            }
            const double scaled = 0.5 * rho * shifted - 0.5 * rho * dual;
            rep.worst = std::max(rep.worst, std::abs(unscaled - scaled));

            const auto c = random_complex(rng, m);
            RealVector stacked;
            for (const auto &v : c) stacked.push_back(v.real());
            for (const auto &v : c) stacked.push_back(v.imag());
            const double nc = norm2(c), ns = norm2(stacked);
            stack_worst = std::max(stack_worst, std::abs(nc * nc - ns * ns));
            rep.cases += 2;
        }
        rep.worst = std::max(rep.worst, stack_worst);
        rep.passed = rep.worst <= rep.tolerance;
        rep.detail = "max abs deviation (Lagrangian term and complex stacking)";
        return rep;
    }

    struct TranspositionResult
    {
        double max_orthogonality = 0.0;   ///< max |<s - A A* s, A w>| / (||s|| ||w||)
        double max_range_residual = 0.0;  ///< ||s - A A* s|| for s already in range(A)
        std::size_t violations = 0;       ///< feasible candidates beating the projection
        std::size_t comparisons = 0;
    };

    /// For random s: xi = A* s yields s = A xi + e with e orthogonal to
    /// range(A), and P_Gamma(A* s) minimizes ||A x - s|| over Gamma; no
    /// random feasible point may do better.
    inline TranspositionResult check_projection_transposition(const FrameOperator &op, const ClipModel &model,
                                                              const OracleConfig &cfg, std::size_t n_targets = 20)
    {
        if (model.size() != op.signal_len()) throw std::invalid_argument("check_projection_transposition: size mismatch");
        Rng rng(cfg.seed + 4);
        TranspositionResult res;
        for (std::size_t t = 0; t < n_targets; ++t)
        {
            const auto s = random_complex(rng, op.coeff_len());
            const auto xi = op.synthesize(s);
            const auto axi = op.analyze(xi);
            ComplexVector e(s.size());
            for (std::size_t j = 0; j < s.size(); ++j) e[j] = s[j] - axi[j];
            for (std::size_t w = 0; w < 20; ++w)
            {
                const auto omega = random_real(rng, op.signal_len());
                const auto aw = op.analyze(omega);
                res.max_orthogonality = std::max(res.max_orthogonality, std::abs(real_inner(e, aw)) / (norm2(s) * norm2(omega)));
            }

            const auto in_range = op.analyze(random_real(rng, op.signal_len()));
            const auto back = op.analyze(op.synthesize(in_range));
            res.max_range_residual = std::max(res.max_range_residual, distance2<Complex>(back, in_range));

            const auto best = project_gamma(xi, model);
            const double best_obj = distance2<Complex>(op.analyze(best), s);
            for (std::size_t c = 0; c < cfg.n_trials; ++c)
            {
                const auto cand = project_gamma(random_real(rng, op.signal_len()), model);
                const double obj = distance2<Complex>(op.analyze(cand), s);
                if (obj < best_obj - cfg.tol_strict * std::max(1.0, best_obj)) ++res.violations;
                ++res.comparisons;
            }
        }
        return res;
    }

    struct EquivalenceResult
    {
        double max_deviation = 0.0;  ///< max_i max_variant ||x_variant^(i) - x_aspade^(i)||
        std::size_t iterations = 0;
        bool same_termination = true;
    };

    /// Runs the three variants in lockstep on a unitary frame and compares
    /// their time-domain iterates (x = D z_hat for the original S-SPADE).
    /// Stops when every variant has met epsilon or after n_iters steps.
    inline EquivalenceResult check_unitary_equivalence(const FrameOperator &op, const ClipModel &model,
                                                       SolverParams params, std::size_t n_iters)
    {
        if (!op.is_unitary()) throw std::invalid_argument("check_unitary_equivalence: frame is not unitary");
        params.variant = Variant::ASpade;
        auto a = init_state(model, op, params);
        params.variant = Variant::SSpadeOrig;
        auto b = init_state(model, op, params);
        params.variant = Variant::SSpadeDR;
        auto c = init_state(model, op, params);
        c.i = a.i;  // align the sparsity schedules

        EquivalenceResult res;
        for (std::size_t it = 0; it < n_iters; ++it)
        {
            aspade_step(a, model, op, params);
            sspade_orig_step(b, model, op, params);
            sspade_dr_step(c, model, op, params);
            ++res.iterations;
            res.max_deviation = std::max({res.max_deviation, distance2<double>(a.x_hat, b.x_hat),
                                          distance2<double>(a.x_hat, c.x_hat)});
            const bool da = a.residual <= params.epsilon, db = b.residual <= params.epsilon,
                       dc = c.residual <= params.epsilon;
            if (da != db || da != dc)
            {
                res.same_termination = false;
                break;
            }
            if (da) break;
        }
        return res;
    }

    struct DrBoundResult
    {
        double max_excess = -std::numeric_limits<double>::infinity();  ///< max(time - coef)
        std::size_t iterations = 0;
    };

    /// Runs S-SPADE done right for n_iters steps (epsilon only stops the
    /// dual update, not the run) and records the time-domain error of the
    /// thresholded f-update against its coefficient-domain bound.
    inline DrBoundResult check_dr_bound(const FrameOperator &op, const ClipModel &model, SolverParams params,
                                        std::size_t n_iters)
    {
        params.variant = Variant::SSpadeDR;
        auto st = init_state(model, op, params);
        DrBoundResult res;
        for (std::size_t it = 0; it < n_iters; ++it)
        {
            sspade_dr_step(st, model, op, params);
            res.max_excess = std::max(res.max_excess, st.approx_time_error - st.approx_coef_error);
            ++res.iterations;
        }
        return res;
    }

    /// Clipped sinusoid mix used by the built-in checks.
    inline ClipModel clipped_test_model(std::size_t n, double clip_ratio, RealVector *clean = nullptr)
    {
        auto x = sinusoid_mix(n);
        const double theta = clip_ratio * peak_abs(x);
        auto model = detect_masks(hard_clip(x, theta), theta, 0.0);
        if (clean) *clean = std::move(x);
        return model;
    }

    /// The solver parameters the equivalence check runs with by default.
    inline SolverParams equivalence_params()
    {
        SolverParams p;
        p.s = 1;
        p.r = 8;
        p.epsilon = 1e-6;
        return p;
    }

    /// Every check family; used by the `verify` subcommand.
    inline std::vector<CheckReport> run_all(const OracleConfig &cfg)
    {
        cfg.validate();
        std::vector<CheckReport> out;
        out.push_back(check_parseval(cfg));
        out.push_back(check_dense_agreement(cfg));
        out.push_back(check_threshold_exactness(cfg, std::min<std::size_t>(cfg.n_trials, 50)));
        out.push_back(check_scaled_form(cfg));

        {
            const auto op = make_frame(8, 2);
            Rng rng(cfg.seed + 5);
            auto x = random_real(rng, 8);
            const double theta = 0.5 * peak_abs(x);
            const auto model = detect_masks(hard_clip(x, theta), theta, 0.0);
            const auto tr = check_projection_transposition(op, model, cfg);
            CheckReport rep{"projection transposition", false, static_cast<double>(tr.violations), 0.0,
                            tr.comparisons, ""};
            rep.passed = tr.violations == 0 && tr.max_orthogonality <= cfg.tol_numeric &&
                         tr.max_range_residual <= 1e-10;
            rep.detail = "violations; orthogonality " + std::to_string(tr.max_orthogonality) + ", range residual " +
                         std::to_string(tr.max_range_residual);
            out.push_back(rep);
        }
        {
            const auto op = make_frame(64, 1);
            const auto model = clipped_test_model(64, 0.5);
            const auto eq = check_unitary_equivalence(op, model, equivalence_params(), 200);
            CheckReport rep{"unitary equivalence", eq.same_termination && eq.max_deviation <= cfg.tol_numeric,
                            eq.max_deviation, cfg.tol_numeric, eq.iterations, ""};
            rep.detail = std::string("max l2 iterate deviation") + (eq.same_termination ? "" : "; termination differs");
            out.push_back(rep);
        }
        {
            const auto op = make_frame(64, 2);
            const auto model = clipped_test_model(64, 0.4);
            auto params = SolverParams{};
            params.epsilon = 1e-300;
            const auto db = check_dr_bound(op, model, params, 500);
            out.push_back(CheckReport{"sspade-dr approximation bound", db.max_excess <= cfg.tol_strict, db.max_excess,
                                      cfg.tol_strict, db.iterations, "max(time error - coefficient bound)"});
        }
        {
            // exhaustive f-update vs its thresholded approximation, N=4, P=8, k=2
            Rng rng(cfg.seed + 6);
            const auto op = make_frame(4, 2);
            const auto dict = dense_synthesis_matrix(4, 8);
            std::size_t bad = 0, cases = 0;
            for (std::size_t t = 0; t < std::min<std::size_t>(cfg.n_trials, 20); ++t)
            {
                const auto target = random_real(rng, 4);
                const auto exact = brute_force_sparse_ls(dict, target, 2);
                for (auto rule : {Thresholding::Plain, Thresholding::ConjugatePairs})
                {
                    const auto coefs = op.analyze(target);
                    const auto approx = sparsify(coefs, 2, rule);
                    const double time_err = distance2<double>(op.synthesize(approx), target);
                    const double coef_err = distance2<Complex>(approx, coefs);
                    if (exact.objective > time_err * time_err + cfg.tol_strict) ++bad;
                    if (time_err > coef_err + cfg.tol_strict) ++bad;
                    ++cases;
                }
            }
            out.push_back(CheckReport{"exhaustive f-update lower bound", bad == 0, static_cast<double>(bad), 0.0, cases,
                                      "violations of exact <= approx (time) <= approx (coef)"});
        }
        return out;
    }
}  // namespace spade::verify
