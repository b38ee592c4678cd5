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
#include "spade/metrics.hpp"
#include "spade/segmentation.hpp"
#include "spade/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace spade
{
    struct DeclipOptions
    {
        std::size_t frame_len = 1024;
        std::size_t hop = 256;
        Redundancy redundancy{2, 1};
        WindowKind window = WindowKind::Hann;
        SolverParams solver{};
        std::size_t threads = 0;  ///< 0 = hardware concurrency
    };

    struct DeclipOutput
    {
        RealVector restored;
        DeclipReport report;
    };

    namespace detail
    {
        /// Runs job(m) for m in [0, count) on up to `threads` workers.
        template <typename Job>
        void parallel_for(std::size_t count, std::size_t threads, Job &&job)
        {
            if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
            threads = std::min(threads, count);
            if (threads <= 1)
            {
                for (std::size_t m = 0; m < count; ++m) job(m);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            {
                std::vector<std::jthread> pool;
                pool.reserve(threads);
                for (std::size_t t = 0; t < threads; ++t)
                    pool.emplace_back([&] {
                        for (std::size_t m = next++; m < count; m = next++)
                        {
                            try
                            {
                                job(m);
                            }
                            catch (...)
                            {
                                std::lock_guard lock(failure_mutex);
                                if (!failure) failure = std::current_exception();
                            }
                        }
                    });
            }
            if (failure) std::rethrow_exception(failure);
        }
    }  // namespace detail

    /// Declips a whole signal frame by frame and recombines by overlap-add.
    ///
    /// Frames are solved independently; the result does not depend on the
    /// thread count. The recombined signal is projected onto Gamma(y) once
    /// more, so reliable samples are returned bit-exact. If `reference` is
    /// non-empty, the report carries SDR figures against it.
    inline DeclipOutput declip(const ClipModel &model, const DeclipOptions &opts,
                               std::span<const double> reference = {})
    {
        const auto t0 = std::chrono::steady_clock::now();
        if (model.size() == 0) throw std::invalid_argument("declip: empty signal");
        if (!reference.empty() && reference.size() != model.size())
            throw std::invalid_argument("declip: reference length mismatch");

        const auto plan = make_plan(model.size(), opts.frame_len, opts.hop, opts.window);
        const auto op = make_frame(opts.frame_len, opts.redundancy);
        opts.solver.validate(op.coeff_len());

        std::vector<RealVector> restored(plan.num_frames);
        std::vector<FrameStats> stats(plan.num_frames);
        detail::parallel_for(plan.num_frames, opts.threads, [&](std::size_t m) {
            const auto frame_model = restrict_model(model, m, plan);
            if (frame_model.num_clipped() == 0)
            {
                restored[m] = frame_model.y();
                stats[m] = FrameStats{0, 0.0, 0, true};
                return;
            }
            auto res = run_solver(frame_model, op, opts.solver);
            stats[m] = FrameStats{res.iterations, res.final_residual, res.final_k, res.converged};
            restored[m] = std::move(res.x_restored);
        });

        DeclipOutput out;
        out.restored = project_gamma(overlap_add(restored, plan, model.size()), model);
        out.report.per_frame = std::move(stats);
        out.report.num_clipped = model.num_clipped();
        if (!reference.empty())
        {
            out.report.sdr_clipped_input = sdr(reference, model.y());
            out.report.sdr_restored = sdr(reference, out.restored);
            if (model.num_clipped() > 0)
                out.report.sdr_on_clipped_samples = sdr_masked(reference, out.restored, model.clipped_indices());
        }
        out.report.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }
}  // namespace spade
