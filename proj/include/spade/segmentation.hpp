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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace spade
{
    enum class WindowKind
    {
        Hann,
        Rectangular
    };

    /// Frame layout for a signal of a given length. Frames are extracted
    /// without windowing; the window only weights the overlap-add.
    struct SegmentationPlan
    {
        std::size_t frame_len = 0;
        std::size_t hop = 0;
        RealVector window;
        std::size_t num_frames = 0;
        std::size_t signal_len = 0;

        /// Length after zero-padding the tail to fill the last frame.
        std::size_t padded_len() const noexcept { return (num_frames - 1) * hop + frame_len; }
        std::size_t frame_start(std::size_t m) const noexcept { return m * hop; }
    };

    /// Hann weights sampled at half-integer points, so no weight is zero and
    /// the first/last samples of the signal keep a positive normalizer.
    inline RealVector make_window(WindowKind kind, std::size_t len)
    {
        RealVector w(len, 1.0);
        if (kind == WindowKind::Hann)
            for (std::size_t n = 0; n < len; ++n)
                w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(n) + 0.5) /
                                            static_cast<double>(len));
        return w;
    }

    inline SegmentationPlan make_plan(std::size_t signal_len, std::size_t frame_len, std::size_t hop,
                                      WindowKind window = WindowKind::Hann)
    {
        if (signal_len == 0) throw std::invalid_argument("make_plan: empty signal");
        if (frame_len == 0) throw std::invalid_argument("make_plan: frame length must be positive");
        if (hop == 0 || hop > frame_len) throw std::invalid_argument("make_plan: hop must be in [1, frame_len]");
        SegmentationPlan plan;
        plan.frame_len = frame_len;
        plan.hop = hop;
        plan.window = make_window(window, frame_len);
        plan.signal_len = signal_len;
        plan.num_frames = signal_len <= frame_len ? 1 : (signal_len - frame_len + hop - 1) / hop + 1;
        return plan;
    }

    /// Rectangular extraction of every frame; samples past the end read as 0.
    inline std::vector<RealVector> split(std::span<const double> x, const SegmentationPlan &plan)
    {
        if (x.empty()) throw std::invalid_argument("split: empty signal");
        if (plan.hop > plan.frame_len) throw std::invalid_argument("split: hop exceeds frame length");
        std::vector<RealVector> frames(plan.num_frames, RealVector(plan.frame_len, 0.0));
        for (std::size_t m = 0; m < plan.num_frames; ++m)
        {
            const std::size_t start = plan.frame_start(m);
            for (std::size_t n = 0; n < plan.frame_len && start + n < x.size(); ++n) frames[m][n] = x[start + n];
        }
        return frames;
    }

    /// Window-weighted overlap-add with explicit normalization:
    ///   out[n] = sum_m w[n - m hop] f_m[n - m hop] / sum_m w[n - m hop].
    inline RealVector overlap_add(std::span<const RealVector> frames, const SegmentationPlan &plan,
                                  std::size_t original_len)
    {
        if (frames.empty()) throw std::invalid_argument("overlap_add: no frames");
        if (frames.size() != plan.num_frames) throw std::invalid_argument("overlap_add: frame count mismatch");
        const std::size_t total = plan.padded_len();
        if (original_len > total) throw std::invalid_argument("overlap_add: original length exceeds coverage");
        RealVector acc(total, 0.0), norm(total, 0.0);
        for (std::size_t m = 0; m < frames.size(); ++m)
        {
            if (frames[m].size() != plan.frame_len) throw std::invalid_argument("overlap_add: frame length mismatch");
            const std::size_t start = plan.frame_start(m);
            for (std::size_t n = 0; n < plan.frame_len; ++n)
            {
                acc[start + n] += plan.window[n] * frames[m][n];
                norm[start + n] += plan.window[n];
            }
        }
        RealVector out(original_len);
        for (std::size_t n = 0; n < original_len; ++n) out[n] = acc[n] / norm[n];
        return out;
    }

    /// Clip model of one frame. Tail padding is reliable with y = 0.
    inline ClipModel restrict_model(const ClipModel &model, std::size_t frame_index, const SegmentationPlan &plan)
    {
        if (frame_index >= plan.num_frames) throw std::out_of_range("restrict_model: frame index out of range");
        const std::size_t start = plan.frame_start(frame_index);
        RealVector y(plan.frame_len, 0.0);
        std::vector<SampleClass> labels(plan.frame_len, SampleClass::Reliable);
        for (std::size_t n = 0; n < plan.frame_len && start + n < model.size(); ++n)
        {
            y[n] = model.y()[start + n];
            labels[n] = model.labels()[start + n];
        }
        return ClipModel(std::move(y), model.theta(), std::move(labels));
    }
}  // namespace spade
