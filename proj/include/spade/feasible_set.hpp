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

#include "spade/frames.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spade
{
    enum class SampleClass : std::uint8_t
    {
        Reliable,
        ClippedHigh,
        ClippedLow
    };

    /// Observed signal y, clip level theta and the reliable / clipped-high /
    /// clipped-low partition of its samples. The feasible set is
    ///
    ///   Gamma(y) = { x : x[n] = y[n] on reliable, x[n] >= theta on high, x[n] <= -theta on low }.
    class ClipModel
    {
      public:
        ClipModel() = default;

        ClipModel(RealVector y, double theta, std::vector<SampleClass> labels)
            : y_(std::move(y)), theta_(theta), labels_(std::move(labels))
        {
            if (!(theta_ > 0.0)) throw std::invalid_argument("ClipModel: theta must be positive");
            if (labels_.size() != y_.size()) throw std::invalid_argument("ClipModel: label count must match signal");
            for (std::size_t n = 0; n < labels_.size(); ++n)
            {
                switch (labels_[n])
                {
                    case SampleClass::Reliable: mask_r_.push_back(n); break;
                    case SampleClass::ClippedHigh: mask_h_.push_back(n); break;
                    case SampleClass::ClippedLow: mask_l_.push_back(n); break;
                }
            }
        }

        /// Builds a model from explicit index sets, which must partition 0..N-1.
        static ClipModel from_masks(RealVector y, double theta, std::span<const std::size_t> mask_r,
                                    std::span<const std::size_t> mask_h, std::span<const std::size_t> mask_l)
        {
            const std::size_t n = y.size();
            std::vector<int> seen(n, 0);
            std::vector<SampleClass> labels(n, SampleClass::Reliable);
            auto mark = [&](std::span<const std::size_t> idx, SampleClass cls) {
                for (auto i : idx)
                {
                    if (i >= n) throw std::invalid_argument("ClipModel: mask index out of range");
                    if (seen[i]++) throw std::invalid_argument("ClipModel: masks are not disjoint");
                    labels[i] = cls;
                }
            };
            mark(mask_r, SampleClass::Reliable);
            mark(mask_h, SampleClass::ClippedHigh);
            mark(mask_l, SampleClass::ClippedLow);
            if (std::find(seen.begin(), seen.end(), 0) != seen.end())
                throw std::invalid_argument("ClipModel: masks do not cover every sample");
            return ClipModel(std::move(y), theta, std::move(labels));
        }

        std::size_t size() const noexcept { return y_.size(); }
        const RealVector &y() const noexcept { return y_; }
        double theta() const noexcept { return theta_; }
        const std::vector<SampleClass> &labels() const noexcept { return labels_; }
        SampleClass label(std::size_t n) const { return labels_.at(n); }

        const std::vector<std::size_t> &mask_r() const noexcept { return mask_r_; }
        const std::vector<std::size_t> &mask_h() const noexcept { return mask_h_; }
        const std::vector<std::size_t> &mask_l() const noexcept { return mask_l_; }

        std::size_t num_clipped() const noexcept { return mask_h_.size() + mask_l_.size(); }

        /// Union of the clipped-high and clipped-low positions, ascending.
        std::vector<std::size_t> clipped_indices() const
        {
            std::vector<std::size_t> out;
            out.reserve(num_clipped());
            for (std::size_t n = 0; n < labels_.size(); ++n)
                if (labels_[n] != SampleClass::Reliable) out.push_back(n);
            return out;
        }

        /// Exact membership test: reliable samples must be bit-equal to y.
        bool contains(std::span<const double> x, double tol = 0.0) const
        {
            if (x.size() != y_.size()) return false;
            for (std::size_t n = 0; n < x.size(); ++n)
            {
                switch (labels_[n])
                {
                    case SampleClass::Reliable:
                        if (x[n] != y_[n]) return false;
                        break;
                    case SampleClass::ClippedHigh:
                        if (x[n] < theta_ - tol) return false;
                        break;
                    case SampleClass::ClippedLow:
                        if (x[n] > -theta_ + tol) return false;
                        break;
                }
            }
            return true;
        }

      private:
        RealVector y_;
        double theta_ = 1.0;
        std::vector<SampleClass> labels_;
        std::vector<std::size_t> mask_r_, mask_h_, mask_l_;
    };

    inline constexpr double kDefaultDeltaDetect = 1e-6;

    inline RealVector hard_clip(std::span<const double> x, double theta)
    {
        if (!(theta > 0.0)) throw std::invalid_argument("hard_clip: theta must be positive");
        RealVector out(x.size());
        std::transform(x.begin(), x.end(), out.begin(), [theta](double v) { return std::clamp(v, -theta, theta); });
        return out;
    }

    /// Samples within delta_detect of +-theta are labelled clipped.
    inline ClipModel detect_masks(std::span<const double> y, double theta, double delta_detect = kDefaultDeltaDetect)
    {
        if (!(theta > 0.0)) throw std::invalid_argument("detect_masks: theta must be positive");
        if (delta_detect < 0.0) throw std::invalid_argument("detect_masks: delta_detect must be non-negative");
        std::vector<SampleClass> labels(y.size(), SampleClass::Reliable);
        for (std::size_t n = 0; n < y.size(); ++n)
        {
            if (y[n] >= theta - delta_detect)
                labels[n] = SampleClass::ClippedHigh;
            else if (y[n] <= -theta + delta_detect)
                labels[n] = SampleClass::ClippedLow;
        }
        return ClipModel(RealVector(y.begin(), y.end()), theta, std::move(labels));
    }

    /// Euclidean projection onto Gamma(y); componentwise.
    inline RealVector project_gamma(std::span<const double> v, const ClipModel &model)
    {
        if (v.size() != model.size())
            throw std::invalid_argument("project_gamma: expected " + std::to_string(model.size()) + " samples, got " +
                                        std::to_string(v.size()));
        const auto &y = model.y();
        const auto &labels = model.labels();
        const double theta = model.theta();
        RealVector out(v.size());
        for (std::size_t n = 0; n < v.size(); ++n)
        {
            switch (labels[n])
            {
                case SampleClass::Reliable: out[n] = y[n]; break;
                case SampleClass::ClippedHigh: out[n] = std::max(v[n], theta); break;
                case SampleClass::ClippedLow: out[n] = std::min(v[n], -theta); break;
            }
        }
        return out;
    }

    /// Projection onto { z : synthesize(z) in Gamma }.
    ///
    /// With D D* = Id the projection has the one-step form
    /// z + A (P_Gamma(Dz) - Dz); no inner iteration is required.
    inline ComplexVector project_gamma_coef(std::span<const Complex> c, const ClipModel &model, const FrameOperator &op)
    {
        if (c.size() != op.coeff_len())
            throw std::invalid_argument("project_gamma_coef: expected " + std::to_string(op.coeff_len()) +
                                        " coefficients, got " + std::to_string(c.size()));
        if (model.size() != op.signal_len()) throw std::invalid_argument("project_gamma_coef: model/frame size mismatch");
        const auto dc = op.synthesize(c);
        const auto projected = project_gamma(dc, model);
        RealVector correction(dc.size());
        for (std::size_t n = 0; n < dc.size(); ++n) correction[n] = projected[n] - dc[n];
        const auto dz = op.analyze(correction);
        ComplexVector out(c.begin(), c.end());
        for (std::size_t p = 0; p < out.size(); ++p) out[p] += dz[p];
        return out;
    }
}  // namespace spade
