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

#include "spade/declip.hpp"
#include "spade/metrics.hpp"
#include "spade/synthetic.hpp"
#include "spade/verification.hpp"
#include "spade/wav.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace spade::app
{
    enum ExitCode : int
    {
        kOk = 0,
        kCheckFailed = 1,
        kInvalidConfig = 2,
        kIoError = 3,
        kUnsupportedFormat = 4,
    };

    struct RunConfig
    {
        std::string input_path;
        std::string output_path;
        Variant variant = Variant::ASpade;
        std::optional<double> theta;  ///< empty = auto: max|y| - delta_detect
        std::size_t frame_len = 1024;
        std::size_t hop = 256;
        Redundancy redundancy{2, 1};
        std::size_t s = 1;
        std::size_t r = 1;
        double epsilon = 0.1;
        double delta_detect = kDefaultDeltaDetect;
        std::uint64_t seed = verify::OracleConfig{}.seed;
        std::size_t threads = 0;  ///< 0 = auto
        std::string csv_path;        ///< optional CSV report
        std::string reference_path;  ///< optional clean signal for SDR figures

        DeclipOptions declip_options() const
        {
            DeclipOptions o;
            o.frame_len = frame_len;
            o.hop = hop;
            o.redundancy = redundancy;
            o.threads = threads;
            o.solver.s = s;
            o.solver.r = r;
            o.solver.epsilon = epsilon;
            o.solver.variant = variant;
            return o;
        }

        void validate() const
        {
            if (frame_len == 0) throw std::invalid_argument("frame-len must be positive");
            if (hop == 0 || hop > frame_len) throw std::invalid_argument("hop must be in [1, frame-len]");
            if (theta && !(*theta > 0.0)) throw std::invalid_argument("theta must be positive");
            if (delta_detect < 0.0) throw std::invalid_argument("delta-detect must be non-negative");
            const auto op_len = frame_len * redundancy.num;
            if (op_len % redundancy.den != 0) throw std::invalid_argument("redundancy * frame-len must be an integer");
            declip_options().solver.validate(op_len / redundancy.den);
        }
    };

    inline constexpr const char *kCsvHeader =
        "variant,theta,redundancy,sdr_in_db,sdr_out_db,sdr_clipped_db,mean_iters,runtime_s";

    inline std::string format_redundancy(Redundancy r)
    {
        return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
    }

    inline std::string csv_row(Variant v, double theta, Redundancy red, const DeclipReport &rep)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%.6g,%s,%s,%s,%s,%.3f,%.6f", std::string(to_string(v)).c_str(), theta,
                      format_redundancy(red).c_str(), format_db(rep.sdr_clipped_input, 4).c_str(),
                      format_db(rep.sdr_restored, 4).c_str(), format_db(rep.sdr_on_clipped_samples, 4).c_str(),
                      rep.mean_iterations(), rep.runtime);
        return buf;
    }

    /// Maps library exceptions onto the documented exit codes.
    inline int guarded(std::ostream &err, const std::function<int()> &body)
    {
        try
        {
            return body();
        }
        catch (const wav::WavError &e)
        {
            err << "error: " << e.what() << "\n";
            return e.kind() == wav::WavError::Kind::Unsupported ? kUnsupportedFormat : kIoError;
        }
        catch (const std::invalid_argument &e)
        {
            err << "error: " << e.what() << "\n";
            return kInvalidConfig;
        }
        catch (const std::out_of_range &e)
        {
            err << "error: " << e.what() << "\n";
            return kInvalidConfig;
        }
    }

    /// Samples cast to float; clipped samples are nudged so that rounding
    /// never pulls them back inside (-theta, theta).
    inline std::vector<float> to_float_output(std::span<const double> x, const ClipModel &model)
    {
        std::vector<float> out(x.size());
        for (std::size_t n = 0; n < x.size(); ++n)
        {
            float v = static_cast<float>(x[n]);
            const auto cls = model.label(n);
            if (cls == SampleClass::ClippedHigh && static_cast<double>(v) < model.theta())
                v = std::nextafter(v, std::numeric_limits<float>::infinity());
            else if (cls == SampleClass::ClippedLow && static_cast<double>(v) > -model.theta())
                v = std::nextafter(v, -std::numeric_limits<float>::infinity());
            out[n] = v;
        }
        return out;
    }

    inline void print_report(std::ostream &os, const RunConfig &cfg, double theta, const DeclipReport &rep,
                             std::size_t length)
    {
        const double pct = length ? 100.0 * static_cast<double>(rep.num_clipped) / static_cast<double>(length) : 0.0;
        os << "variant          " << to_string(cfg.variant) << "\n"
           << "theta            " << theta << "\n"
           << "clipped samples  " << rep.num_clipped << " of " << length << " (" << std::fixed << std::setprecision(2)
           << pct << "%)\n"
           << std::defaultfloat;
        os << "frames           " << rep.per_frame.size() << " (" << rep.frames_converged() << " converged)\n"
           << "mean iterations  " << std::fixed << std::setprecision(1) << rep.mean_iterations() << "\n";
        if (!std::isnan(rep.sdr_restored))
            os << "sdr clipped      " << format_db(rep.sdr_clipped_input, 2) << " dB\n"
               << "sdr restored     " << format_db(rep.sdr_restored, 2) << " dB\n"
               << "sdr on clipped   " << format_db(rep.sdr_on_clipped_samples, 2) << " dB\n";
        os << "runtime          " << std::setprecision(3) << rep.runtime << " s\n" << std::defaultfloat;
    }

    /// declip: WAV in, float32 WAV out, report on `out`.
    inline int cmd_declip(const RunConfig &cfg, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&] {
            cfg.validate();
            if (cfg.input_path.empty()) throw std::invalid_argument("--input-path is required");
            if (cfg.output_path.empty()) throw std::invalid_argument("--output-path is required");
            const auto audio = wav::read(cfg.input_path);
            if (audio.source_channels > 1) err << "warning: " << audio.source_channels << " channels downmixed to mono\n";
            if (audio.samples.empty()) throw std::invalid_argument("input has no samples");

            const auto &y = audio.samples;
            const double theta = cfg.theta ? *cfg.theta : peak_abs(y) - cfg.delta_detect;
            if (!(theta > 0.0)) throw std::invalid_argument("auto theta is not positive (silent input?)");
            const auto model = detect_masks(y, theta, cfg.delta_detect);

            std::vector<double> reference;
            if (!cfg.reference_path.empty())
            {
                reference = wav::read(cfg.reference_path).samples;
                if (reference.size() != y.size()) throw std::invalid_argument("reference length differs from input");
            }
            const auto result = declip(model, cfg.declip_options(), reference);
            wav::write_float32(cfg.output_path, to_float_output(result.restored, model), audio.sample_rate);

            print_report(out, cfg, theta, result.report, y.size());
            if (!cfg.csv_path.empty())
            {
                std::ofstream csv(cfg.csv_path);
                if (!csv) throw wav::WavError(wav::WavError::Kind::Unreadable, "cannot write '" + cfg.csv_path + "'");
                csv << kCsvHeader << "\n" << csv_row(cfg.variant, theta, cfg.redundancy, result.report) << "\n";
            }
            return int{kOk};
        });
    }

    /// clip: hard-clips a WAV at theta (rounded to float32) and writes float32.
    inline int cmd_clip(const std::string &input, double theta, const std::string &output, std::ostream &out,
                        std::ostream &err)
    {
        return guarded(err, [&] {
            if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
            const auto audio = wav::read(input);
            const double level = static_cast<double>(static_cast<float>(theta));
            const auto clipped = hard_clip(audio.samples, level);
            std::size_t count = 0;
            for (double v : audio.samples) count += std::abs(v) > level ? 1 : 0;
            wav::write_float32(output, clipped, audio.sample_rate);
            const double frac = audio.samples.empty() ? 0.0 : static_cast<double>(count) / static_cast<double>(audio.samples.size());
            out << "theta " << level << "\nclipped " << count << " of " << audio.samples.size() << " samples\n"
                << "clip fraction " << frac << "\n";
            return int{kOk};
        });
    }

    struct BenchConfig
    {
        RunConfig base;  ///< input_path empty = synthetic sinusoid mix
        std::vector<double> theta_ratios{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        std::vector<Variant> variants{Variant::ASpade, Variant::SSpadeOrig, Variant::SSpadeDR};
        std::vector<Redundancy> redundancies{{1, 1}, {2, 1}};
        std::size_t signal_len = 8192;
    };

    /// bench: one CSV row per (theta ratio, variant, redundancy), theta
    /// relative to the peak of the clean signal.
    inline int cmd_bench(const BenchConfig &cfg, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&] {
            std::vector<double> clean;
            if (cfg.base.input_path.empty())
                clean = sinusoid_mix(cfg.signal_len);
            else
                clean = wav::read(cfg.base.input_path).samples;
            if (clean.empty()) throw std::invalid_argument("bench: empty signal");
            const double peak = peak_abs(clean);
            if (!(peak > 0.0)) throw std::invalid_argument("bench: silent signal");
            for (double ratio : cfg.theta_ratios)
                if (!(ratio > 0.0)) throw std::invalid_argument("bench: theta ratios must be positive");

            std::ofstream file;
            std::ostream *sink = &out;
            if (!cfg.base.output_path.empty())
            {
                file.open(cfg.base.output_path);
                if (!file) throw wav::WavError(wav::WavError::Kind::Unreadable, "cannot write '" + cfg.base.output_path + "'");
                sink = &file;
            }
            *sink << kCsvHeader << "\n";
            for (double ratio : cfg.theta_ratios)
            {
                const double theta = ratio * peak;
                const auto model = detect_masks(hard_clip(clean, theta), theta, 0.0);
                for (const auto v : cfg.variants)
                    for (const auto red : cfg.redundancies)
                    {
                        auto run = cfg.base;
                        run.variant = v;
                        run.redundancy = red;
                        run.validate();
                        const auto res = declip(model, run.declip_options(), clean);
                        *sink << csv_row(v, ratio, red, res.report) << "\n";
                    }
            }
            return int{kOk};
        });
    }

    struct VerifyConfig
    {
        std::uint64_t seed = verify::OracleConfig{}.seed;
        std::size_t trials = 100;
    };

    /// verify: runs every oracle family and prints a pass/fail table.
    inline int cmd_verify(const VerifyConfig &cfg, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&] {
            verify::OracleConfig oc;
            oc.seed = cfg.seed;
            oc.n_trials = cfg.trials;
            const auto reports = verify::run_all(oc);
            bool all = true;
            out << std::left << std::setw(34) << "check" << std::setw(6) << "result" << std::setw(14) << "worst"
                << std::setw(12) << "tolerance" << "cases\n";
            for (const auto &r : reports)
            {
                all = all && r.passed;
                std::ostringstream worst, tol;
                worst << std::setprecision(3) << r.worst;
                tol << std::setprecision(3) << r.tolerance;
                out << std::left << std::setw(34) << r.name << std::setw(6) << (r.passed ? "PASS" : "FAIL")
                    << std::setw(14) << worst.str() << std::setw(12) << tol.str() << r.cases << "\n";
            }
            out << (all ? "all checks passed\n" : "verification FAILED\n");
            return all ? int{kOk} : int{kCheckFailed};
        });
    }
}  // namespace spade::app
