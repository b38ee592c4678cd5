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

#include "spade/app.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace
{
    // Adds the RunConfig flags shared by declip and bench.
    void add_run_flags(CLI::App &cmd, spade::app::RunConfig &cfg, std::string &theta, std::string &variant,
                       std::string &redundancy, std::string &threads)
    {
        cmd.add_option("--input-path,-i", cfg.input_path, "Input WAV (PCM16 or float32)");
        cmd.add_option("--output-path,-o", cfg.output_path, "Output path");
        cmd.add_option("--variant", variant, "aspade | sspade | sspade-dr")->capture_default_str();
        cmd.add_option("--theta", theta, "Clip level, or 'auto' (max|y| - delta-detect)")->capture_default_str();
        cmd.add_option("--frame-len", cfg.frame_len, "Frame length N")->capture_default_str();
        cmd.add_option("--hop", cfg.hop, "Hop size")->capture_default_str();
        cmd.add_option("--redundancy", redundancy, "Frame redundancy P/N, e.g. 2 or 3/2")->capture_default_str();
        cmd.add_option("-s", cfg.s, "Sparsity start and increment")->capture_default_str();
        cmd.add_option("-r", cfg.r, "Iterations between sparsity increments")->capture_default_str();
        cmd.add_option("--epsilon", cfg.epsilon, "Termination residual (absolute, per frame)")->capture_default_str();
        cmd.add_option("--delta-detect", cfg.delta_detect, "Clip detection tolerance")->capture_default_str();
        cmd.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
        cmd.add_option("--threads", threads, "Worker threads, or 'auto'")->capture_default_str();
    }

    void apply_run_flags(spade::app::RunConfig &cfg, const std::string &theta, const std::string &variant,
                         const std::string &redundancy, const std::string &threads)
    {
        cfg.variant = spade::parse_variant(variant);
        cfg.redundancy = spade::parse_redundancy(redundancy);
        if (theta == "auto")
            cfg.theta.reset();
        else
        {
            std::size_t pos = 0;
            cfg.theta = std::stod(theta, &pos);
            if (pos != theta.size()) throw std::invalid_argument("invalid theta '" + theta + "'");
        }
        if (threads == "auto")
            cfg.threads = 0;
        else
        {
            std::size_t pos = 0;
            cfg.threads = std::stoul(threads, &pos);
            if (pos != threads.size() || cfg.threads == 0) throw std::invalid_argument("invalid threads '" + threads + "'");
        }
    }
}  // namespace

int main(int argc, char **argv)
{
    using namespace spade::app;
    CLI::App app{"Sparse audio declipping (A-SPADE, S-SPADE, S-SPADE done right)"};
    app.require_subcommand(1);

    RunConfig run;
    std::string theta = "auto", variant = "aspade", redundancy = "2", threads = "auto";

    auto *declip = app.add_subcommand("declip", "Declip a WAV file");
    add_run_flags(*declip, run, theta, variant, redundancy, threads);
    declip->add_option("--csv", run.csv_path, "Write the report as CSV");
    declip->add_option("--reference-path", run.reference_path, "Clean reference WAV for SDR figures");

    std::string clip_in, clip_out;
    double clip_theta = 0.0;
    auto *clip = app.add_subcommand("clip", "Hard-clip a WAV file");
    clip->add_option("--input-path,-i", clip_in, "Input WAV")->required();
    clip->add_option("--output-path,-o", clip_out, "Output WAV (float32)")->required();
    clip->add_option("--theta", clip_theta, "Clip level")->required();

    BenchConfig bench_cfg;
    bench_cfg.base.output_path.clear();
    std::string b_theta = "auto", b_variant = "aspade", b_redundancy = "2", b_threads = "auto";
    std::vector<double> thetas;
    std::vector<std::string> variants, redundancies;
    auto *bench = app.add_subcommand("bench", "Sweep clip level, variant and redundancy; CSV to stdout or --output-path");
    add_run_flags(*bench, bench_cfg.base, b_theta, b_variant, b_redundancy, b_threads);
    bench->add_option("--thetas", thetas, "Clip levels relative to peak (default 0.1..0.9)");
    bench->add_option("--variants", variants, "Variants to sweep (default all)");
    bench->add_option("--redundancies", redundancies, "Redundancies to sweep (default 1 2)");
    bench->add_option("--signal-len", bench_cfg.signal_len, "Length of the synthetic test signal")->capture_default_str();

    VerifyConfig verify_cfg;
    auto *verify = app.add_subcommand("verify", "Run the oracle checks");
    verify->add_option("--seed", verify_cfg.seed, "Random seed")->capture_default_str();
    verify->add_option("--trials", verify_cfg.trials, "Trials per check family")->capture_default_str()->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInvalidConfig;
    }

    const auto flags = [&](auto &&body) {
        return guarded(std::cerr, [&] {
            body();
            return int{kOk};
        });
    };

    if (*declip)
    {
        if (int rc = flags([&] { apply_run_flags(run, theta, variant, redundancy, threads); }); rc != kOk) return rc;
        return cmd_declip(run, std::cout, std::cerr);
    }
    if (*clip) return cmd_clip(clip_in, clip_theta, clip_out, std::cout, std::cerr);
    if (*bench)
    {
        const int rc = flags([&] {
            apply_run_flags(bench_cfg.base, b_theta, b_variant, b_redundancy, b_threads);
            if (!thetas.empty()) bench_cfg.theta_ratios = thetas;
            if (!variants.empty())
            {
                bench_cfg.variants.clear();
                for (const auto &v : variants) bench_cfg.variants.push_back(spade::parse_variant(v));
            }
            if (!redundancies.empty())
            {
                bench_cfg.redundancies.clear();
                for (const auto &r : redundancies) bench_cfg.redundancies.push_back(spade::parse_redundancy(r));
            }
        });
        if (rc != kOk) return rc;
        return cmd_bench(bench_cfg, std::cout, std::cerr);
    }
    if (*verify) return cmd_verify(verify_cfg, std::cout, std::cerr);
    return kInvalidConfig;
}
