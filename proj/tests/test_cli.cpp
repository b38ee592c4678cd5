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

#include <catch2/catch_amalgamated.hpp>

#include "scratch.hpp"
#include "spade/app.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace spade;
using namespace spade::app;

namespace
{
    std::vector<std::string> lines_of(const std::string &text)
    {
        std::vector<std::string> out;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);)
            if (!line.empty()) out.push_back(line);
        return out;
    }

    std::vector<std::string> fields(const std::string &line)
    {
        std::vector<std::string> out;
        std::istringstream in(line);
        for (std::string f; std::getline(in, f, ',');) out.push_back(f);
        return out;
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    // Drops the trailing runtime column, the only non-deterministic field.
    std::string without_runtime(const std::string &csv)
    {
        std::string out;
        for (const auto &line : lines_of(csv)) out += line.substr(0, line.rfind(',')) + "\n";
        return out;
    }

    struct Fixture
    {
        ScratchDir dir;
        std::string clean = dir.file("clean.wav");
        std::string clipped = dir.file("clipped.wav");
        Fixture(std::size_t len = 8192, double ratio = 0.3)
        {
            wav::write_float32(clean, sinusoid_mix(len), 44100);
            std::ostringstream o, e;
            REQUIRE(cmd_clip(clean, ratio, clipped, o, e) == kOk);
        }
    };

    RunConfig base_config(const Fixture &fx, const std::string &out)
    {
        RunConfig cfg;
        cfg.input_path = fx.clipped;
        cfg.output_path = out;
        cfg.reference_path = fx.clean;
        return cfg;
    }
}  // namespace

TEST_CASE("declip of an unclipped file returns the input")
{
    ScratchDir dir;
    std::vector<double> x = sinusoid_mix(3000);
    for (auto &v : x) v *= 0.5;
    wav::write_pcm16(dir.file("in.wav"), x, 16000);
    RunConfig cfg;
    cfg.input_path = dir.file("in.wav");
    cfg.output_path = dir.file("out.wav");
    cfg.theta = 0.9;
    std::ostringstream out, err;
    REQUIRE(cmd_declip(cfg, out, err) == kOk);
    CHECK(out.str().find("clipped samples  0 of 3000") != std::string::npos);
    const auto in = wav::read(cfg.input_path);
    const auto res = wav::read(cfg.output_path);
    CHECK(res.sample_rate == 16000);
    CHECK(res.source_format == wav::SampleFormat::Float32);
    CHECK(res.samples == in.samples);
}

TEST_CASE("declip restores the clipped sinusoid file for every variant")
{
    Fixture fx;
    const auto in = wav::read(fx.clipped);
    const auto model = detect_masks(in.samples, peak_abs(in.samples) - kDefaultDeltaDetect, kDefaultDeltaDetect);
    REQUIRE(model.num_clipped() > 0);
    for (auto v : {Variant::ASpade, Variant::SSpadeOrig, Variant::SSpadeDR})
    {
        auto cfg = base_config(fx, fx.dir.file("out.wav"));
        cfg.variant = v;
        cfg.csv_path = fx.dir.file("report.csv");
        std::ostringstream out, err;
        REQUIRE(cmd_declip(cfg, out, err) == kOk);
        const auto rows = lines_of(slurp(cfg.csv_path));
        REQUIRE(rows.size() == 2);
        CHECK(rows[0] == kCsvHeader);
        const auto f = fields(rows[1]);
        REQUIRE(f.size() == 8);
        CHECK(f[0] == to_string(v));
        const double sdr_in = std::stod(f[3]), sdr_out = std::stod(f[4]);
        INFO(to_string(v) << " in " << sdr_in << " out " << sdr_out);
        CHECK(sdr_out - sdr_in >= 10.0);

        // reliable samples pass through exactly; clipped ones stay outside (-theta, theta)
        const auto restored = wav::read(cfg.output_path).samples;
        REQUIRE(restored.size() == in.samples.size());
        for (std::size_t n = 0; n < restored.size(); ++n)
        {
            if (model.label(n) == SampleClass::Reliable) CHECK(restored[n] == in.samples[n]);
            else if (model.label(n) == SampleClass::ClippedHigh) CHECK(restored[n] >= model.theta());
            else CHECK(restored[n] <= -model.theta());
        }
    }
}

TEST_CASE("declip is deterministic")
{
    Fixture fx(4096);
    auto run = [&](const std::string &tag, std::size_t threads) {
        auto cfg = base_config(fx, fx.dir.file(tag + ".wav"));
        cfg.csv_path = fx.dir.file(tag + ".csv");
        cfg.variant = Variant::SSpadeDR;
        cfg.threads = threads;
        std::ostringstream out, err;
        REQUIRE(cmd_declip(cfg, out, err) == kOk);
        return std::pair{slurp(cfg.output_path), without_runtime(slurp(cfg.csv_path))};
    };
    const auto a = run("a", 1);
    const auto b = run("b", 1);
    const auto c = run("c", 3);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.first == c.first);
    CHECK(a.second == c.second);
}

TEST_CASE("declip error codes")
{
    Fixture fx(2048);
    std::ostringstream out, err;
    auto cfg = base_config(fx, fx.dir.file("o.wav"));

    auto bad = cfg;
    bad.input_path = fx.dir.file("missing.wav");
    CHECK(cmd_declip(bad, out, err) == kIoError);

    bad = cfg;
    bad.hop = 0;
    CHECK(cmd_declip(bad, out, err) == kInvalidConfig);
    bad = cfg;
    bad.theta = -1.0;
    CHECK(cmd_declip(bad, out, err) == kInvalidConfig);
    bad = cfg;
    bad.s = 0;
    CHECK(cmd_declip(bad, out, err) == kInvalidConfig);
    bad = cfg;
    bad.redundancy = {3, 2};
    bad.frame_len = 1023;
    bad.hop = 256;
    CHECK(cmd_declip(bad, out, err) == kInvalidConfig);
    bad = cfg;
    bad.output_path.clear();
    CHECK(cmd_declip(bad, out, err) == kInvalidConfig);
    bad = cfg;
    bad.reference_path = fx.dir.file("short.wav");
    wav::write_float32(bad.reference_path, std::vector<double>(10, 0.1), 44100);
    CHECK(cmd_declip(bad, out, err) == kInvalidConfig);

    {
        // PCM16 file relabelled as 24-bit
        wav::write_pcm16(fx.dir.file("pcm24.wav"), std::vector<double>(6, 0.1), 44100);
        std::fstream f(fx.dir.file("pcm24.wav"), std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(34);
        f.put(24);
    }
    bad = cfg;
    bad.input_path = fx.dir.file("pcm24.wav");
    CHECK(cmd_declip(bad, out, err) == kUnsupportedFormat);

    CHECK(err.str().find("error:") != std::string::npos);
}

TEST_CASE("stereo input is downmixed with a warning")
{
    ScratchDir dir;
    const auto mono = sinusoid_mix(2048);
    std::vector<double> stereo;
    for (double v : mono)
    {
        stereo.push_back(std::clamp(v, -0.4, 0.4));
        stereo.push_back(std::clamp(v, -0.4, 0.4));
    }
    wav::write_pcm16(dir.file("st.wav"), stereo, 8000, 2);
    RunConfig cfg;
    cfg.input_path = dir.file("st.wav");
    cfg.output_path = dir.file("o.wav");
    std::ostringstream out, err;
    CHECK(cmd_declip(cfg, out, err) == kOk);
    CHECK(err.str().find("downmixed") != std::string::npos);
    CHECK(wav::read(cfg.output_path).samples.size() == 2048);
}

TEST_CASE("clip")
{
    ScratchDir dir;
    const auto x = sinusoid_mix(5000);
    wav::write_float32(dir.file("x.wav"), x, 44100);
    std::ostringstream out, err;

    SECTION("no clipping when theta >= max |x|")
    {
        REQUIRE(cmd_clip(dir.file("x.wav"), 1.0, dir.file("c.wav"), out, err) == kOk);
        CHECK(out.str().find("clip fraction 0\n") != std::string::npos);
        CHECK(wav::read(dir.file("c.wav")).samples == wav::read(dir.file("x.wav")).samples);
    }
    SECTION("half the peak clips samples")
    {
        REQUIRE(cmd_clip(dir.file("x.wav"), 0.5, dir.file("c.wav"), out, err) == kOk);
        CHECK(out.str().find("clipped 0 of") == std::string::npos);
        const auto c = wav::read(dir.file("c.wav")).samples;
        CHECK(peak_abs(c) == 0.5);
    }
    SECTION("clip then detect recovers the ground-truth masks")
    {
        const double theta = 0.37;
        REQUIRE(cmd_clip(dir.file("x.wav"), theta, dir.file("c.wav"), out, err) == kOk);
        const auto src = wav::read(dir.file("x.wav")).samples;
        const double level = static_cast<float>(theta);
        const auto truth = detect_masks(hard_clip(src, level), level, 0.0);
        const auto got = detect_masks(wav::read(dir.file("c.wav")).samples, level, 0.0);
        CHECK(got.labels() == truth.labels());
        std::size_t beyond = 0;
        for (double v : src) beyond += std::abs(v) > level;
        CHECK(got.num_clipped() >= beyond);
    }
    SECTION("errors")
    {
        CHECK(cmd_clip(dir.file("nope.wav"), 0.5, dir.file("c.wav"), out, err) == kIoError);
        CHECK(cmd_clip(dir.file("x.wav"), 0.0, dir.file("c.wav"), out, err) == kInvalidConfig);
        CHECK(cmd_clip(dir.file("x.wav"), 0.5, dir.file("no/such/dir/c.wav"), out, err) == kIoError);
    }
}

TEST_CASE("bench")
{
    BenchConfig cfg;
    cfg.signal_len = 2048;
    cfg.base.frame_len = 512;
    cfg.base.hop = 128;
    std::ostringstream out, err;
    REQUIRE(cmd_bench(cfg, out, err) == kOk);
    const auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 1 + 9 * 3 * 2);
    CHECK(rows[0] == "variant,theta,redundancy,sdr_in_db,sdr_out_db,sdr_clipped_db,mean_iters,runtime_s");
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const auto f = fields(rows[i]);
        REQUIRE(f.size() == 8);
        INFO(rows[i]);
        CHECK(std::stod(f[4]) >= std::stod(f[3]));
        CHECK(std::stod(f[6]) >= 1.0);
    }
    CHECK(fields(rows[1])[0] == "aspade");
    CHECK(fields(rows[1])[1] == "0.1");
    CHECK(fields(rows[1])[2] == "1");
    CHECK(fields(rows.back())[0] == "sspade-dr");
    CHECK(fields(rows.back())[2] == "2");
}

TEST_CASE("bench writes to a file and rejects bad grids")
{
    ScratchDir dir;
    BenchConfig cfg;
    cfg.signal_len = 1024;
    cfg.base.frame_len = 256;
    cfg.base.hop = 64;
    cfg.theta_ratios = {0.5};
    cfg.variants = {Variant::SSpadeDR};
    cfg.redundancies = {{3, 2}};
    cfg.base.output_path = dir.file("b.csv");
    std::ostringstream out, err;
    REQUIRE(cmd_bench(cfg, out, err) == kOk);
    CHECK(out.str().empty());
    const auto rows = lines_of(slurp(cfg.base.output_path));
    REQUIRE(rows.size() == 2);
    CHECK(fields(rows[1])[2] == "3/2");
    const auto first = without_runtime(slurp(cfg.base.output_path));
    REQUIRE(cmd_bench(cfg, out, err) == kOk);
    CHECK(without_runtime(slurp(cfg.base.output_path)) == first);

    cfg.theta_ratios = {0.0};
    CHECK(cmd_bench(cfg, out, err) == kInvalidConfig);
}

TEST_CASE("verify")
{
    std::ostringstream out, err;
    SECTION("default run passes")
    {
        CHECK(cmd_verify(VerifyConfig{}, out, err) == kOk);
        CHECK(out.str().find("all checks passed") != std::string::npos);
    }
    SECTION("seed changes values but not outcomes")
    {
        std::ostringstream o2;
        VerifyConfig a, b;
        a.trials = b.trials = 10;
        b.seed = a.seed + 12345;
        CHECK(cmd_verify(a, out, err) == kOk);
        CHECK(cmd_verify(b, o2, err) == kOk);
        CHECK(out.str() != o2.str());
        const auto la = lines_of(out.str()), lb = lines_of(o2.str());
        REQUIRE(la.size() == lb.size());
        for (std::size_t i = 0; i < la.size(); ++i) CHECK(la[i].substr(0, 40) == lb[i].substr(0, 40));
    }
    SECTION("one trial still runs every family")
    {
        VerifyConfig cfg;
        cfg.trials = 1;
        CHECK(cmd_verify(cfg, out, err) == kOk);
        const auto lines = lines_of(out.str());
        CHECK(lines.size() == 1 + 8 + 1);
        for (std::size_t i = 1; i + 1 < lines.size(); ++i) CHECK(lines[i].find("PASS") != std::string::npos);
    }
    SECTION("zero trials is a configuration error")
    {
        VerifyConfig cfg;
        cfg.trials = 0;
        CHECK(cmd_verify(cfg, out, err) == kInvalidConfig);
    }
}

TEST_CASE("command-line binary")
{
    const char *bin = std::getenv("SPADE_CLI");
    if (!bin) SKIP("SPADE_CLI not set");
    ScratchDir dir;
    wav::write_float32(dir.file("x.wav"), sinusoid_mix(2048), 8000);
    auto run = [&](const std::string &args) {
        const std::string cmd = std::string(bin) + " " + args + " > " + dir.file("log.txt") + " 2>&1";
        const int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    };
    CHECK(run("verify --trials 2") == 0);
    CHECK(run("clip -i " + dir.file("x.wav") + " -o " + dir.file("c.wav") + " --theta 0.4") == 0);
    CHECK(slurp(dir.file("log.txt")).find("clip fraction") != std::string::npos);
    CHECK(run("declip -i " + dir.file("c.wav") + " -o " + dir.file("r.wav") + " --variant sspade-dr --threads 1 " +
              "--frame-len 512 --hop 128 --redundancy 3/2 -s 2 -r 1 --epsilon 0.05 --theta auto --delta-detect 1e-6 " +
              "--reference-path " + dir.file("x.wav") + " --csv " + dir.file("r.csv")) == 0);
    CHECK(lines_of(slurp(dir.file("r.csv"))).size() == 2);
    CHECK(run("declip -i " + dir.file("c.wav") + " -o " + dir.file("r.wav") + " --variant nope") == kInvalidConfig);
    CHECK(run("declip -i " + dir.file("c.wav") + " -o " + dir.file("r.wav") + " --theta abc") == kInvalidConfig);
    CHECK(run("declip -i " + dir.file("c.wav") + " -o " + dir.file("r.wav") + " --threads 0") == kInvalidConfig);
    CHECK(run("declip -i " + dir.file("missing.wav") + " -o " + dir.file("r.wav")) == kIoError);
    CHECK(run("bench --signal-len 1024 --frame-len 256 --hop 64 --thetas 0.5 --variants aspade --redundancies 1 -o " +
              dir.file("b.csv")) == 0);
    CHECK(lines_of(slurp(dir.file("b.csv"))).size() == 2);
    CHECK(run("frobnicate") == kInvalidConfig);
}
