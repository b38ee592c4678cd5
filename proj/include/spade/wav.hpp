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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spade::wav
{
    class WavError : public std::runtime_error
    {
      public:
        enum class Kind
        {
            Unreadable,   ///< missing file, I/O failure, truncated or malformed RIFF
            Unsupported   ///< well-formed but not PCM16 / float32 with 1 or 2 channels
        };

        WavError(Kind kind, const std::string &msg) : std::runtime_error(msg), kind_(kind) {}
        Kind kind() const noexcept { return kind_; }

      private:
        Kind kind_;
    };

    enum class SampleFormat
    {
        Pcm16,
        Float32
    };

    struct Audio
    {
        std::uint32_t sample_rate = 44100;
        std::uint16_t source_channels = 1;  ///< channels in the file before downmix
        SampleFormat source_format = SampleFormat::Float32;
        std::vector<double> samples;        ///< mono, nominally in [-1, 1]
    };

    namespace detail
    {
        static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

        template <typename T>
        T read_le(const std::vector<char> &buf, std::size_t pos)
        {
            T v;
            std::memcpy(&v, buf.data() + pos, sizeof(T));
            return v;
        }

        template <typename T>
        void put_le(std::vector<char> &buf, T v)
        {
            const auto *p = reinterpret_cast<const char *>(&v);
            buf.insert(buf.end(), p, p + sizeof(T));
        }

        constexpr std::uint16_t kFormatPcm = 1;
        constexpr std::uint16_t kFormatFloat = 3;
        constexpr std::uint16_t kFormatExtensible = 0xFFFE;
    }  // namespace detail

    /// Reads a PCM16 or float32 RIFF/WAVE file. Stereo is averaged to mono.
    inline Audio read(const std::string &path)
    {
        using detail::read_le;
        std::ifstream in(path, std::ios::binary);
        if (!in) throw WavError(WavError::Kind::Unreadable, "cannot open '" + path + "'");
        std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 || std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
            throw WavError(WavError::Kind::Unreadable, "'" + path + "' is not a RIFF/WAVE file");

        bool have_fmt = false;
        std::uint16_t format = 0, channels = 0, bits = 0;
        std::uint32_t rate = 0;
        const char *data = nullptr;
        std::size_t data_len = 0;
        for (std::size_t pos = 12; pos + 8 <= buf.size();)
        {
            const auto id = std::string(buf.data() + pos, 4);
            const auto len = static_cast<std::size_t>(read_le<std::uint32_t>(buf, pos + 4));
            const std::size_t body = pos + 8;
            if (body + len > buf.size())
            {
                if (id != "data") throw WavError(WavError::Kind::Unreadable, "truncated chunk '" + id + "'");
            }
            if (id == "fmt ")
            {
                if (len < 16) throw WavError(WavError::Kind::Unreadable, "short fmt chunk");
                format = read_le<std::uint16_t>(buf, body);
                channels = read_le<std::uint16_t>(buf, body + 2);
                rate = read_le<std::uint32_t>(buf, body + 4);
                bits = read_le<std::uint16_t>(buf, body + 14);
                if (format == detail::kFormatExtensible && len >= 26) format = read_le<std::uint16_t>(buf, body + 24);
                have_fmt = true;
            }
            else if (id == "data")
            {
                data = buf.data() + body;
                data_len = std::min(len, buf.size() - body);
            }
            pos = body + len + (len & 1u);
        }
        if (!have_fmt || data == nullptr) throw WavError(WavError::Kind::Unreadable, "missing fmt or data chunk");

        Audio audio;
        audio.sample_rate = rate;
        audio.source_channels = channels;
        if (format == detail::kFormatPcm && bits == 16)
            audio.source_format = SampleFormat::Pcm16;
        else if (format == detail::kFormatFloat && bits == 32)
            audio.source_format = SampleFormat::Float32;
        else
            throw WavError(WavError::Kind::Unsupported, "only PCM16 and float32 WAV are supported (format " +
                                                            std::to_string(format) + ", " + std::to_string(bits) +
                                                            " bits)");
        if (channels != 1 && channels != 2)
            throw WavError(WavError::Kind::Unsupported, std::to_string(channels) + " channels not supported");

        const std::size_t width = bits / 8;
        const std::size_t frames = data_len / (width * channels);
        audio.samples.resize(frames);
        for (std::size_t f = 0; f < frames; ++f)
        {
            double acc = 0.0;
            for (std::size_t c = 0; c < channels; ++c)
            {
                const char *p = data + (f * channels + c) * width;
                if (audio.source_format == SampleFormat::Pcm16)
                {
                    std::int16_t v;
                    std::memcpy(&v, p, 2);
                    acc += static_cast<double>(v) / 32768.0;
                }
                else
                {
                    float v;
                    std::memcpy(&v, p, 4);
                    acc += static_cast<double>(v);
                }
            }
            audio.samples[f] = channels == 1 ? acc : 0.5 * acc;
        }
        return audio;
    }

    /// Writes mono float32 samples.
    inline void write_float32(const std::string &path, std::span<const float> samples, std::uint32_t sample_rate)
    {
        using detail::put_le;
        const auto data_len = static_cast<std::uint32_t>(samples.size() * 4);
        std::vector<char> buf;
        buf.reserve(44 + data_len);
        buf.insert(buf.end(), {'R', 'I', 'F', 'F'});
        put_le<std::uint32_t>(buf, 36 + data_len);
        buf.insert(buf.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
        put_le<std::uint32_t>(buf, 16);
        put_le<std::uint16_t>(buf, detail::kFormatFloat);
        put_le<std::uint16_t>(buf, 1);
        put_le<std::uint32_t>(buf, sample_rate);
        put_le<std::uint32_t>(buf, sample_rate * 4);
        put_le<std::uint16_t>(buf, 4);
        put_le<std::uint16_t>(buf, 32);
        buf.insert(buf.end(), {'d', 'a', 't', 'a'});
        put_le<std::uint32_t>(buf, data_len);
        for (float v : samples) put_le<float>(buf, v);

        std::ofstream out(path, std::ios::binary);
        if (!out) throw WavError(WavError::Kind::Unreadable, "cannot write '" + path + "'");
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) throw WavError(WavError::Kind::Unreadable, "write failed for '" + path + "'");
    }

    inline void write_float32(const std::string &path, std::span<const double> samples, std::uint32_t sample_rate)
    {
        std::vector<float> f(samples.begin(), samples.end());
        write_float32(path, f, sample_rate);
    }

    /// 16-bit PCM writer, used to produce test fixtures.
    inline void write_pcm16(const std::string &path, std::span<const double> samples, std::uint32_t sample_rate,
                            std::uint16_t channels = 1)
    {
        using detail::put_le;
        const auto data_len = static_cast<std::uint32_t>(samples.size() * 2);
        std::vector<char> buf;
        buf.insert(buf.end(), {'R', 'I', 'F', 'F'});
        put_le<std::uint32_t>(buf, 36 + data_len);
        buf.insert(buf.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
        put_le<std::uint32_t>(buf, 16);
        put_le<std::uint16_t>(buf, detail::kFormatPcm);
        put_le<std::uint16_t>(buf, channels);
        put_le<std::uint32_t>(buf, sample_rate);
        put_le<std::uint32_t>(buf, sample_rate * 2u * channels);
        put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(2 * channels));
        put_le<std::uint16_t>(buf, 16);
        buf.insert(buf.end(), {'d', 'a', 't', 'a'});
        put_le<std::uint32_t>(buf, data_len);
        for (double v : samples)
            put_le<std::int16_t>(buf, static_cast<std::int16_t>(std::clamp(std::lround(v * 32768.0), -32768L, 32767L)));
        std::ofstream out(path, std::ios::binary);
        if (!out) throw WavError(WavError::Kind::Unreadable, "cannot write '" + path + "'");
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
}  // namespace spade::wav
