// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"

namespace lvq {

namespace detail {

inline std::uint32_t rd_u32(const std::string& b, std::size_t off) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(b[off])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 3])) << 24;
}

inline std::uint16_t rd_u16(const std::string& b, std::size_t off) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(b[off]) |
                                      (static_cast<unsigned char>(b[off + 1]) << 8));
}

} // namespace detail

// Reads a RIFF/WAVE file: PCM 16-bit or IEEE float 32-bit, mono or stereo.
// Stereo is downmixed by averaging; int16 is normalized by 1/32768.
inline AudioTrack parse_wav(const std::string& bytes) {
    using detail::rd_u16;
    using detail::rd_u32;

    if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 || bytes.compare(8, 4, "WAVE") != 0)
        throw FormatError("not a RIFF/WAVE file");

    bool have_fmt = false;
    std::uint16_t codec = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::size_t data_off = 0, data_len = 0;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::string id = bytes.substr(pos, 4);
        const std::uint32_t len = rd_u32(bytes, pos + 4);
        const std::size_t body = pos + 8;
        if (id == "fmt ") {
            if (len < 16 || body + 16 > bytes.size())
                throw FormatError("truncated fmt chunk");
            codec = rd_u16(bytes, body);
            channels = rd_u16(bytes, body + 2);
            rate = rd_u32(bytes, body + 4);
            bits = rd_u16(bytes, body + 14);
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) throw FormatError("data chunk precedes fmt chunk");
            if (body + len > bytes.size()) throw FormatError("truncated data chunk");
            data_off = body;
            data_len = len;
            have_data = true;
            break;
        }
        pos = body + len + (len & 1u); // chunks are word-aligned
    }

    if (!have_fmt) throw FormatError("missing fmt chunk");
    if (!have_data) throw FormatError("missing data chunk");
    if (channels != 1 && channels != 2)
        throw UnsupportedError("unsupported channel count: " + std::to_string(channels));
    const bool pcm16 = (codec == 1 && bits == 16);
    const bool f32 = (codec == 3 && bits == 32);
    if (!pcm16 && !f32)
        throw UnsupportedError("unsupported codec: format tag " + std::to_string(codec) + ", " +
                               std::to_string(bits) + " bits");
    if (rate < 8000)
        throw UnsupportedError("sample rate below 8000 Hz: " + std::to_string(rate));

    const std::size_t bytes_per = (pcm16 ? 2u : 4u) * channels;
    if (data_len % bytes_per != 0) throw FormatError("data chunk is not a whole number of frames");
    const std::size_t n = data_len / bytes_per;

    AudioTrack track;
    track.sample_rate = static_cast<int>(rate);
    track.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c) {
            const std::size_t off = data_off + (i * channels + c) * (pcm16 ? 2u : 4u);
            if (pcm16) {
                const std::int16_t v = static_cast<std::int16_t>(rd_u16(bytes, off));
                acc += static_cast<double>(v) / 32768.0;
            } else {
                std::uint32_t u = rd_u32(bytes, off);
                float f;
                std::memcpy(&f, &u, sizeof f);
                acc += f;
            }
        }
        track.samples[i] = static_cast<float>(acc / channels);
    }
    return track;
}

inline AudioTrack load_wav(const std::filesystem::path& path) {
    return parse_wav(read_file(path));
}

// Serializes mono float samples as PCM 16-bit with clipping.
inline std::string dump_wav16(const std::vector<float>& samples, int sample_rate) {
    const std::uint32_t n = static_cast<std::uint32_t>(samples.size());
    const std::uint32_t data_len = n * 2;
    std::string out;
    out.reserve(44 + data_len);
    auto u32 = [&out](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    };
    auto u16 = [&out](std::uint16_t v) {
        for (int i = 0; i < 2; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    };
    out += "RIFF";
    u32(36 + data_len);
    out += "WAVEfmt ";
    u32(16);
    u16(1); // PCM
    u16(1); // mono
    u32(static_cast<std::uint32_t>(sample_rate));
    u32(static_cast<std::uint32_t>(sample_rate) * 2);
    u16(2);
    u16(16);
    out += "data";
    u32(data_len);
    for (float s : samples) {
        double v = std::lround(std::fmin(1.0, std::fmax(-1.0, static_cast<double>(s))) * 32767.0);
        u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
    return out;
}

inline void save_wav16(const std::filesystem::path& path, const std::vector<float>& samples,
                       int sample_rate) {
    atomic_write_file(path, dump_wav16(samples, sample_rate));
}

} // namespace lvq
