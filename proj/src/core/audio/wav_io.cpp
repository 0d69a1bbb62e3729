#include "core/audio/wav_io.hpp"

#include "core/error.hpp"
#include "core/log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace nws::audio {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

uint32_t read_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 24) & 0xFF));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
}

} // namespace

Waveform read_wav(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) fail(ErrKind::io, "cannot open wav file: %s", path.c_str());

    uint8_t riff[12];
    if (std::fread(riff, 1, 12, f.get()) != 12 || std::memcmp(riff, "RIFF", 4) != 0 ||
        std::memcmp(riff + 8, "WAVE", 4) != 0)
        fail(ErrKind::format, "%s: not a RIFF/WAVE file", path.c_str());

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t sample_rate = 0;
    bool have_fmt = false;
    std::vector<uint8_t> data;
    bool have_data = false;

    for (;;) {
        uint8_t chunk[8];
        if (std::fread(chunk, 1, 8, f.get()) != 8) break;
        const uint32_t chunk_size = read_u32(chunk + 4);
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            std::vector<uint8_t> fmt(chunk_size);
            if (chunk_size < 16 || std::fread(fmt.data(), 1, chunk_size, f.get()) != chunk_size)
                fail(ErrKind::format, "%s: malformed fmt chunk", path.c_str());
            format = read_u16(fmt.data());
            channels = read_u16(fmt.data() + 2);
            sample_rate = read_u32(fmt.data() + 4);
            bits = read_u16(fmt.data() + 14);
            if (format == kFormatExtensible && chunk_size >= 26) {
                // First two bytes of the SubFormat GUID carry the real tag.
                format = read_u16(fmt.data() + 24);
            }
            have_fmt = true;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            data.resize(chunk_size);
            if (std::fread(data.data(), 1, chunk_size, f.get()) != chunk_size)
                fail(ErrKind::format, "%s: truncated data chunk", path.c_str());
            have_data = true;
        } else {
            // Skip unknown chunk (word aligned).
            if (std::fseek(f.get(), static_cast<long>(chunk_size + (chunk_size & 1)), SEEK_CUR) != 0)
                break;
            continue;
        }
        if (chunk_size & 1) std::fseek(f.get(), 1, SEEK_CUR);
    }

    if (!have_fmt || !have_data)
        fail(ErrKind::format, "%s: missing fmt or data chunk", path.c_str());
    if (channels == 0 || sample_rate == 0)
        fail(ErrKind::format, "%s: malformed header (channels=%u rate=%u)", path.c_str(),
             channels, sample_rate);

    const bool pcm16 = format == kFormatPcm && bits == 16;
    const bool pcm24 = format == kFormatPcm && bits == 24;
    const bool f32 = format == kFormatFloat && bits == 32;
    if (!pcm16 && !pcm24 && !f32)
        fail(ErrKind::format, "%s: unsupported encoding (format=%u bits=%u)", path.c_str(),
             format, bits);

    if (channels > 1)
        log_info("%s: %u channels, keeping channel 0", path.c_str(), channels);

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * channels;
    const std::size_t n_frames = data.size() / frame_bytes;
    if (n_frames == 0) fail(ErrKind::format, "%s: empty audio", path.c_str());

    Waveform w;
    w.sample_rate = static_cast<int>(sample_rate);
    w.samples.resize(n_frames);
    const uint8_t* p = data.data();
    for (std::size_t i = 0; i < n_frames; ++i, p += frame_bytes) {
        float v;
        if (pcm16) {
            const int16_t s = static_cast<int16_t>(read_u16(p));
            v = static_cast<float>(s) / 32768.0f;
        } else if (pcm24) {
            int32_t s = static_cast<int32_t>(p[0]) | (static_cast<int32_t>(p[1]) << 8) |
                        (static_cast<int32_t>(p[2]) << 16);
            if (s & 0x800000) s |= ~0xFFFFFF; // sign extend
            v = static_cast<float>(s) / 8388608.0f;
        } else {
            float raw;
            std::memcpy(&raw, p, 4);
            if (!std::isfinite(raw))
                fail(ErrKind::format, "%s: non-finite sample at frame %zu", path.c_str(), i);
            v = std::clamp(raw, -1.0f, 1.0f);
        }
        w.samples[i] = v;
    }
    return w;
}

void write_wav(const Waveform& w, const std::string& path, int bit_depth) {
    if (bit_depth != 16 && bit_depth != 24)
        fail(ErrKind::invalid_arg, "unsupported wav bit depth %d (use 16 or 24)", bit_depth);
    if (w.sample_rate <= 0)
        fail(ErrKind::invalid_arg, "waveform has no sample rate");

    const int bytes_per_sample = bit_depth / 8;
    const uint32_t data_bytes = static_cast<uint32_t>(w.samples.size() * bytes_per_sample);

    std::vector<uint8_t> out;
    out.reserve(44 + data_bytes);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_bytes);
    out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, 1); // mono
    put_u32(out, static_cast<uint32_t>(w.sample_rate));
    put_u32(out, static_cast<uint32_t>(w.sample_rate * bytes_per_sample));
    put_u16(out, static_cast<uint16_t>(bytes_per_sample));
    put_u16(out, static_cast<uint16_t>(bit_depth));
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_bytes);

    const double scale = bit_depth == 16 ? 32768.0 : 8388608.0;
    const long lo = bit_depth == 16 ? -32768 : -8388608;
    const long hi = bit_depth == 16 ? 32767 : 8388607;
    for (float s : w.samples) {
        const double x = std::clamp(static_cast<double>(s), -1.0, 1.0);
        const long q = std::clamp(std::lround(x * scale), lo, hi);
        out.push_back(static_cast<uint8_t>(q & 0xFF));
        out.push_back(static_cast<uint8_t>((q >> 8) & 0xFF));
        if (bit_depth == 24) out.push_back(static_cast<uint8_t>((q >> 16) & 0xFF));
    }

    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) fail(ErrKind::io, "cannot write wav file: %s", path.c_str());
    if (std::fwrite(out.data(), 1, out.size(), f.get()) != out.size())
        fail(ErrKind::io, "short write: %s", path.c_str());
}

} // namespace nws::audio
