#pragma once

#include "core/error.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "serialized formats are little-endian; big-endian hosts need byte swaps");

namespace nws {

std::vector<uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes);

// Append-only builder for the little-endian binary containers.
class ByteBuf {
public:
    void put_u8(uint8_t v) { bytes_.push_back(v); }
    void put_u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
    }
    void put_f32(float v) {
        uint8_t raw[4];
        std::memcpy(raw, &v, 4);
        bytes_.insert(bytes_.end(), raw, raw + 4);
    }
    void put_raw(const void* p, std::size_t n) {
        const uint8_t* b = static_cast<const uint8_t*>(p);
        bytes_.insert(bytes_.end(), b, b + n);
    }
    // u32 length prefix then the bytes.
    void put_str(const std::string& s) {
        put_u32(static_cast<uint32_t>(s.size()));
        put_raw(s.data(), s.size());
    }

    const std::vector<uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<uint8_t> bytes_;
};

// Bounds-checked reader; every overrun reports the failing field by name.
class ByteCursor {
public:
    ByteCursor(const std::vector<uint8_t>& bytes, std::string context)
        : bytes_(bytes), context_(std::move(context)) {}

    uint8_t u8(const char* field) {
        need(1, field);
        return bytes_[pos_++];
    }
    uint32_t u32(const char* field) {
        need(4, field);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }
    float f32(const char* field) {
        need(4, field);
        float v;
        std::memcpy(&v, bytes_.data() + pos_, 4);
        pos_ += 4;
        return v;
    }
    std::string str(const char* field) {
        const uint32_t n = u32(field);
        need(n, field);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    void raw(void* out, std::size_t n, const char* field) {
        need(n, field);
        std::memcpy(out, bytes_.data() + pos_, n);
        pos_ += n;
    }
    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    void need(std::size_t n, const char* field) {
        if (pos_ + n > bytes_.size())
            fail(ErrKind::format, "%s: truncated %s", context_.c_str(), field);
    }

    const std::vector<uint8_t>& bytes_;
    std::string context_;
    std::size_t pos_ = 0;
};

} // namespace nws
