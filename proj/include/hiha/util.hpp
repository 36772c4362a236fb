#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "hiha/errors.hpp"

namespace hiha {

// ---------------------------------------------------------------------------
// Deterministic RNG. splitmix64 for seed derivation, xoshiro-free: we stick
// with splitmix64 as the stream generator too; statistical quality is more
// than enough for weight init and voxel subsampling, and the byte stream is
// fully pinned by this file (no implementation-defined distributions).
// ---------------------------------------------------------------------------

struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint32_t next_u32() { return static_cast<uint32_t>(next_u64() >> 32); }

    /// Uniform in [0, 1), 24 bits of mantissa.
    float next_float() {
        return static_cast<float>(next_u32() >> 8) * (1.0f / 16777216.0f);
    }

    /// Uniform in [lo, hi).
    float next_uniform(float lo, float hi) {
        return lo + (hi - lo) * next_float();
    }

    double next_double() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) { return n ? next_u64() % n : 0; }
};

/// Stable sub-seed derivation: mixes a stream tag into a parent seed so that
/// parallel tasks get independent, schedule-invariant streams.
inline uint64_t derive_seed(uint64_t parent, uint64_t tag) {
    uint64_t z = parent ^ (0x9e3779b97f4a7c15ull + (tag << 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// IEEE 754 binary16 conversion (round to nearest even). Used by the optional
// 16-bit weight mode in the container.
// ---------------------------------------------------------------------------

inline uint16_t float_to_half(float f) {
    uint32_t x;
    std::memcpy(&x, &f, 4);
    const uint32_t sign = (x >> 16) & 0x8000u;
    uint32_t exp = (x >> 23) & 0xffu;
    uint32_t mant = x & 0x7fffffu;
    if (exp == 0xff) return static_cast<uint16_t>(sign | 0x7c00u | (mant ? 0x200u : 0));
    // Shift to half precision with rounding.
    int new_exp = static_cast<int>(exp) - 127 + 15;
    if (new_exp >= 0x1f) return static_cast<uint16_t>(sign | 0x7c00u);  // overflow -> inf
    if (new_exp <= 0) {
        // Subnormal or zero.
        if (new_exp < -10) return static_cast<uint16_t>(sign);
        mant |= 0x800000u;
        const int shift = 14 - new_exp;
        uint32_t half_mant = mant >> shift;
        const uint32_t rem = mant & ((1u << shift) - 1);
        const uint32_t halfway = 1u << (shift - 1);
        if (rem > halfway || (rem == halfway && (half_mant & 1))) half_mant++;
        return static_cast<uint16_t>(sign | half_mant);
    }
    uint32_t half_mant = mant >> 13;
    const uint32_t rem = mant & 0x1fffu;
    if (rem > 0x1000u || (rem == 0x1000u && (half_mant & 1))) {
        half_mant++;
        if (half_mant == 0x400u) {
            half_mant = 0;
            new_exp++;
            if (new_exp >= 0x1f) return static_cast<uint16_t>(sign | 0x7c00u);
        }
    }
    return static_cast<uint16_t>(sign | (static_cast<uint32_t>(new_exp) << 10) | half_mant);
}

inline float half_to_float(uint16_t h) {
    const uint32_t sign = (h & 0x8000u) << 16;
    uint32_t exp = (h >> 10) & 0x1fu;
    uint32_t mant = h & 0x3ffu;
    uint32_t x;
    if (exp == 0) {
        if (mant == 0) {
            x = sign;
        } else {
            // Normalize subnormal.
            int e = -1;
            do {
                mant <<= 1;
                e++;
            } while (!(mant & 0x400u));
            mant &= 0x3ffu;
            x = sign | (static_cast<uint32_t>(127 - 15 - e) << 23) | (mant << 13);
        }
    } else if (exp == 0x1f) {
        x = sign | 0x7f800000u | (mant << 13);
    } else {
        x = sign | ((exp - 15 + 127) << 23) | (mant << 13);
    }
    float f;
    std::memcpy(&f, &x, 4);
    return f;
}

// ---------------------------------------------------------------------------
// Little-endian byte buffer writer/reader for the wire formats.
// ---------------------------------------------------------------------------

class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u16(uint16_t v) { append(&v, 2); }
    void u32(uint32_t v) { append(&v, 4); }
    void u64(uint64_t v) { append(&v, 8); }
    void f32(float v) { append(&v, 4); }
    void f64(double v) { append(&v, 8); }
    void bytes(const void* p, size_t n) { append(p, n); }
    void str(const std::string& s) {
        if (s.size() > 0xffff) throw Error("string too long for wire format");
        u16(static_cast<uint16_t>(s.size()));
        append(s.data(), s.size());
    }

    size_t size() const { return buf_.size(); }
    const std::vector<uint8_t>& data() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }
    void patch_u64(size_t offset, uint64_t v) { std::memcpy(buf_.data() + offset, &v, 8); }

private:
    void append(const void* p, size_t n) {
        const auto* b = static_cast<const uint8_t*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    std::vector<uint8_t> buf_;
    static_assert(std::endian::native == std::endian::little,
                  "wire format writer assumes a little-endian host");
};

class ByteReader {
public:
    ByteReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

    size_t offset() const { return pos_; }
    size_t remaining() const { return size_ - pos_; }
    bool at_end() const { return pos_ == size_; }

    void set_context(const char* section) { context_ = section; }

    uint8_t u8() { return *take(1); }
    uint16_t u16() { return read_as<uint16_t>(); }
    uint32_t u32() { return read_as<uint32_t>(); }
    uint64_t u64() { return read_as<uint64_t>(); }
    float f32() { return read_as<float>(); }
    double f64() { return read_as<double>(); }
    std::string str() {
        const size_t n = u16();
        const uint8_t* p = take(n);
        return std::string(reinterpret_cast<const char*>(p), n);
    }
    const uint8_t* raw(size_t n) { return take(n); }

private:
    template <typename T>
    T read_as() {
        T v;
        std::memcpy(&v, take(sizeof(T)), sizeof(T));
        return v;
    }
    const uint8_t* take(size_t n) {
        if (pos_ + n > size_) {
            throw ArchiveError(ArchiveError::Kind::Truncated,
                               "truncated while reading " + std::string(context_) +
                                   " at offset " + std::to_string(pos_));
        }
        const uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }
    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
    const char* context_ = "stream";
};

// ---------------------------------------------------------------------------

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace hiha
