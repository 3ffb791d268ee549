#pragma once

#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>

namespace aqs {

// FNV-1a, 64 bit. Digests appear in transcripts, so they must be stable
// across runs and platforms; amplitudes are quantized to 12 decimal digits
// before hashing so that two runs producing the same states (up to
// arithmetic noise below the quantum) digest identically.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline std::string digest_text(std::string_view data) {
    return hex64(fnv1a(data));
}

// Quantize a real amplitude component to 12 decimal digits, avoiding the
// "-0" formatting trap.
inline std::string quantized(double x) {
    long long q = std::llround(x * 1e12);
    if (q == 0) q = 0;  // normalize -0
    return std::to_string(q);
}

}  // namespace aqs
