#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aqs/digest.hpp"
#include "aqs/errors.hpp"
#include "aqs/qubit.hpp"
#include "aqs/rng.hpp"

namespace aqs {

// Classical bit string read two bits per qubit, selecting the pad operation:
// 00 -> I, 01 -> X, 10 -> Z, 11 -> XZ. Covers r, K_A, K_B, K_AB and K_C.
class PadKey {
public:
    PadKey() = default;

    explicit PadKey(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        if (bits_.size() % 2 != 0) {
            throw KeyLengthError("pad key length must be even, got " + std::to_string(bits_.size()));
        }
        for (auto b : bits_) {
            if (b > 1) throw KeyLengthError("pad key bits must be 0 or 1");
        }
    }

    static PadKey zeros(std::size_t n_bits) {
        return PadKey(std::vector<std::uint8_t>(n_bits, 0));
    }

    static PadKey random(std::size_t n_bits, SeededRng& rng) {
        std::vector<std::uint8_t> bits(n_bits);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
        return PadKey(std::move(bits));
    }

    static PadKey from_string(const std::string& s) {
        std::vector<std::uint8_t> bits;
        bits.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw KeyLengthError("pad key string must be binary");
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return PadKey(std::move(bits));
    }

    std::size_t size() const { return bits_.size(); }
    std::size_t qubit_capacity() const { return bits_.size() / 2; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    Pauli pauli_at(std::size_t qubit_index) const {
        int hi = bits_[2 * qubit_index];
        int lo = bits_[2 * qubit_index + 1];
        switch (hi * 2 + lo) {
            case 0: return Pauli::I;
            case 1: return Pauli::X;
            case 2: return Pauli::Z;
            default: return Pauli::XZ;
        }
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    bool operator==(const PadKey& other) const { return bits_ == other.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

inline std::string digest(const PadKey& k) {
    return digest_text(k.to_string());
}

}  // namespace aqs
