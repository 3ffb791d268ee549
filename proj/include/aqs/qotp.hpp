#pragma once

#include <string>

#include "aqs/errors.hpp"
#include "aqs/pad_key.hpp"
#include "aqs/qubit.hpp"

namespace aqs {

namespace detail {
inline void check_key_fits(const PadKey& key, const QubitString& s, const char* what) {
    if (key.size() != 2 * s.size()) {
        throw KeyLengthError(std::string(what) + ": key of " + std::to_string(key.size()) +
                             " bits cannot pad " + std::to_string(s.size()) + " qubits");
    }
}
}  // namespace detail

// Quantum one-time pad: qubit i transformed by the Pauli selected by key
// bits (2i, 2i+1).
inline QubitString qotp_encrypt(const PadKey& key, const QubitString& s) {
    detail::check_key_fits(key, s, "qotp_encrypt");
    QubitString out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(pauli_apply(key.pauli_at(i), s[i]));
    }
    return out;
}

// Exact inverse of qotp_encrypt under the same key.
inline QubitString qotp_decrypt(const PadKey& key, const QubitString& s) {
    detail::check_key_fits(key, s, "qotp_decrypt");
    QubitString out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(pauli_unapply(key.pauli_at(i), s[i]));
    }
    return out;
}

namespace detail {
inline void check_key_covers(const PadKey& key, const QubitString& s, const char* what) {
    if (key.qubit_capacity() < s.size()) {
        throw KeyLengthError(std::string(what) + ": key covers " +
                             std::to_string(key.qubit_capacity()) + " qubits, need " +
                             std::to_string(s.size()));
    }
}
}  // namespace detail

// Tuple components encrypted under one party key are padded with the key
// prefix; components of equal length to the key capacity reduce to the
// exact operations above.
inline QubitString qotp_encrypt_prefix(const PadKey& key, const QubitString& s) {
    detail::check_key_covers(key, s, "qotp_encrypt_prefix");
    QubitString out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(pauli_apply(key.pauli_at(i), s[i]));
    }
    return out;
}

inline QubitString qotp_decrypt_prefix(const PadKey& key, const QubitString& s) {
    detail::check_key_covers(key, s, "qotp_decrypt_prefix");
    QubitString out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(pauli_unapply(key.pauli_at(i), s[i]));
    }
    return out;
}

}  // namespace aqs
