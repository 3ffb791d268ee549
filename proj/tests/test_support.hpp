#pragma once

// Test-only oracles kept independent of the library's computation paths:
// explicit 2x2 matrix algebra for the pad operations, full three-qubit
// tensor products with explicit Bell-basis projection for the measurement
// branches, and density-matrix averaging for the pad-secrecy check.

#include <array>
#include <cmath>
#include <complex>

#include "aqs/bell.hpp"
#include "aqs/pad_key.hpp"
#include "aqs/qubit.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;
using Vec2 = std::array<Complex, 2>;

inline Mat2 mat_i() { return {{{1, 0}, {0, 1}}}; }
inline Mat2 mat_x() { return {{{0, 1}, {1, 0}}}; }
inline Mat2 mat_z() { return {{{1, 0}, {0, -1}}}; }

inline Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 c{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return c;
}

inline Vec2 mat_apply(const Mat2& m, const Vec2& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

inline Mat2 pauli_matrix(aqs::Pauli p) {
    switch (p) {
        case aqs::Pauli::I: return mat_i();
        case aqs::Pauli::X: return mat_x();
        case aqs::Pauli::Z: return mat_z();
        case aqs::Pauli::XZ: return mul(mat_x(), mat_z());
    }
    return mat_i();
}

inline Mat2 inverse(const Mat2& m) {
    // All pad matrices are unitary with determinant +-1; conjugate transpose.
    Mat2 inv;
    inv[0][0] = std::conj(m[0][0]);
    inv[0][1] = std::conj(m[1][0]);
    inv[1][0] = std::conj(m[0][1]);
    inv[1][1] = std::conj(m[1][1]);
    return inv;
}

inline Vec2 as_vec(const aqs::Qubit& q) { return {q.amp0(), q.amp1()}; }

inline double vec_fidelity(const Vec2& a, const Vec2& b) {
    return std::norm(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
}

// 2x2 density matrix of the uniform mixture of the four one-qubit pad
// encryptions of q.
inline Mat2 pad_average_density(const aqs::Qubit& q) {
    Mat2 rho{};
    for (aqs::Pauli p : {aqs::Pauli::I, aqs::Pauli::X, aqs::Pauli::Z, aqs::Pauli::XZ}) {
        Vec2 v = mat_apply(pauli_matrix(p), as_vec(q));
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                rho[i][j] += 0.25 * v[i] * std::conj(v[j]);
            }
        }
    }
    return rho;
}

// Full three-qubit route for one Bell branch: build p (x) joint over basis
// |m a b> and project (m, a) onto the explicit Bell vector for `outcome`.
// Returns the branch probability and writes the normalized remote state.
inline double bell_branch(const aqs::Qubit& p, const aqs::BellPair& pair,
                          aqs::BellOutcome outcome, Vec2& remote_out) {
    std::array<Complex, 8> amps{};  // index 4m + 2a + b
    Vec2 pv = as_vec(p);
    for (int m = 0; m < 2; ++m) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                amps[static_cast<std::size_t>(4 * m + 2 * a + b)] =
                    pv[static_cast<std::size_t>(m)] * pair.joint[static_cast<std::size_t>(2 * a + b)];
            }
        }
    }

    const double s = 1.0 / std::sqrt(2.0);
    // Bell vector components over (m, a) pairs 00, 01, 10, 11.
    std::array<Complex, 4> bell{};
    switch (outcome) {
        case aqs::BellOutcome::PhiPlus: bell = {s, 0, 0, s}; break;
        case aqs::BellOutcome::PhiMinus: bell = {s, 0, 0, -s}; break;
        case aqs::BellOutcome::PsiPlus: bell = {0, s, s, 0}; break;
        case aqs::BellOutcome::PsiMinus: bell = {0, s, -s, 0}; break;
    }

    Vec2 remote{};
    for (int b = 0; b < 2; ++b) {
        Complex acc = 0;
        for (int m = 0; m < 2; ++m) {
            for (int a = 0; a < 2; ++a) {
                acc += std::conj(bell[static_cast<std::size_t>(2 * m + a)]) *
                       amps[static_cast<std::size_t>(4 * m + 2 * a + b)];
            }
        }
        remote[static_cast<std::size_t>(b)] = acc;
    }
    double prob = std::norm(remote[0]) + std::norm(remote[1]);
    if (prob > 0) {
        double inv = 1.0 / std::sqrt(prob);
        remote[0] *= inv;
        remote[1] *= inv;
    }
    remote_out = remote;
    return prob;
}

}  // namespace oracle
