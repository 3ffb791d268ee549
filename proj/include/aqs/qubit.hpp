#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "aqs/digest.hpp"
#include "aqs/errors.hpp"
#include "aqs/rng.hpp"

namespace aqs {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kStateTolerance = 1e-9;  // default for state comparisons

// A single-qubit pure state (amp0 |0> + amp1 |1>), kept normalized.
class Qubit {
public:
    Qubit() : a0_(1.0, 0.0), a1_(0.0, 0.0) {}

    // Requires a unit vector; use normalized() for raw amplitudes.
    Qubit(Complex amp0, Complex amp1) : a0_(amp0), a1_(amp1) {
        double n = std::norm(a0_) + std::norm(a1_);
        if (std::abs(n - 1.0) > 1e-9) {
            throw InvalidStateError("qubit amplitudes not normalized: |a|^2 = " + std::to_string(n));
        }
    }

    // Scales (amp0, amp1) to unit norm. Zero vector is rejected.
    static Qubit normalized(Complex amp0, Complex amp1) {
        double n = std::sqrt(std::norm(amp0) + std::norm(amp1));
        if (n == 0.0) {
            throw InvalidStateError("cannot normalize the zero vector");
        }
        Qubit q;
        q.a0_ = amp0 / n;
        q.a1_ = amp1 / n;
        return q;
    }

    static Qubit zero() { return Qubit(1.0, 0.0); }
    static Qubit one() { return Qubit(0.0, 1.0); }
    static Qubit plus() { return normalized(1.0, 1.0); }

    Complex amp0() const { return a0_; }
    Complex amp1() const { return a1_; }

    double norm_squared() const { return std::norm(a0_) + std::norm(a1_); }

private:
    Complex a0_, a1_;
};

inline Qubit qubit_normalize(Complex amp0, Complex amp1) {
    return Qubit::normalized(amp0, amp1);
}

// |<a|b>|^2; 1 iff equal up to global phase.
inline double fidelity(const Qubit& a, const Qubit& b) {
    return std::norm(std::conj(a.amp0()) * b.amp0() + std::conj(a.amp1()) * b.amp1());
}

inline bool qubit_equal(const Qubit& a, const Qubit& b, double tol = kStateTolerance) {
    return fidelity(a, b) >= 1.0 - tol;
}

// The quantum one-time pad alphabet. XZ is the matrix product X*Z
// (Z applied first).
enum class Pauli { I, X, Z, XZ };

inline Qubit pauli_apply(Pauli op, const Qubit& q) {
    switch (op) {
        case Pauli::I:
            return q;
        case Pauli::X:
            return Qubit(q.amp1(), q.amp0());
        case Pauli::Z:
            return Qubit(q.amp0(), -q.amp1());
        case Pauli::XZ:
            return Qubit(-q.amp1(), q.amp0());
    }
    throw InvalidStateError("unknown pauli");
}

// Inverse action: I, X, Z are involutions; (XZ)^-1 = ZX.
inline Qubit pauli_unapply(Pauli op, const Qubit& q) {
    switch (op) {
        case Pauli::I:
        case Pauli::X:
        case Pauli::Z:
            return pauli_apply(op, q);
        case Pauli::XZ:
            return Qubit(q.amp1(), -q.amp0());
    }
    throw InvalidStateError("unknown pauli");
}

// Ordered list of independent single-qubit states (|P>, |P'>, |S_A>, ...).
using QubitString = std::vector<Qubit>;

// Per-qubit fidelity comparison, global phase quotiented out per qubit.
inline bool state_equal(const QubitString& a, const QubitString& b, double tol = kStateTolerance) {
    if (a.size() != b.size()) {
        throw LengthError("state_equal: length mismatch " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!qubit_equal(a[i], b[i], tol)) return false;
    }
    return true;
}

// Haar-random single-qubit state, drawn via two canonical uniforms.
inline Qubit random_qubit(SeededRng& rng) {
    double c = 2.0 * rng.canonical() - 1.0;  // cos(theta) uniform on [-1, 1)
    double phi = 2.0 * M_PI * rng.canonical();
    double half = std::acos(c) / 2.0;
    return Qubit::normalized(std::cos(half), std::polar(std::sin(half), phi));
}

inline QubitString random_message(std::size_t n, SeededRng& rng) {
    QubitString s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.push_back(random_qubit(rng));
    return s;
}

inline std::string digest(const QubitString& s) {
    std::string canon;
    for (const Qubit& q : s) {
        canon += quantized(q.amp0().real());
        canon += ',';
        canon += quantized(q.amp0().imag());
        canon += ';';
        canon += quantized(q.amp1().real());
        canon += ',';
        canon += quantized(q.amp1().imag());
        canon += '|';
    }
    return digest_text(canon);
}

}  // namespace aqs
