#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "aqs/errors.hpp"
#include "aqs/participant.hpp"
#include "aqs/qubit.hpp"
#include "aqs/rng.hpp"

namespace aqs {

// Outcome of a Bell-basis measurement.
enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline std::string to_string(BellOutcome o) {
    switch (o) {
        case BellOutcome::PhiPlus: return "Phi+";
        case BellOutcome::PhiMinus: return "Phi-";
        case BellOutcome::PsiPlus: return "Psi+";
        case BellOutcome::PsiMinus: return "Psi-";
    }
    throw InvalidStateError("unknown bell outcome");
}

// A two-qubit joint state over {|00>, |01>, |10>, |11>} with owner labels
// for the two halves. Freshly created pairs are (|00> + |11>)/sqrt(2).
struct BellPair {
    std::array<Complex, 4> joint;
    Participant holder_first;
    Participant holder_second;

    static BellPair fresh(Participant first, Participant second) {
        const double s = 1.0 / std::sqrt(2.0);
        return BellPair{{Complex(s), Complex(0), Complex(0), Complex(s)}, first, second};
    }

    double norm_squared() const {
        double n = 0.0;
        for (const auto& c : joint) n += std::norm(c);
        return n;
    }
};

// Composes a message qubit with a shared pair (message qubit and the local
// half measured in the Bell basis), samples the outcome from the squared
// norms of the four branches, and returns the collapsed state of the remote
// half. For a fresh pair the four outcomes are equiprobable and the remote
// half collapses to
//   Phi+ -> (a, b),   Phi- -> (a, -b),   Psi+ -> (b, a),   Psi- -> (-b, a).
inline std::pair<BellOutcome, Qubit> compose_and_bell_measure(const Qubit& p, const BellPair& pair,
                                                              SeededRng& rng) {
    if (std::abs(pair.norm_squared() - 1.0) > kNormTolerance) {
        throw InvalidStateError("bell pair is not normalized");
    }
    const Complex p0 = p.amp0(), p1 = p.amp1();
    const auto& j = pair.joint;  // j[2a + b]
    const double s = 1.0 / std::sqrt(2.0);

    // Unnormalized remote amplitudes per outcome, indexed by the remote bit.
    std::array<std::array<Complex, 2>, 4> branch;
    for (int b = 0; b < 2; ++b) {
        Complex c00 = p0 * j[b];        // message 0, local half 0
        Complex c11 = p1 * j[2 + b];    // message 1, local half 1
        Complex c01 = p0 * j[2 + b];    // message 0, local half 1
        Complex c10 = p1 * j[b];        // message 1, local half 0
        branch[0][b] = s * (c00 + c11);  // Phi+
        branch[1][b] = s * (c00 - c11);  // Phi-
        branch[2][b] = s * (c01 + c10);  // Psi+
        branch[3][b] = s * (c01 - c10);  // Psi-
    }

    std::array<double, 4> prob{};
    for (int k = 0; k < 4; ++k) prob[k] = std::norm(branch[k][0]) + std::norm(branch[k][1]);

    double u = rng.canonical();
    int pick = 3;
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        acc += prob[k];
        if (u < acc) {
            pick = k;
            break;
        }
    }
    // Degenerate branches (probability ~0) are never picked by construction,
    // but guard against landing on one through accumulated rounding.
    while (prob[pick] < 1e-15) pick = (pick + 3) % 4;

    Qubit remote = Qubit::normalized(branch[pick][0], branch[pick][1]);
    return {static_cast<BellOutcome>(pick), remote};
}

// Pauli correction recovering the original message qubit from the collapsed
// remote half: I, Z, X, ZX for Phi+, Phi-, Psi+, Psi-.
inline Qubit teleport_correct(BellOutcome outcome, const Qubit& q) {
    switch (outcome) {
        case BellOutcome::PhiPlus: return q;
        case BellOutcome::PhiMinus: return pauli_apply(Pauli::Z, q);
        case BellOutcome::PsiPlus: return pauli_apply(Pauli::X, q);
        case BellOutcome::PsiMinus: return pauli_unapply(Pauli::XZ, q);
    }
    throw InvalidStateError("unknown bell outcome");
}

}  // namespace aqs
