#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "aqs/board.hpp"
#include "aqs/digest.hpp"
#include "aqs/errors.hpp"
#include "aqs/participant.hpp"
#include "aqs/qubit.hpp"
#include "aqs/session.hpp"

namespace aqs {

// Width of the embedded receiver identity: two computational-basis qubits
// cover the four participants.
inline constexpr std::size_t kIdentityQubits = 2;

inline QubitString encode_receiver_id(Participant p) {
    int code = static_cast<int>(p);
    QubitString id;
    id.push_back((code & 2) ? Qubit::one() : Qubit::zero());
    id.push_back((code & 1) ? Qubit::one() : Qubit::zero());
    return id;
}

// Computational-basis readout of the identity qubits. Identity qubits are
// prepared as exact basis states, so honest decrypt-and-measure is
// deterministic; anything off-basis decodes to nullopt.
inline std::optional<Participant> decode_receiver_id(std::span<const Qubit> id) {
    if (id.size() != kIdentityQubits) return std::nullopt;
    int code = 0;
    for (const Qubit& q : id) {
        code <<= 1;
        if (qubit_equal(q, Qubit::one())) {
            code |= 1;
        } else if (!qubit_equal(q, Qubit::zero())) {
            return std::nullopt;
        }
    }
    return static_cast<Participant>(code);
}

inline QubitString append_receiver_id(QubitString s, Participant receiver) {
    QubitString id = encode_receiver_id(receiver);
    s.insert(s.end(), id.begin(), id.end());
    return s;
}

// Registry gate for verification requests (third countermeasure). Denies
// requests for unregistered sessions and from anyone other than the
// registered receiver; every denial is logged and raises the arbitrator's
// alarm.
inline bool enforce_preregistration(Environment& env, const std::string& session,
                                    Participant requester) {
    auto registered = env.registered_receiver(session);
    bool allow = registered.has_value() && *registered == requester;
    if (!allow) {
        env.log(session, Participant::Arbitrator, "deny",
                digest_text("requester=" + to_string(requester)));
        env.set_verdict(session, "registry_denied=" + to_string(requester), true);
        env.raise_alarm();
    }
    return allow;
}

}  // namespace aqs
