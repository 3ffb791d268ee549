#pragma once

#include <string>
#include <string_view>

#include "aqs/errors.hpp"

namespace aqs {

// The closed set of protocol parties.
enum class Participant { Alice, Bob, Charlie, Arbitrator };

inline std::string to_string(Participant p) {
    switch (p) {
        case Participant::Alice: return "Alice";
        case Participant::Bob: return "Bob";
        case Participant::Charlie: return "Charlie";
        case Participant::Arbitrator: return "Arbitrator";
    }
    throw ConfigError("unknown participant");
}

inline Participant participant_from_string(std::string_view s) {
    if (s == "Alice") return Participant::Alice;
    if (s == "Bob") return Participant::Bob;
    if (s == "Charlie") return Participant::Charlie;
    if (s == "Arbitrator") return Participant::Arbitrator;
    throw ConfigError("unknown participant name: " + std::string(s));
}

// A point-to-point link between two distinct parties. The simulation treats
// every channel as lossless; the flag only records what the protocol assumes.
struct Channel {
    Participant from;
    Participant to;
    bool authenticated = true;

    Channel(Participant f, Participant t, bool auth = true) : from(f), to(t), authenticated(auth) {
        if (from == to) throw ConfigError("channel endpoints must differ");
    }
};

}  // namespace aqs
