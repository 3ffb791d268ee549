#pragma once

#include <string>
#include <vector>

#include "aqs/errors.hpp"

namespace aqs {

// The three independently toggleable hardening measures. All false is the
// baseline (attackable) configuration.
struct CountermeasureSet {
    bool bind_receiver_id = false;     // receiver identity signed into |S_A>
    bool announce_metadata = false;    // announcer + time attached to board posts
    bool preregister_receiver = false; // arbitrator accepts only the registered receiver

    bool any() const { return bind_receiver_id || announce_metadata || preregister_receiver; }

    bool operator==(const CountermeasureSet&) const = default;
};

inline void apply_countermeasure_name(CountermeasureSet& set, const std::string& name) {
    if (name == "bind_receiver_id") {
        set.bind_receiver_id = true;
    } else if (name == "announce_metadata") {
        set.announce_metadata = true;
    } else if (name == "preregister_receiver") {
        set.preregister_receiver = true;
    } else {
        throw ConfigError("unknown countermeasure: " + name);
    }
}

// Parses a comma-separated list such as "bind_receiver_id,preregister_receiver".
// "none" and the empty string give the baseline.
inline CountermeasureSet parse_countermeasures(const std::string& list) {
    CountermeasureSet set;
    if (list.empty() || list == "none") return set;
    std::size_t start = 0;
    while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        std::string item = list.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!item.empty()) apply_countermeasure_name(set, item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return set;
}

inline std::string to_string(const CountermeasureSet& set) {
    std::vector<std::string> parts;
    if (set.bind_receiver_id) parts.push_back("bind_receiver_id");
    if (set.announce_metadata) parts.push_back("announce_metadata");
    if (set.preregister_receiver) parts.push_back("preregister_receiver");
    if (parts.empty()) return "none";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "," + parts[i];
    return out;
}

}  // namespace aqs
