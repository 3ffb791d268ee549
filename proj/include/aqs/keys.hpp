#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "aqs/errors.hpp"
#include "aqs/pad_key.hpp"
#include "aqs/participant.hpp"
#include "aqs/rng.hpp"

namespace aqs {

// Pre-shared pad keys for one session. Stands in for the key-distribution
// step: each listed pair ends up holding one identical uniformly random key,
// keys for distinct pairs independent.
class KeyTable {
public:
    using Pair = std::pair<Participant, Participant>;

    static Pair normalize(Participant a, Participant b) {
        if (a == b) throw ConfigError("key pair endpoints must differ");
        return a < b ? Pair{a, b} : Pair{b, a};
    }

    void insert(Participant a, Participant b, PadKey key) {
        Pair p = normalize(a, b);
        if (keys_.count(p)) {
            throw ConfigError("duplicate key pair: " + to_string(a) + "," + to_string(b));
        }
        keys_.emplace(p, std::move(key));
    }

    const PadKey& key_for(Participant a, Participant b) const {
        auto it = keys_.find(normalize(a, b));
        if (it == keys_.end()) {
            throw ConfigError("no pre-shared key for " + to_string(a) + "," + to_string(b));
        }
        return it->second;
    }

    bool has(Participant a, Participant b) const { return keys_.count(normalize(a, b)) > 0; }

    std::size_t size() const { return keys_.size(); }

private:
    std::map<Pair, PadKey> keys_;
};

inline KeyTable preshare_keys(std::span<const KeyTable::Pair> pairs, std::size_t length_bits,
                              SeededRng& rng) {
    if (length_bits < 2) throw ConfigError("pre-shared keys need at least 2 bits");
    KeyTable table;
    for (const auto& [a, b] : pairs) {
        table.insert(a, b, PadKey::random(length_bits, rng));
    }
    return table;
}

}  // namespace aqs
