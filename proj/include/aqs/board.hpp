#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aqs/participant.hpp"

namespace aqs {

// One public-board entry. Baseline announcements are anonymous: the
// announcer and announcement time are attached only when the metadata
// countermeasure is switched on.
struct Announcement {
    std::string session;
    std::string label;  // "V_T", "V_B", "r", "accept"
    std::string value;
    std::optional<Participant> announcer;
    std::optional<std::uint64_t> time;
};

// Append-only broadcast surface readable by every participant. Global with
// session tags; entries are never mutated or removed.
class PublicBoard {
public:
    void append(Announcement a) { items_.push_back(std::move(a)); }

    const std::vector<Announcement>& items() const { return items_; }

    std::optional<Announcement> find(const std::string& session, const std::string& label) const {
        for (const auto& a : items_) {
            if (a.session == session && a.label == label) return a;
        }
        return std::nullopt;
    }

private:
    std::vector<Announcement> items_;
};

inline void board_announce(PublicBoard& board, Announcement a) {
    board.append(std::move(a));
}

// Attributed post (second countermeasure): identity and logical time travel
// with the value.
inline void announce_with_metadata(PublicBoard& board, Announcement a, Participant announcer,
                                   std::uint64_t time) {
    a.announcer = announcer;
    a.time = time;
    board.append(std::move(a));
}

}  // namespace aqs
