#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aqs/errors.hpp"
#include "aqs/participant.hpp"

namespace aqs {

// One logged action. `kind` is a small structured tag such as "step:S1",
// "send:Y_B", "announce:r", "announce_meta:V_B", "bell_distribute",
// "id_check" or "deny"; `digest` fingerprints the payload.
struct TranscriptEvent {
    std::uint64_t time = 0;
    Participant actor = Participant::Alice;
    std::string kind;
    std::string digest;
    std::string session;

    bool operator==(const TranscriptEvent&) const = default;
};

// Ordered event log of a run plus the named check verdicts. Verdict keys are
// "<session>/<check>" so several sessions can share one transcript.
struct Transcript {
    std::vector<TranscriptEvent> events;
    std::map<std::string, bool> verdicts;

    bool operator==(const Transcript&) const = default;

    void add(std::uint64_t time, Participant actor, std::string kind, std::string digest,
             std::string session) {
        if (!events.empty() && time <= events.back().time) {
            throw ProtocolError("transcript event times must strictly increase");
        }
        events.push_back({time, actor, std::move(kind), std::move(digest), std::move(session)});
    }

    void set_verdict(const std::string& session, const std::string& check, bool pass) {
        verdicts[session + "/" + check] = pass;
    }

    bool verdict_or(const std::string& session, const std::string& check, bool fallback) const {
        auto it = verdicts.find(session + "/" + check);
        return it == verdicts.end() ? fallback : it->second;
    }
};

inline std::string serialize(const Transcript& t) {
    std::ostringstream out;
    for (const auto& e : t.events) {
        out << "time=" << e.time << " actor=" << to_string(e.actor) << " kind=" << e.kind
            << " digest=" << e.digest << " session=" << e.session << "\n";
    }
    for (const auto& [check, pass] : t.verdicts) {
        out << "check=" << check << " pass=" << (pass ? 1 : 0) << "\n";
    }
    return out.str();
}

inline void transcript_write(const Transcript& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open transcript sink: " + path);
    out << serialize(t);
    if (!out) throw IoError("failed writing transcript: " + path);
}

namespace detail {
inline std::string field(const std::string& token, const char* name) {
    std::string prefix = std::string(name) + "=";
    if (token.rfind(prefix, 0) != 0) {
        throw IoError("malformed transcript field, expected " + prefix + " in '" + token + "'");
    }
    return token.substr(prefix.size());
}
}  // namespace detail

inline Transcript transcript_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open transcript source: " + path);
    Transcript t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string w;
        while (ls >> w) tok.push_back(w);
        if (tok.front().rfind("time=", 0) == 0) {
            if (tok.size() != 5) throw IoError("malformed event record: " + line);
            TranscriptEvent e;
            e.time = std::stoull(detail::field(tok[0], "time"));
            e.actor = participant_from_string(detail::field(tok[1], "actor"));
            e.kind = detail::field(tok[2], "kind");
            e.digest = detail::field(tok[3], "digest");
            e.session = detail::field(tok[4], "session");
            t.events.push_back(e);
        } else if (tok.front().rfind("check=", 0) == 0) {
            if (tok.size() != 2) throw IoError("malformed verdict record: " + line);
            t.verdicts[detail::field(tok[0], "check")] = detail::field(tok[1], "pass") == "1";
        } else {
            throw IoError("unrecognized transcript record: " + line);
        }
    }
    return t;
}

}  // namespace aqs
