#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aqs/bell.hpp"
#include "aqs/board.hpp"
#include "aqs/countermeasures.hpp"
#include "aqs/digest.hpp"
#include "aqs/errors.hpp"
#include "aqs/keys.hpp"
#include "aqs/participant.hpp"
#include "aqs/rng.hpp"
#include "aqs/transcript.hpp"

namespace aqs {

// What the arbitrator can legitimately observe while serving one
// verification request: who asked (the key that decrypted the request),
// the decrypted contents, and the verdict he produced. Deliberately free
// of any intended-receiver information in baseline mode.
struct ArbiterViewRecord {
    Participant requester;
    std::string p_prime_digest;
    std::string s_a_digest;
    bool verdict = false;

    bool operator==(const ArbiterViewRecord&) const = default;
};

// The simulated world for one trial: seeded randomness, logical clock,
// public board, transcript, the arbitrator's receiver registry and his
// running view. Sessions within a trial share all of it.
class Environment {
public:
    explicit Environment(std::uint64_t seed, CountermeasureSet harden = {})
        : rng_(seed), harden_(harden) {}

    SeededRng& rng() { return rng_; }
    PublicBoard& board() { return board_; }
    const PublicBoard& board() const { return board_; }
    Transcript& transcript() { return transcript_; }
    const Transcript& transcript() const { return transcript_; }
    const CountermeasureSet& harden() const { return harden_; }

    std::uint64_t next_time() { return ++clock_; }

    void log(const std::string& session, Participant actor, const std::string& kind,
             const std::string& payload_digest) {
        transcript_.add(next_time(), actor, kind, payload_digest, session);
    }

    void log_step(const std::string& session, Participant actor, const std::string& step_name) {
        log(session, actor, "step:" + step_name, digest_text(step_name));
    }

    void log_send(const std::string& session, const Channel& ch, const std::string& label,
                  const std::string& payload_digest) {
        log(session, ch.from, "send:" + label + ">" + to_string(ch.to), payload_digest);
    }

    void set_verdict(const std::string& session, const std::string& check, bool pass) {
        transcript_.set_verdict(session, check, pass);
    }

    // Posts to the board and mirrors the event into the transcript. With the
    // metadata countermeasure on, the announcer identity and announcement
    // time are published alongside the value; otherwise the post is
    // anonymous and undated.
    void announce(const std::string& session, const std::string& label, const std::string& value,
                  Participant announcer) {
        Announcement a{session, label, value, std::nullopt, std::nullopt};
        std::string kind;
        if (harden_.announce_metadata) {
            announce_with_metadata(board_, std::move(a), announcer, next_time());
            kind = "announce_meta:" + label;
        } else {
            board_announce(board_, std::move(a));
            kind = "announce:" + label;
        }
        log(session, announcer, kind, digest_text(label + "=" + value));
    }

    std::optional<std::string> read_board(const std::string& session, const std::string& label) const {
        auto a = board_.find(session, label);
        if (!a) return std::nullopt;
        return a->value;
    }

    // Receiver registry (third countermeasure).
    void register_receiver(Participant signer, Participant receiver, const std::string& session) {
        if (!harden_.preregister_receiver) {
            throw ConfigError("register_receiver requires the preregistration countermeasure");
        }
        if (registry_.count(session)) {
            throw ConfigError("receiver already registered for session " + session);
        }
        registry_[session] = receiver;
        log(session, signer, "register", digest_text("receiver=" + to_string(receiver)));
        transcript_.set_verdict(session, "registered=" + to_string(receiver), true);
    }

    std::optional<Participant> registered_receiver(const std::string& session) const {
        auto it = registry_.find(session);
        if (it == registry_.end()) return std::nullopt;
        return it->second;
    }

    // Set when the arbitrator positively detects foul play (identity
    // mismatch inside a signature, or a request from an unregistered party).
    void raise_alarm() { alarm_ = true; }
    bool alarm() const { return alarm_; }

    void record_arbiter_view(ArbiterViewRecord rec) { arbiter_view_.push_back(std::move(rec)); }
    const std::vector<ArbiterViewRecord>& arbiter_view() const { return arbiter_view_; }

private:
    SeededRng rng_;
    CountermeasureSet harden_;
    std::uint64_t clock_ = 0;
    PublicBoard board_;
    Transcript transcript_;
    std::map<std::string, Participant> registry_;
    std::vector<ArbiterViewRecord> arbiter_view_;
    bool alarm_ = false;
};

// Creates n fresh shared pairs, first half kept by Alice, second half handed
// to `to`. Each handover is logged.
inline std::vector<BellPair> distribute_bell_pairs(Environment& env, const std::string& session,
                                                   std::size_t n, Participant to) {
    if (n < 1) throw ConfigError("need at least one bell pair");
    std::vector<BellPair> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pairs.push_back(BellPair::fresh(Participant::Alice, to));
        env.log(session, Participant::Alice, "bell_distribute",
                digest_text("half>" + to_string(to) + "#" + std::to_string(i)));
    }
    return pairs;
}

}  // namespace aqs
