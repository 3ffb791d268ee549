#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aqs/bell.hpp"
#include "aqs/errors.hpp"
#include "aqs/hardened.hpp"
#include "aqs/keys.hpp"
#include "aqs/pad_key.hpp"
#include "aqs/qotp.hpp"
#include "aqs/qubit.hpp"
#include "aqs/session.hpp"

namespace aqs {

// The signature bundle transmitted after the signing phase: the padded
// message, its signature under the signer's arbitrator key, and the Bell
// measurement outcomes. The pad r is attached only once announced.
struct EntangledSignature {
    QubitString p_prime;
    QubitString s_a;  // one identity-code tail wider when receiver binding is on
    std::vector<BellOutcome> m_a;
    std::optional<PadKey> r_final;
};

struct EntangledSigningResult {
    EntangledSignature sig;
    PadKey r;  // retained secretly by the signer
    std::vector<Qubit> remote_halves;
    Participant remote_holder;
};

// Signing with a caller-chosen pad (deterministic core; tests force r here).
inline EntangledSigningResult sign_entangled(const QubitString& message, const PadKey& r,
                                             const PadKey& k_a, const std::vector<BellPair>& pairs,
                                             SeededRng& rng,
                                             std::optional<Participant> bound_receiver = std::nullopt) {
    const std::size_t n = message.size();
    if (n == 0) throw ProtocolError("empty message");
    if (pairs.size() != n) {
        throw KeyLengthError("need one shared pair per message qubit");
    }
    if (r.size() != 2 * n) {
        throw KeyLengthError("pad r must have 2 bits per message qubit");
    }

    EntangledSigningResult out;
    out.r = r;
    out.sig.p_prime = qotp_encrypt(r, message);

    QubitString signed_payload = out.sig.p_prime;
    if (bound_receiver) signed_payload = append_receiver_id(std::move(signed_payload), *bound_receiver);
    out.sig.s_a = qotp_encrypt(k_a, signed_payload);

    out.remote_holder = pairs.front().holder_second;
    out.sig.m_a.reserve(n);
    out.remote_halves.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [outcome, remote] = compose_and_bell_measure(out.sig.p_prime[i], pairs[i], rng);
        out.sig.m_a.push_back(outcome);
        out.remote_halves.push_back(remote);
    }
    return out;
}

inline EntangledSigningResult sign_entangled(const QubitString& message, const PadKey& k_a,
                                             const std::vector<BellPair>& pairs, SeededRng& rng,
                                             std::optional<Participant> bound_receiver = std::nullopt) {
    PadKey r = PadKey::random(2 * message.size(), rng);
    return sign_entangled(message, r, k_a, pairs, rng, bound_receiver);
}

// Signing phase with transcript logging (steps S1-S4). Used by the honest
// driver and by attack orchestration alike; the S5 transmission is logged by
// whoever sends the bundle.
inline EntangledSigningResult alice_sign_entangled(Environment& env, const std::string& session,
                                                   const QubitString& message, const PadKey& k_a,
                                                   const std::vector<BellPair>& pairs,
                                                   std::optional<Participant> bound_receiver) {
    env.log_step(session, Participant::Alice, "S1");
    env.log_step(session, Participant::Alice, "S2");
    env.log_step(session, Participant::Alice, "S3");
    auto result = sign_entangled(message, k_a, pairs, env.rng(), bound_receiver);
    env.log_step(session, Participant::Alice, "S4");
    return result;
}

// The receiver-or-arbitrator messages of the verifying phase. Tuples are
// padded componentwise under the requester's key.
struct EntangledVerificationRequest {
    std::string session;
    Participant requester;
    QubitString p_prime_enc;
    QubitString s_a_enc;
};

enum class ArbiterFlag { Proceed, Reject };

inline std::string to_string(ArbiterFlag f) {
    return f == ArbiterFlag::Proceed ? "proceed" : "reject";
}

struct EntangledArbiterReply {
    QubitString p_prime_enc;
    QubitString s_a_enc;
    // Explicit proceed/reject tag. The pad value itself never rides in this
    // reply; the signer publishes it on the board after the receiver's checks.
    ArbiterFlag flag = ArbiterFlag::Reject;
};

inline EntangledVerificationRequest entangled_request(Environment& env, const std::string& session,
                                                      Participant requester,
                                                      const EntangledSignature& sig,
                                                      const PadKey& requester_key) {
    EntangledVerificationRequest req;
    req.session = session;
    req.requester = requester;
    req.p_prime_enc = qotp_encrypt_prefix(requester_key, sig.p_prime);
    req.s_a_enc = qotp_encrypt_prefix(requester_key, sig.s_a);
    env.log_step(session, requester, "V1");
    env.log_send(session, Channel(requester, Participant::Arbitrator), "Y_B",
                 digest(req.p_prime_enc) + digest(req.s_a_enc));
    return req;
}

// Steps V2-V3: decrypt the request, recompute the signature from the
// signer's key, compare, and return the re-padded contents with a
// proceed/reject tag. Requests failing the preregistration gate are
// refused outright.
inline EntangledArbiterReply arbitrate_entangled(Environment& env,
                                                 const EntangledVerificationRequest& req,
                                                 const PadKey& k_a, const PadKey& requester_key) {
    if (env.harden().preregister_receiver &&
        !enforce_preregistration(env, req.session, req.requester)) {
        throw DeniedUnregistered("verification request from " + to_string(req.requester) +
                                 " refused for session " + req.session);
    }

    QubitString p_prime = qotp_decrypt_prefix(requester_key, req.p_prime_enc);
    QubitString s_a = qotp_decrypt_prefix(requester_key, req.s_a_enc);
    const std::size_t n = p_prime.size();
    const std::size_t expected_sa = n + (env.harden().bind_receiver_id ? kIdentityQubits : 0);
    if (s_a.size() != expected_sa) {
        throw ProtocolError("signature bundle has wrong arity");
    }

    QubitString payload = p_prime;
    if (env.harden().bind_receiver_id) {
        payload = append_receiver_id(std::move(payload), req.requester);
        auto opened = qotp_decrypt(k_a, s_a);
        auto embedded = decode_receiver_id(
            std::span<const Qubit>(opened).subspan(n, kIdentityQubits));
        bool id_ok = embedded.has_value() && *embedded == req.requester;
        env.log(req.session, req.requester, "id_check",
                digest_text("embedded=" + (embedded ? to_string(*embedded) : "invalid") +
                            ";requester=" + to_string(req.requester)));
        env.set_verdict(req.session, "id_check", id_ok);
        if (!id_ok) env.raise_alarm();
    }
    QubitString recomputed = qotp_encrypt(k_a, payload);
    bool v = state_equal(recomputed, s_a);

    env.record_arbiter_view({req.requester, digest(p_prime), digest(s_a), v});
    env.log_step(req.session, Participant::Arbitrator, "V2");
    env.set_verdict(req.session, "V", v);

    EntangledArbiterReply reply;
    reply.p_prime_enc = qotp_encrypt_prefix(requester_key, p_prime);
    reply.s_a_enc = qotp_encrypt_prefix(requester_key, s_a);
    reply.flag = v ? ArbiterFlag::Proceed : ArbiterFlag::Reject;
    env.log_step(req.session, Participant::Arbitrator, "V3");
    env.log_send(req.session, Channel(Participant::Arbitrator, req.requester), "Y_T",
                 digest(reply.p_prime_enc) + digest(reply.s_a_enc) + to_string(reply.flag));
    return reply;
}

struct EntangledAcceptance {
    bool accepted = false;
    std::string reason;  // "arbiter_reject" or "teleport_mismatch" when rejected
    std::optional<QubitString> message;
    std::optional<QubitString> final_s_a;
    std::optional<PadKey> final_r;
};

// Steps V4-V7 on the receiver side. `inform_signer` is the V5->V6 handoff:
// invoked exactly once after the teleportation check passes, it must make
// the signer publish the pad for this session.
inline EntangledAcceptance verify_entangled(Environment& env, const std::string& session,
                                            Participant self, const PadKey& self_key,
                                            const EntangledArbiterReply& reply,
                                            const std::vector<BellOutcome>& m_a,
                                            const std::vector<Qubit>& remote_halves,
                                            const std::function<void()>& inform_signer) {
    EntangledAcceptance out;
    env.log_step(session, self, "V4");
    if (reply.flag == ArbiterFlag::Reject) {
        out.reason = "arbiter_reject";
        env.set_verdict(session, "accepted", false);
        return out;
    }

    QubitString p_prime = qotp_decrypt_prefix(self_key, reply.p_prime_enc);
    QubitString s_a = qotp_decrypt_prefix(self_key, reply.s_a_enc);
    const std::size_t n = p_prime.size();
    if (m_a.size() != n || remote_halves.size() != n) {
        throw ProtocolError("measurement record does not match the message length");
    }

    QubitString teleported;
    teleported.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        teleported.push_back(teleport_correct(m_a[i], remote_halves[i]));
    }
    bool teleport_ok = state_equal(teleported, p_prime);
    env.log_step(session, self, "V5");
    env.set_verdict(session, "teleport_ok", teleport_ok);
    if (!teleport_ok) {
        out.reason = "teleport_mismatch";
        env.set_verdict(session, "accepted", false);
        return out;
    }

    env.announce(session, "accept", "1", self);
    inform_signer();

    auto r_value = env.read_board(session, "r");
    if (!r_value) {
        throw ProtocolStall("pad was never announced for session " + session);
    }
    PadKey r = PadKey::from_string(*r_value);
    if (r.size() != 2 * n) throw ProtocolError("announced pad has wrong length");

    env.log_step(session, self, "V7");
    out.accepted = true;
    out.message = qotp_decrypt(r, p_prime);
    out.final_s_a = s_a;
    out.final_r = r;
    env.set_verdict(session, "accepted", true);
    return out;
}

struct EntangledSessionOutcome {
    EntangledAcceptance acceptance;
    QubitString original_message;
    EntangledSignature sig;
    PadKey r;
    PadKey k_a;
};

// One honest end-to-end run: initializing, signing, and verifying phases
// for a single signer/receiver pair.
inline EntangledSessionOutcome run_entangled_session(Environment& env, const std::string& session,
                                                     Participant receiver,
                                                     const QubitString& message) {
    const std::size_t n = message.size();
    const std::size_t key_bits =
        2 * (n + (env.harden().bind_receiver_id ? kIdentityQubits : 0));

    const KeyTable::Pair pairs_to_share[] = {
        {Participant::Alice, Participant::Arbitrator},
        {receiver, Participant::Arbitrator},
    };
    KeyTable keys = preshare_keys(pairs_to_share, key_bits, env.rng());
    env.log_step(session, Participant::Arbitrator, "I1");
    env.log(session, Participant::Arbitrator, "scheme",
            digest_text("entangled"));
    if (env.harden().preregister_receiver) {
        env.register_receiver(Participant::Alice, receiver, session);
    }

    auto bell_pairs = distribute_bell_pairs(env, session, n, receiver);
    env.log_step(session, Participant::Alice, "I2");

    auto bound = env.harden().bind_receiver_id ? std::optional<Participant>(receiver) : std::nullopt;
    auto signed_result = alice_sign_entangled(env, session, message,
                                              keys.key_for(Participant::Alice, Participant::Arbitrator),
                                              bell_pairs, bound);
    env.log_step(session, Participant::Alice, "S5");
    env.log_send(session, Channel(Participant::Alice, receiver), "S",
                 digest(signed_result.sig.p_prime) + digest(signed_result.sig.s_a));

    const PadKey& receiver_key = keys.key_for(receiver, Participant::Arbitrator);
    auto request = entangled_request(env, session, receiver, signed_result.sig, receiver_key);
    auto reply = arbitrate_entangled(env, request,
                                     keys.key_for(Participant::Alice, Participant::Arbitrator),
                                     receiver_key);

    auto inform = [&] {
        env.log_step(session, Participant::Alice, "V6");
        env.announce(session, "r", signed_result.r.to_string(), Participant::Alice);
    };
    auto acceptance = verify_entangled(env, session, receiver, receiver_key, reply,
                                       signed_result.sig.m_a, signed_result.remote_halves, inform);

    EntangledSessionOutcome outcome;
    outcome.acceptance = std::move(acceptance);
    outcome.original_message = message;
    outcome.sig = signed_result.sig;
    if (outcome.acceptance.final_r) outcome.sig.r_final = outcome.acceptance.final_r;
    outcome.r = signed_result.r;
    outcome.k_a = keys.key_for(Participant::Alice, Participant::Arbitrator);
    return outcome;
}

}  // namespace aqs
