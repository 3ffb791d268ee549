#pragma once

#include <functional>
#include <optional>
#include <string>

#include "aqs/errors.hpp"
#include "aqs/hardened.hpp"
#include "aqs/keys.hpp"
#include "aqs/pad_key.hpp"
#include "aqs/qotp.hpp"
#include "aqs/qubit.hpp"
#include "aqs/session.hpp"

namespace aqs {

// Signature bundle of the entanglement-free scheme as it travels: three
// qubit strings padded componentwise under the signer/receiver shared key.
struct PlainBundle {
    QubitString c_p_prime;
    QubitString c_r_ab;
    QubitString c_s_a;
};

// The opened bundle held by the receiver after decryption.
struct PlainSignature {
    QubitString p_prime;
    QubitString r_ab;
    QubitString s_a;
    std::optional<PadKey> r_final;
};

struct PlainSigningResult {
    PlainBundle bundle;
    PadKey r;  // retained secretly by the signer
};

inline PlainSigningResult sign_plain(const QubitString& message, const PadKey& r, const PadKey& k_a,
                                     const PadKey& k_ab,
                                     std::optional<Participant> bound_receiver = std::nullopt) {
    const std::size_t n = message.size();
    if (n == 0) throw ProtocolError("empty message");
    if (r.size() != 2 * n) throw KeyLengthError("pad r must have 2 bits per message qubit");

    QubitString p_prime = qotp_encrypt(r, message);
    QubitString r_ab = qotp_encrypt_prefix(k_ab, p_prime);

    QubitString signed_payload = p_prime;
    if (bound_receiver) signed_payload = append_receiver_id(std::move(signed_payload), *bound_receiver);
    QubitString s_a = qotp_encrypt(k_a, signed_payload);

    PlainSigningResult out;
    out.r = r;
    out.bundle.c_p_prime = qotp_encrypt_prefix(k_ab, p_prime);
    out.bundle.c_r_ab = qotp_encrypt_prefix(k_ab, r_ab);
    out.bundle.c_s_a = qotp_encrypt_prefix(k_ab, s_a);
    return out;
}

inline PlainSigningResult sign_plain(const QubitString& message, const PadKey& k_a,
                                     const PadKey& k_ab, SeededRng& rng,
                                     std::optional<Participant> bound_receiver = std::nullopt) {
    PadKey r = PadKey::random(2 * message.size(), rng);
    return sign_plain(message, r, k_a, k_ab, bound_receiver);
}

inline PlainSigningResult alice_sign_plain(Environment& env, const std::string& session,
                                           const QubitString& message, const PadKey& k_a,
                                           const PadKey& k_ab,
                                           std::optional<Participant> bound_receiver) {
    env.log_step(session, Participant::Alice, "S1");
    auto result = sign_plain(message, k_a, k_ab, env.rng(), bound_receiver);
    env.log_step(session, Participant::Alice, "S2");
    env.log_step(session, Participant::Alice, "S3");
    return result;
}

inline PlainSignature open_plain_bundle(const PlainBundle& bundle, const PadKey& k_ab) {
    PlainSignature sig;
    sig.p_prime = qotp_decrypt_prefix(k_ab, bundle.c_p_prime);
    sig.r_ab = qotp_decrypt_prefix(k_ab, bundle.c_r_ab);
    sig.s_a = qotp_decrypt_prefix(k_ab, bundle.c_s_a);
    if (sig.r_ab.size() != sig.p_prime.size()) throw ProtocolError("bundle arity mismatch");
    return sig;
}

struct PlainVerificationRequest {
    std::string session;
    Participant requester;
    QubitString p_prime_enc;
    QubitString s_a_enc;
};

struct PlainArbiterReturn {
    QubitString p_prime_enc;
    QubitString s_a_enc;
};

inline PlainVerificationRequest plain_request(Environment& env, const std::string& session,
                                              Participant requester, const QubitString& p_prime,
                                              const QubitString& s_a, const PadKey& requester_key) {
    PlainVerificationRequest req;
    req.session = session;
    req.requester = requester;
    req.p_prime_enc = qotp_encrypt_prefix(requester_key, p_prime);
    req.s_a_enc = qotp_encrypt_prefix(requester_key, s_a);
    env.log_step(session, requester, "V1");
    env.log_send(session, Channel(requester, Participant::Arbitrator), "Y_B",
                 digest(req.p_prime_enc) + digest(req.s_a_enc));
    return req;
}

// Steps V2-V3: recover the padded message from the signature via the
// signer's key, compare, and post the verdict on the public board. With a
// positive verdict the contents go back to the requester under his key.
inline std::optional<PlainArbiterReturn> arbitrate_plain(Environment& env,
                                                         const PlainVerificationRequest& req,
                                                         const PadKey& k_a,
                                                         const PadKey& requester_key) {
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
    env.log_step(req.session, Participant::Arbitrator, "V2");

    QubitString opened = qotp_decrypt(k_a, s_a);
    QubitString p_t_prime(opened.begin(), opened.begin() + static_cast<std::ptrdiff_t>(n));
    bool v_t = state_equal(p_t_prime, p_prime);
    if (env.harden().bind_receiver_id) {
        auto embedded = decode_receiver_id(
            std::span<const Qubit>(opened).subspan(n, kIdentityQubits));
        bool id_ok = embedded.has_value() && *embedded == req.requester;
        env.log(req.session, req.requester, "id_check",
                digest_text("embedded=" + (embedded ? to_string(*embedded) : "invalid") +
                            ";requester=" + to_string(req.requester)));
        env.set_verdict(req.session, "id_check", id_ok);
        if (!id_ok) {
            env.raise_alarm();
            v_t = false;
        }
    }

    env.record_arbiter_view({req.requester, digest(p_prime), digest(s_a), v_t});
    env.log_step(req.session, Participant::Arbitrator, "V3");
    env.set_verdict(req.session, "V_T", v_t);
    env.announce(req.session, "V_T", v_t ? "1" : "0", Participant::Arbitrator);
    if (!v_t) return std::nullopt;

    PlainArbiterReturn ret;
    ret.p_prime_enc = qotp_encrypt_prefix(requester_key, p_prime);
    ret.s_a_enc = qotp_encrypt_prefix(requester_key, s_a);
    env.log_send(req.session, Channel(Participant::Arbitrator, req.requester), "Y_B_return",
                 digest(ret.p_prime_enc) + digest(ret.s_a_enc));
    return ret;
}

struct PlainAcceptance {
    bool accepted = false;
    std::string reason;  // "arbiter_reject" or "r_ab_mismatch" when rejected
    std::optional<QubitString> message;
    std::optional<QubitString> final_s_a;
    std::optional<PadKey> final_r;
};

// Steps V4-V6 on the receiver side. The second padded copy of the message
// inside the bundle is the receiver's own integrity check; its verdict is
// posted on the board before the signer may publish the pad.
inline PlainAcceptance verify_plain(Environment& env, const std::string& session, Participant self,
                                    const PadKey& self_key, const PlainSignature& opened,
                                    const std::optional<PlainArbiterReturn>& returned,
                                    const PadKey& k_ab,
                                    const std::function<void()>& inform_signer) {
    PlainAcceptance out;
    auto v_t = env.read_board(session, "V_T");
    if (!v_t) throw ProtocolStall("no arbitrator verdict on the board for session " + session);
    env.log_step(session, self, "V4");
    if (*v_t != "1") {
        out.reason = "arbiter_reject";
        env.set_verdict(session, "accepted", false);
        return out;
    }
    if (!returned) throw ProtocolError("arbitrator accepted but returned no bundle");

    QubitString p_prime = qotp_decrypt_prefix(self_key, returned->p_prime_enc);
    QubitString s_a = qotp_decrypt_prefix(self_key, returned->s_a_enc);

    QubitString p_b_prime = qotp_decrypt_prefix(k_ab, opened.r_ab);
    bool v_b = state_equal(p_b_prime, p_prime);
    env.set_verdict(session, "V_B", v_b);
    env.announce(session, "V_B", v_b ? "1" : "0", self);
    if (!v_b) {
        out.reason = "r_ab_mismatch";
        env.set_verdict(session, "accepted", false);
        return out;
    }

    inform_signer();
    auto r_value = env.read_board(session, "r");
    if (!r_value) throw ProtocolStall("pad was never announced for session " + session);
    PadKey r = PadKey::from_string(*r_value);
    if (r.size() != 2 * p_prime.size()) throw ProtocolError("announced pad has wrong length");

    env.log_step(session, self, "V6");
    out.accepted = true;
    out.message = qotp_decrypt(r, p_prime);
    out.final_s_a = s_a;
    out.final_r = r;
    env.set_verdict(session, "accepted", true);
    return out;
}

struct PlainSessionOutcome {
    PlainAcceptance acceptance;
    QubitString original_message;
    PlainSignature opened;
    PadKey r;
    PadKey k_a;
    PadKey k_ab;
};

// One honest end-to-end run of the entanglement-free scheme.
inline PlainSessionOutcome run_plain_session(Environment& env, const std::string& session,
                                             Participant receiver, const QubitString& message) {
    const std::size_t n = message.size();
    const std::size_t key_bits =
        2 * (n + (env.harden().bind_receiver_id ? kIdentityQubits : 0));

    const KeyTable::Pair pairs_to_share[] = {
        {Participant::Alice, Participant::Arbitrator},
        {receiver, Participant::Arbitrator},
        {Participant::Alice, receiver},
    };
    KeyTable keys = preshare_keys(pairs_to_share, key_bits, env.rng());
    env.log_step(session, Participant::Arbitrator, "I1");
    env.log(session, Participant::Arbitrator, "scheme", digest_text("plain"));
    if (env.harden().preregister_receiver) {
        env.register_receiver(Participant::Alice, receiver, session);
    }

    const PadKey& k_a = keys.key_for(Participant::Alice, Participant::Arbitrator);
    const PadKey& k_ab = keys.key_for(Participant::Alice, receiver);
    const PadKey& receiver_key = keys.key_for(receiver, Participant::Arbitrator);

    auto bound = env.harden().bind_receiver_id ? std::optional<Participant>(receiver) : std::nullopt;
    auto signed_result = alice_sign_plain(env, session, message, k_a, k_ab, bound);
    env.log_send(session, Channel(Participant::Alice, receiver), "S",
                 digest(signed_result.bundle.c_p_prime) + digest(signed_result.bundle.c_s_a));

    PlainSignature opened = open_plain_bundle(signed_result.bundle, k_ab);
    auto request = plain_request(env, session, receiver, opened.p_prime, opened.s_a, receiver_key);
    auto returned = arbitrate_plain(env, request, k_a, receiver_key);

    auto inform = [&] {
        env.log_step(session, Participant::Alice, "V5");
        env.announce(session, "r", signed_result.r.to_string(), Participant::Alice);
    };
    auto acceptance = verify_plain(env, session, receiver, receiver_key, opened, returned, k_ab, inform);

    PlainSessionOutcome outcome;
    outcome.acceptance = std::move(acceptance);
    outcome.original_message = message;
    outcome.opened = opened;
    if (outcome.acceptance.final_r) outcome.opened.r_final = outcome.acceptance.final_r;
    outcome.r = signed_result.r;
    outcome.k_a = k_a;
    outcome.k_ab = k_ab;
    return outcome;
}

}  // namespace aqs
