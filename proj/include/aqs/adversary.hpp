#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aqs/errors.hpp"
#include "aqs/scheme_entangled.hpp"
#include "aqs/scheme_plain.hpp"
#include "aqs/session.hpp"
#include "aqs/transcript.hpp"

namespace aqs {

enum class Scheme { Entangled, Plain };
enum class Attack { None, Swap, Transfer };

inline std::string to_string(Scheme s) { return s == Scheme::Entangled ? "entangled" : "plain"; }
inline std::string to_string(Attack a) {
    switch (a) {
        case Attack::None: return "none";
        case Attack::Swap: return "swap";
        case Attack::Transfer: return "transfer";
    }
    throw ConfigError("unknown attack");
}

struct AttackReport {
    Scheme scheme = Scheme::Entangled;
    Attack attack = Attack::None;
    std::map<Participant, bool> verifications_passed;
    bool arbitrator_detected = false;
    bool deniability_established = false;

    // deniability holds exactly when every verification went through and the
    // arbitrator saw nothing wrong.
    void finalize(const Environment& env) {
        arbitrator_detected = env.alarm();
        bool all_passed = !verifications_passed.empty();
        for (const auto& [who, passed] : verifications_passed) {
            (void)who;
            all_passed = all_passed && passed;
        }
        deniability_established = all_passed && !arbitrator_detected;
    }
};

// The receivers hand each other the particles they were given; states stay
// put, possession changes.
inline void swap_halves(std::vector<BellPair>& a, std::vector<BellPair>& b) {
    if (a.size() != b.size()) throw ConfigError("cannot swap halves of differently sized sessions");
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::swap(a[i].holder_second, b[i].holder_second);
    }
}

// Receiver-swap attack on the entangled scheme. Alice signs one message for
// Bob and one for Charlie; the receivers exchange their particles after
// distribution and their signature bundles after transmission, then each
// completes the verifying phase on the other's session using his own
// arbitrator key. `apply_swap = false` degenerates to two honest runs.
inline AttackReport swap_attack_entangled(Environment& env, const QubitString& msg_for_bob,
                                          const QubitString& msg_for_charlie,
                                          const std::string& session_b = "sB",
                                          const std::string& session_c = "sC",
                                          bool apply_swap = true) {
    if (msg_for_bob.size() != msg_for_charlie.size()) {
        throw ConfigError("swap attack needs equally long messages");
    }
    const std::size_t n = msg_for_bob.size();
    const std::size_t key_bits = 2 * (n + (env.harden().bind_receiver_id ? kIdentityQubits : 0));

    const KeyTable::Pair pairs_b[] = {{Participant::Alice, Participant::Arbitrator},
                                      {Participant::Bob, Participant::Arbitrator}};
    KeyTable keys_b = preshare_keys(pairs_b, key_bits, env.rng());
    env.log_step(session_b, Participant::Arbitrator, "I1");
    env.log(session_b, Participant::Arbitrator, "scheme", digest_text("entangled"));
    if (env.harden().preregister_receiver) {
        env.register_receiver(Participant::Alice, Participant::Bob, session_b);
    }

    const KeyTable::Pair pairs_c[] = {{Participant::Alice, Participant::Arbitrator},
                                      {Participant::Charlie, Participant::Arbitrator}};
    KeyTable keys_c = preshare_keys(pairs_c, key_bits, env.rng());
    env.log_step(session_c, Participant::Arbitrator, "I1");
    env.log(session_c, Participant::Arbitrator, "scheme", digest_text("entangled"));
    if (env.harden().preregister_receiver) {
        env.register_receiver(Participant::Alice, Participant::Charlie, session_c);
    }

    auto bell_b = distribute_bell_pairs(env, session_b, n, Participant::Bob);
    env.log_step(session_b, Participant::Alice, "I2");
    auto bell_c = distribute_bell_pairs(env, session_c, n, Participant::Charlie);
    env.log_step(session_c, Participant::Alice, "I2");

    if (apply_swap) {
        swap_halves(bell_b, bell_c);
        env.log(session_b, Participant::Bob, "attack:swap_halves", digest_text("with=Charlie"));
        env.log(session_c, Participant::Charlie, "attack:swap_halves", digest_text("with=Bob"));
    }

    const PadKey& k_a_b = keys_b.key_for(Participant::Alice, Participant::Arbitrator);
    const PadKey& k_a_c = keys_c.key_for(Participant::Alice, Participant::Arbitrator);
    auto bound_b = env.harden().bind_receiver_id ? std::optional<Participant>(Participant::Bob)
                                                 : std::nullopt;
    auto bound_c = env.harden().bind_receiver_id ? std::optional<Participant>(Participant::Charlie)
                                                 : std::nullopt;

    auto signed_b = alice_sign_entangled(env, session_b, msg_for_bob, k_a_b, bell_b, bound_b);
    env.log_step(session_b, Participant::Alice, "S5");
    env.log_send(session_b, Channel(Participant::Alice, Participant::Bob), "S",
                 digest(signed_b.sig.p_prime) + digest(signed_b.sig.s_a));
    auto signed_c = alice_sign_entangled(env, session_c, msg_for_charlie, k_a_c, bell_c, bound_c);
    env.log_step(session_c, Participant::Alice, "S5");
    env.log_send(session_c, Channel(Participant::Alice, Participant::Charlie), "S",
                 digest(signed_c.sig.p_prime) + digest(signed_c.sig.s_a));

    if (apply_swap) {
        env.log_send(session_b, Channel(Participant::Bob, Participant::Charlie), "attack:forward",
                     digest(signed_b.sig.p_prime) + digest(signed_b.sig.s_a));
        env.log_send(session_c, Channel(Participant::Charlie, Participant::Bob), "attack:forward",
                     digest(signed_c.sig.p_prime) + digest(signed_c.sig.s_a));
    }

    AttackReport report;
    report.scheme = Scheme::Entangled;
    report.attack = Attack::Swap;

    struct Leg {
        std::string session;
        Participant verifier;
        const EntangledSigningResult* signing;
        const PadKey* signer_key;
        const PadKey* verifier_key;
    };
    Participant verifier_b = apply_swap ? Participant::Charlie : Participant::Bob;
    Participant verifier_c = apply_swap ? Participant::Bob : Participant::Charlie;
    const Leg legs[] = {
        {session_b, verifier_b, &signed_b, &k_a_b,
         &(apply_swap ? keys_c.key_for(Participant::Charlie, Participant::Arbitrator)
                      : keys_b.key_for(Participant::Bob, Participant::Arbitrator))},
        {session_c, verifier_c, &signed_c, &k_a_c,
         &(apply_swap ? keys_b.key_for(Participant::Bob, Participant::Arbitrator)
                      : keys_c.key_for(Participant::Charlie, Participant::Arbitrator))},
    };

    for (const Leg& leg : legs) {
        bool passed = false;
        try {
            auto request = entangled_request(env, leg.session, leg.verifier, leg.signing->sig,
                                             *leg.verifier_key);
            auto reply = arbitrate_entangled(env, request, *leg.signer_key, *leg.verifier_key);
            auto inform = [&] {
                env.log_step(leg.session, Participant::Alice, "V6");
                env.announce(leg.session, "r", leg.signing->r.to_string(), Participant::Alice);
            };
            auto acceptance = verify_entangled(env, leg.session, leg.verifier, *leg.verifier_key,
                                               reply, leg.signing->sig.m_a,
                                               leg.signing->remote_halves, inform);
            passed = acceptance.accepted;
        } catch (const DeniedUnregistered&) {
            env.set_verdict(leg.session, "accepted", false);
            passed = false;
        }
        report.verifications_passed[leg.verifier] = passed;
    }

    report.finalize(env);
    return report;
}

namespace detail {
// Charlie's stand-in for the receiver check of the plain scheme: he compares
// the second forwarded copy of the padded message against what the
// arbitrator returned.
inline PlainAcceptance verify_transferred(Environment& env, const std::string& session,
                                          const QubitString& second_copy,
                                          const std::optional<PlainArbiterReturn>& returned,
                                          const PadKey& k_c,
                                          const std::function<void()>& inform_signer) {
    PlainAcceptance out;
    auto v_t = env.read_board(session, "V_T");
    if (!v_t) throw ProtocolStall("no arbitrator verdict on the board for session " + session);
    env.log_step(session, Participant::Charlie, "V4");
    if (*v_t != "1") {
        out.reason = "arbiter_reject";
        env.set_verdict(session, "accepted", false);
        return out;
    }
    if (!returned) throw ProtocolError("arbitrator accepted but returned no bundle");

    QubitString p_prime = qotp_decrypt_prefix(k_c, returned->p_prime_enc);
    QubitString s_a = qotp_decrypt_prefix(k_c, returned->s_a_enc);

    bool v_b = state_equal(second_copy, p_prime);
    env.set_verdict(session, "V_B", v_b);
    env.announce(session, "V_B", v_b ? "1" : "0", Participant::Charlie);
    if (!v_b) {
        out.reason = "r_ab_mismatch";
        env.set_verdict(session, "accepted", false);
        return out;
    }

    inform_signer();
    auto r_value = env.read_board(session, "r");
    if (!r_value) throw ProtocolStall("pad was never announced for session " + session);
    PadKey r = PadKey::from_string(*r_value);

    env.log_step(session, Participant::Charlie, "V6");
    out.accepted = true;
    out.message = qotp_decrypt(r, p_prime);
    out.final_s_a = s_a;
    out.final_r = r;
    env.set_verdict(session, "accepted", true);
    return out;
}
}  // namespace detail

// Signature-transfer attack on the entanglement-free scheme. Bob opens the
// bundle meant for him, recovers the second padded copy of the message from
// the inner check string, forwards both copies plus the signature to
// Charlie, and Charlie completes verification under his own arbitrator key.
inline AttackReport transfer_attack_plain(Environment& env, const QubitString& message,
                                          const std::string& session = "s0") {
    const std::size_t n = message.size();
    const std::size_t key_bits = 2 * (n + (env.harden().bind_receiver_id ? kIdentityQubits : 0));

    const KeyTable::Pair shared[] = {{Participant::Alice, Participant::Arbitrator},
                                     {Participant::Bob, Participant::Arbitrator},
                                     {Participant::Alice, Participant::Bob},
                                     {Participant::Charlie, Participant::Arbitrator}};
    KeyTable keys = preshare_keys(shared, key_bits, env.rng());
    env.log_step(session, Participant::Arbitrator, "I1");
    env.log(session, Participant::Arbitrator, "scheme", digest_text("plain"));
    if (env.harden().preregister_receiver) {
        env.register_receiver(Participant::Alice, Participant::Bob, session);
    }

    const PadKey& k_a = keys.key_for(Participant::Alice, Participant::Arbitrator);
    const PadKey& k_ab = keys.key_for(Participant::Alice, Participant::Bob);
    const PadKey& k_c = keys.key_for(Participant::Charlie, Participant::Arbitrator);

    auto bound = env.harden().bind_receiver_id ? std::optional<Participant>(Participant::Bob)
                                               : std::nullopt;
    auto signed_result = alice_sign_plain(env, session, message, k_a, k_ab, bound);
    env.log_send(session, Channel(Participant::Alice, Participant::Bob), "S",
                 digest(signed_result.bundle.c_p_prime) + digest(signed_result.bundle.c_s_a));

    // Bob opens the bundle and derives the independent second copy.
    PlainSignature opened = open_plain_bundle(signed_result.bundle, k_ab);
    QubitString second_copy = qotp_decrypt_prefix(k_ab, opened.r_ab);
    env.log_send(session, Channel(Participant::Bob, Participant::Charlie), "attack:forward",
                 digest(opened.p_prime) + digest(second_copy) + digest(opened.s_a));

    AttackReport report;
    report.scheme = Scheme::Plain;
    report.attack = Attack::Transfer;

    bool passed = false;
    try {
        auto request = plain_request(env, session, Participant::Charlie, opened.p_prime,
                                     opened.s_a, k_c);
        auto returned = arbitrate_plain(env, request, k_a, k_c);
        auto inform = [&] {
            env.log_step(session, Participant::Alice, "V5");
            env.announce(session, "r", signed_result.r.to_string(), Participant::Alice);
        };
        auto acceptance =
            detail::verify_transferred(env, session, second_copy, returned, k_c, inform);
        passed = acceptance.accepted;
    } catch (const DeniedUnregistered&) {
        env.set_verdict(session, "accepted", false);
        passed = false;
    }
    report.verifications_passed[Participant::Charlie] = passed;

    report.finalize(env);
    return report;
}

// The three explanations a dispute can hinge on.
enum class DisputeAssertion { ReceiverLied, SignerSentIncorrect, EveDisturbed };

struct DisputeClaim {
    Participant claimant;
    DisputeAssertion assertion;
    std::string session;
};

enum class DisputeVerdict { ResolvedForSigner, ResolvedForReceiver, Unresolvable };

inline std::string to_string(DisputeVerdict v) {
    switch (v) {
        case DisputeVerdict::ResolvedForSigner: return "resolved_for_signer";
        case DisputeVerdict::ResolvedForReceiver: return "resolved_for_receiver";
        case DisputeVerdict::Unresolvable: return "unresolvable";
    }
    throw ConfigError("unknown verdict");
}

namespace detail {
// The only evidence the arbitrator may argue from after the fact: registry
// entries, identity checks bound into signatures, and board posts that were
// published with announcer metadata. Plain event actors are simulator
// bookkeeping, not evidence.
inline std::optional<Participant> receiver_binding(const Transcript& t, const std::string& session) {
    for (const auto& [key, pass] : t.verdicts) {
        if (!pass) continue;
        const std::string prefix = session + "/registered=";
        if (key.rfind(prefix, 0) == 0) return participant_from_string(key.substr(prefix.size()));
    }
    if (t.verdict_or(session, "id_check", false)) {
        for (const auto& e : t.events) {
            if (e.session == session && e.kind == "id_check") return e.actor;
        }
    }
    for (const auto& e : t.events) {
        if (e.session != session) continue;
        if (e.kind == "announce_meta:accept" || e.kind == "announce_meta:V_B") return e.actor;
    }
    return std::nullopt;
}
}  // namespace detail

// Adjudicates a post-hoc dispute from the run's record. Aborted runs fall
// into the classic three-way ambiguity and stay unresolvable; completed runs
// resolve only when some countermeasure bound the verification to a party.
inline DisputeVerdict resolve_dispute(const Transcript& t, const DisputeClaim& claim) {
    bool known_scheme = false;
    for (const auto& e : t.events) {
        if (e.session == claim.session && e.kind == "scheme") {
            known_scheme = true;
            break;
        }
    }
    if (!known_scheme) throw ConfigError("transcript carries no scheme for session " + claim.session);

    if (!t.verdict_or(claim.session, "accepted", false)) {
        return DisputeVerdict::Unresolvable;
    }
    auto binding = detail::receiver_binding(t, claim.session);
    if (!binding) return DisputeVerdict::Unresolvable;

    switch (claim.assertion) {
        case DisputeAssertion::ReceiverLied:
            return *binding == claim.claimant ? DisputeVerdict::ResolvedForSigner
                                              : DisputeVerdict::ResolvedForReceiver;
        case DisputeAssertion::SignerSentIncorrect:
        case DisputeAssertion::EveDisturbed:
            // The bound, completed verification itself refutes these.
            return DisputeVerdict::ResolvedForSigner;
    }
    throw ConfigError("unknown assertion");
}

}  // namespace aqs
