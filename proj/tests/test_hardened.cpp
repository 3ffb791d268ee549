#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "aqs/adversary.hpp"
#include "aqs/hardened.hpp"
#include "test_support.hpp"

using namespace aqs;

namespace {

CountermeasureSet only_bind() {
    CountermeasureSet s;
    s.bind_receiver_id = true;
    return s;
}
CountermeasureSet only_metadata() {
    CountermeasureSet s;
    s.announce_metadata = true;
    return s;
}
CountermeasureSet only_preregister() {
    CountermeasureSet s;
    s.preregister_receiver = true;
    return s;
}

TEST(ReceiverId, EncodeDecodeIsDeterministicOverAllParticipants) {
    for (Participant p : {Participant::Alice, Participant::Bob, Participant::Charlie,
                          Participant::Arbitrator}) {
        QubitString id = encode_receiver_id(p);
        ASSERT_EQ(id.size(), kIdentityQubits);
        for (const Qubit& q : id) {
            // Basis encoding: a computational-basis measurement is deterministic.
            EXPECT_TRUE(qubit_equal(q, Qubit::zero()) || qubit_equal(q, Qubit::one()));
        }
        EXPECT_EQ(decode_receiver_id(id), p);
    }
}

TEST(ReceiverId, OffBasisQubitsDecodeToNothing) {
    QubitString bad = {Qubit::plus(), Qubit::zero()};
    EXPECT_FALSE(decode_receiver_id(bad).has_value());
    QubitString short_id = {Qubit::zero()};
    EXPECT_FALSE(decode_receiver_id(short_id).has_value());
}

TEST(ReceiverId, SurvivesThePadRoundtrip) {
    SeededRng rng(1);
    for (int i = 0; i < 50; ++i) {
        QubitString payload = append_receiver_id(random_message(3, rng), Participant::Charlie);
        PadKey k = PadKey::random(2 * payload.size(), rng);
        QubitString opened = qotp_decrypt(k, qotp_encrypt(k, payload));
        auto embedded =
            decode_receiver_id(std::span<const Qubit>(opened).subspan(3, kIdentityQubits));
        EXPECT_EQ(embedded, Participant::Charlie);
    }
}

TEST(BindReceiverId, HonestSessionsUnaffected) {
    Environment env(2, only_bind());
    QubitString message = random_message(4, env.rng());
    auto run = run_entangled_session(env, "s0", Participant::Bob, message);
    ASSERT_TRUE(run.acceptance.accepted);
    EXPECT_TRUE(state_equal(*run.acceptance.message, message));
    EXPECT_TRUE(env.transcript().verdict_or("s0", "id_check", false));
    EXPECT_FALSE(env.alarm());

    Environment env2(3, only_bind());
    QubitString message2 = random_message(4, env2.rng());
    auto run2 = run_plain_session(env2, "s0", Participant::Bob, message2);
    ASSERT_TRUE(run2.acceptance.accepted);
    EXPECT_FALSE(env2.alarm());
}

TEST(BindReceiverId, SwapAttackDetectedAndRejected) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Environment env(100 + seed, only_bind());
        QubitString mb = random_message(4, env.rng());
        QubitString mc = random_message(4, env.rng());
        auto report = swap_attack_entangled(env, mb, mc);
        EXPECT_TRUE(report.arbitrator_detected);
        EXPECT_FALSE(report.deniability_established);
        EXPECT_FALSE(report.verifications_passed.at(Participant::Bob));
        EXPECT_FALSE(report.verifications_passed.at(Participant::Charlie));
        EXPECT_FALSE(env.transcript().verdict_or("sB", "id_check", true));
    }
}

TEST(BindReceiverId, TransferAttackDetectedAndRejected) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Environment env(200 + seed, only_bind());
        QubitString m = random_message(4, env.rng());
        auto report = transfer_attack_plain(env, m);
        EXPECT_TRUE(report.arbitrator_detected);
        EXPECT_FALSE(report.deniability_established);
        EXPECT_FALSE(report.verifications_passed.at(Participant::Charlie));
        EXPECT_EQ(env.read_board("s0", "V_T"), "0");
    }
}

TEST(Preregistration, RegisteredReceiverAllowedOthersDenied) {
    Environment env(4, only_preregister());
    env.register_receiver(Participant::Alice, Participant::Bob, "s1");
    EXPECT_TRUE(enforce_preregistration(env, "s1", Participant::Bob));
    EXPECT_FALSE(enforce_preregistration(env, "s1", Participant::Charlie));
    EXPECT_FALSE(enforce_preregistration(env, "unregistered", Participant::Bob));
    EXPECT_TRUE(env.alarm());
}

TEST(Preregistration, UnregisteredSessionRequestThrowsAtArbitration) {
    Environment env(44, only_preregister());
    const std::size_t n = 3;
    QubitString message = random_message(n, env.rng());
    PadKey k_a = PadKey::random(2 * n, env.rng());
    PadKey k_b = PadKey::random(2 * n, env.rng());
    PadKey k_ab = PadKey::random(2 * n, env.rng());
    auto signing = sign_plain(message, k_a, k_ab, env.rng());
    PlainSignature opened = open_plain_bundle(signing.bundle, k_ab);
    auto req = plain_request(env, "never_registered", Participant::Bob, opened.p_prime,
                             opened.s_a, k_b);
    EXPECT_THROW(arbitrate_plain(env, req, k_a, k_b), DeniedUnregistered);
    EXPECT_TRUE(env.alarm());
}

TEST(Preregistration, HonestSessionsUnaffected) {
    Environment env(5, only_preregister());
    QubitString message = random_message(4, env.rng());
    auto run = run_entangled_session(env, "s0", Participant::Bob, message);
    ASSERT_TRUE(run.acceptance.accepted);
    EXPECT_FALSE(env.alarm());
}

TEST(Preregistration, SwapAttackDeniedOnBothLegs) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Environment env(300 + seed, only_preregister());
        QubitString mb = random_message(4, env.rng());
        QubitString mc = random_message(4, env.rng());
        auto report = swap_attack_entangled(env, mb, mc);
        EXPECT_TRUE(report.arbitrator_detected);
        EXPECT_FALSE(report.deniability_established);
        EXPECT_FALSE(report.verifications_passed.at(Participant::Bob));
        EXPECT_FALSE(report.verifications_passed.at(Participant::Charlie));
    }
}

TEST(Preregistration, TransferAttackDenied) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Environment env(400 + seed, only_preregister());
        QubitString m = random_message(4, env.rng());
        auto report = transfer_attack_plain(env, m);
        EXPECT_TRUE(report.arbitrator_detected);
        EXPECT_FALSE(report.deniability_established);
        EXPECT_FALSE(report.verifications_passed.at(Participant::Charlie));
        // The denial is logged.
        bool denied_event = false;
        for (const auto& e : env.transcript().events) {
            denied_event = denied_event || (e.session == "s0" && e.kind == "deny");
        }
        EXPECT_TRUE(denied_event);
    }
}

TEST(AnnounceMetadata, HonestPlainRunAttributesVbToTheReceiver) {
    Environment env(6, only_metadata());
    QubitString message = random_message(4, env.rng());
    auto run = run_plain_session(env, "s0", Participant::Bob, message);
    ASSERT_TRUE(run.acceptance.accepted);
    auto vb = env.board().find("s0", "V_B");
    ASSERT_TRUE(vb.has_value());
    EXPECT_EQ(vb->announcer, Participant::Bob);
    ASSERT_TRUE(vb->time.has_value());
    EXPECT_EQ(resolve_dispute(env.transcript(),
                              {Participant::Bob, DisputeAssertion::ReceiverLied, "s0"}),
              DisputeVerdict::ResolvedForSigner);
}

TEST(AnnounceMetadata, BaselineRunCannotBeAttributed) {
    Environment env(7);
    QubitString message = random_message(4, env.rng());
    auto run = run_plain_session(env, "s0", Participant::Bob, message);
    ASSERT_TRUE(run.acceptance.accepted);
    EXPECT_FALSE(env.board().find("s0", "V_B")->announcer.has_value());
    EXPECT_EQ(resolve_dispute(env.transcript(),
                              {Participant::Bob, DisputeAssertion::ReceiverLied, "s0"}),
              DisputeVerdict::Unresolvable);
}

TEST(AnnounceMetadata, AttacksStillPassButDisputesResolve) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Environment env(500 + seed, only_metadata());
        QubitString mb = random_message(4, env.rng());
        QubitString mc = random_message(4, env.rng());
        auto report = swap_attack_entangled(env, mb, mc);
        EXPECT_TRUE(report.deniability_established);
        // The acceptance post names Charlie, so Bob's denial is upheld.
        EXPECT_EQ(resolve_dispute(env.transcript(),
                                  {Participant::Bob, DisputeAssertion::ReceiverLied, "sB"}),
                  DisputeVerdict::ResolvedForReceiver);

        Environment env2(600 + seed, only_metadata());
        QubitString m = random_message(4, env2.rng());
        auto transfer_report = transfer_attack_plain(env2, m);
        EXPECT_TRUE(transfer_report.deniability_established);
        EXPECT_EQ(resolve_dispute(env2.transcript(),
                                  {Participant::Bob, DisputeAssertion::ReceiverLied, "s0"}),
                  DisputeVerdict::ResolvedForReceiver);
    }
}

// Interleaving two sessions: with metadata on, (announcer, time, session)
// separate the merged announcement stream back into the per-session orders.
TEST(AnnounceMetadata, InterleavedSessionsRemainSeparable) {
    Environment env(8, only_metadata());
    const std::size_t n = 3;
    QubitString msg_a = random_message(n, env.rng());
    QubitString msg_b = random_message(n, env.rng());

    const KeyTable::Pair share_a[] = {{Participant::Alice, Participant::Arbitrator},
                                      {Participant::Bob, Participant::Arbitrator},
                                      {Participant::Alice, Participant::Bob}};
    const KeyTable::Pair share_b[] = {{Participant::Alice, Participant::Arbitrator},
                                      {Participant::Charlie, Participant::Arbitrator},
                                      {Participant::Alice, Participant::Charlie}};
    KeyTable keys_a = preshare_keys(share_a, 2 * n, env.rng());
    KeyTable keys_b = preshare_keys(share_b, 2 * n, env.rng());

    auto signed_a = sign_plain(msg_a, keys_a.key_for(Participant::Alice, Participant::Arbitrator),
                               keys_a.key_for(Participant::Alice, Participant::Bob), env.rng());
    auto signed_b = sign_plain(msg_b, keys_b.key_for(Participant::Alice, Participant::Arbitrator),
                               keys_b.key_for(Participant::Alice, Participant::Charlie), env.rng());

    auto opened_a = open_plain_bundle(signed_a.bundle,
                                      keys_a.key_for(Participant::Alice, Participant::Bob));
    auto opened_b = open_plain_bundle(signed_b.bundle,
                                      keys_b.key_for(Participant::Alice, Participant::Charlie));

    // Interleave the two verifying phases step by step.
    auto req_a = plain_request(env, "sA", Participant::Bob, opened_a.p_prime, opened_a.s_a,
                               keys_a.key_for(Participant::Bob, Participant::Arbitrator));
    auto req_b = plain_request(env, "sX", Participant::Charlie, opened_b.p_prime, opened_b.s_a,
                               keys_b.key_for(Participant::Charlie, Participant::Arbitrator));
    auto ret_a = arbitrate_plain(env, req_a,
                                 keys_a.key_for(Participant::Alice, Participant::Arbitrator),
                                 keys_a.key_for(Participant::Bob, Participant::Arbitrator));
    auto ret_b = arbitrate_plain(env, req_b,
                                 keys_b.key_for(Participant::Alice, Participant::Arbitrator),
                                 keys_b.key_for(Participant::Charlie, Participant::Arbitrator));
    auto acc_a = verify_plain(env, "sA", Participant::Bob,
                              keys_a.key_for(Participant::Bob, Participant::Arbitrator), opened_a,
                              ret_a, keys_a.key_for(Participant::Alice, Participant::Bob), [&] {
                                  env.announce("sA", "r", signed_a.r.to_string(),
                                               Participant::Alice);
                              });
    auto acc_b = verify_plain(env, "sX", Participant::Charlie,
                              keys_b.key_for(Participant::Charlie, Participant::Arbitrator),
                              opened_b, ret_b,
                              keys_b.key_for(Participant::Alice, Participant::Charlie), [&] {
                                  env.announce("sX", "r", signed_b.r.to_string(),
                                               Participant::Alice);
                              });
    ASSERT_TRUE(acc_a.accepted);
    ASSERT_TRUE(acc_b.accepted);

    // The merged stream contains both sessions' posts in interleaved order.
    const auto& items = env.board().items();
    ASSERT_EQ(items.size(), 6u);

    // Oracle: permute the stream, then regroup by session and sort by the
    // attached time; each session must read V_T, V_B, r with the expected
    // announcers, matching the unpermuted per-session view.
    std::vector<Announcement> shuffled(items.begin(), items.end());
    std::reverse(shuffled.begin(), shuffled.end());
    for (const std::string& session : {std::string("sA"), std::string("sX")}) {
        std::vector<Announcement> group;
        for (const auto& a : shuffled) {
            if (a.session == session) group.push_back(a);
        }
        std::sort(group.begin(), group.end(),
                  [](const Announcement& x, const Announcement& y) { return *x.time < *y.time; });
        ASSERT_EQ(group.size(), 3u);
        EXPECT_EQ(group[0].label, "V_T");
        EXPECT_EQ(group[0].announcer, Participant::Arbitrator);
        EXPECT_EQ(group[1].label, "V_B");
        EXPECT_EQ(group[1].announcer,
                  session == "sA" ? Participant::Bob : Participant::Charlie);
        EXPECT_EQ(group[2].label, "r");
        EXPECT_EQ(group[2].announcer, Participant::Alice);
    }
}

// Honest-run acceptance is preserved by every countermeasure subset.
TEST(Countermeasures, MonotonicityAcrossAllSubsets) {
    for (int mask = 0; mask < 8; ++mask) {
        CountermeasureSet harden;
        harden.bind_receiver_id = mask & 1;
        harden.announce_metadata = mask & 2;
        harden.preregister_receiver = mask & 4;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Environment env_e(700 + seed, harden);
            QubitString msg_e = random_message(4, env_e.rng());
            auto run_e = run_entangled_session(env_e, "s0", Participant::Bob, msg_e);
            EXPECT_TRUE(run_e.acceptance.accepted) << "mask=" << mask;
            EXPECT_TRUE(state_equal(*run_e.acceptance.message, msg_e));

            Environment env_p(800 + seed, harden);
            QubitString msg_p = random_message(4, env_p.rng());
            auto run_p = run_plain_session(env_p, "s0", Participant::Bob, msg_p);
            EXPECT_TRUE(run_p.acceptance.accepted) << "mask=" << mask;
            EXPECT_TRUE(state_equal(*run_p.acceptance.message, msg_p));
        }
    }
}

// With all three measures on, completeness holds across message lengths.
TEST(Countermeasures, FullHardeningPreservesCompleteness) {
    CountermeasureSet all;
    all.bind_receiver_id = true;
    all.announce_metadata = true;
    all.preregister_receiver = true;
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Environment env(900 + 10 * n + seed, all);
            QubitString message = random_message(n, env.rng());
            auto run = run_entangled_session(env, "s0", Participant::Bob, message);
            ASSERT_TRUE(run.acceptance.accepted) << "n=" << n;
        }
    }
}

}  // namespace
