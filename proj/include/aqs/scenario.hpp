#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aqs/adversary.hpp"
#include "aqs/countermeasures.hpp"
#include "aqs/errors.hpp"
#include "aqs/scheme_entangled.hpp"
#include "aqs/scheme_plain.hpp"
#include "aqs/session.hpp"
#include "aqs/transcript.hpp"

namespace aqs {

// What a scenario is supposed to demonstrate. Derived from the attack and
// countermeasure combination unless overridden.
enum class Expectation { HonestAccept, AttackDeniable, AttackBlocked, AttackAttributable };

inline std::string to_string(Expectation e) {
    switch (e) {
        case Expectation::HonestAccept: return "accept";
        case Expectation::AttackDeniable: return "deniable";
        case Expectation::AttackBlocked: return "blocked";
        case Expectation::AttackAttributable: return "attributable";
    }
    throw ConfigError("unknown expectation");
}

inline Expectation expectation_from_string(const std::string& s) {
    if (s == "accept") return Expectation::HonestAccept;
    if (s == "deniable") return Expectation::AttackDeniable;
    if (s == "blocked") return Expectation::AttackBlocked;
    if (s == "attributable") return Expectation::AttackAttributable;
    throw ConfigError("unknown expectation: " + s);
}

struct ScenarioConfig {
    Scheme scheme = Scheme::Entangled;
    std::size_t n_qubits = 4;
    std::uint64_t seed = 1;
    Attack attack = Attack::None;
    CountermeasureSet harden;
    std::size_t trials = 1;
    std::string out;  // transcript path; empty writes no files
    std::optional<Expectation> expect;

    void validate() const {
        if (n_qubits < 1) throw ConfigError("n_qubits must be at least 1");
        if (trials < 1) throw ConfigError("trials must be at least 1");
        if (attack == Attack::Swap && scheme != Scheme::Entangled) {
            throw ConfigError("the swap attack applies to the entangled scheme only");
        }
        if (attack == Attack::Transfer && scheme != Scheme::Plain) {
            throw ConfigError("the transfer attack applies to the plain scheme only");
        }
    }
};

inline Scheme scheme_from_string(const std::string& s) {
    if (s == "entangled") return Scheme::Entangled;
    if (s == "plain") return Scheme::Plain;
    throw ConfigError("unknown scheme: " + s);
}

inline Attack attack_from_string(const std::string& s) {
    if (s == "none") return Attack::None;
    if (s == "swap") return Attack::Swap;
    if (s == "transfer") return Attack::Transfer;
    throw ConfigError("unknown attack: " + s);
}

inline bool bool_from_string(const std::string& s) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    throw ConfigError("expected a boolean, got: " + s);
}

// Flat key=value configuration, one pair per line, '#' comments.
inline ScenarioConfig parse_config_text(std::istream& in) {
    ScenarioConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) {
            line.pop_back();
        }
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line.erase(0, start);
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key=value, got: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);

        if (key == "scheme") {
            cfg.scheme = scheme_from_string(value);
        } else if (key == "n_qubits") {
            cfg.n_qubits = std::stoul(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "attack") {
            cfg.attack = attack_from_string(value);
        } else if (key == "trials") {
            cfg.trials = std::stoul(value);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "expect") {
            cfg.expect = expectation_from_string(value);
        } else if (key == "harden") {
            cfg.harden = parse_countermeasures(value);
        } else if (key == "harden.bind_receiver_id") {
            cfg.harden.bind_receiver_id = bool_from_string(value);
        } else if (key == "harden.announce_metadata") {
            cfg.harden.announce_metadata = bool_from_string(value);
        } else if (key == "harden.preregister_receiver") {
            cfg.harden.preregister_receiver = bool_from_string(value);
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    return cfg;
}

inline ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config_text(in);
}

inline Expectation derive_expectation(const ScenarioConfig& cfg) {
    // Honest batteries always expect acceptance; the override chooses among
    // attack outcomes only.
    if (cfg.attack == Attack::None) return Expectation::HonestAccept;
    if (cfg.expect) return *cfg.expect;
    if (cfg.harden.bind_receiver_id || cfg.harden.preregister_receiver) {
        return Expectation::AttackBlocked;
    }
    if (cfg.harden.announce_metadata) return Expectation::AttackAttributable;
    return Expectation::AttackDeniable;
}

struct TrialResult {
    bool accepted = false;       // honest run accepted with the right message
    bool verified = false;       // attack runs: every verification leg passed
    bool deniability = false;
    bool detected = false;
    DisputeVerdict dispute = DisputeVerdict::Unresolvable;
    bool expectation_met = false;
};

struct ScenarioOutcome {
    int status = 0;  // 0 expectations met, 2 violated, 1 config/runtime error
    Expectation expectation = Expectation::HonestAccept;
    std::vector<TrialResult> trial_results;
    Transcript transcript;  // all trials merged, times re-based
    std::string summary;
};

namespace detail {
inline void merge_transcript(Transcript& merged, const Transcript& trial) {
    std::uint64_t offset = merged.events.empty() ? 0 : merged.events.back().time;
    for (const auto& e : trial.events) {
        merged.events.push_back({e.time + offset, e.actor, e.kind, e.digest, e.session});
    }
    merged.verdicts.insert(trial.verdicts.begin(), trial.verdicts.end());
}

inline std::string ratio(std::size_t hits, std::size_t total) {
    return std::to_string(hits) + "/" + std::to_string(total);
}
}  // namespace detail

// Runs `trials` independent sessions seeded seed, seed+1, ... and aggregates.
inline ScenarioOutcome run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();

    ScenarioOutcome outcome;
    outcome.expectation = derive_expectation(cfg);

    for (std::size_t t = 0; t < cfg.trials; ++t) {
        Environment env(cfg.seed + t, cfg.harden);
        const std::string prefix = "t" + std::to_string(t) + ".";
        TrialResult result;

        if (cfg.attack == Attack::None) {
            QubitString message = random_message(cfg.n_qubits, env.rng());
            bool ok = false;
            if (cfg.scheme == Scheme::Entangled) {
                auto run = run_entangled_session(env, prefix + "s0", Participant::Bob, message);
                ok = run.acceptance.accepted && run.acceptance.message &&
                     state_equal(*run.acceptance.message, message);
            } else {
                auto run = run_plain_session(env, prefix + "s0", Participant::Bob, message);
                ok = run.acceptance.accepted && run.acceptance.message &&
                     state_equal(*run.acceptance.message, message);
            }
            result.accepted = ok;
            result.verified = ok;
            result.expectation_met = ok;
        } else {
            AttackReport report;
            std::string disputed_session;
            if (cfg.attack == Attack::Swap) {
                QubitString msg_b = random_message(cfg.n_qubits, env.rng());
                QubitString msg_c = random_message(cfg.n_qubits, env.rng());
                disputed_session = prefix + "sB";
                report = swap_attack_entangled(env, msg_b, msg_c, prefix + "sB", prefix + "sC");
            } else {
                QubitString message = random_message(cfg.n_qubits, env.rng());
                disputed_session = prefix + "s0";
                report = transfer_attack_plain(env, message, prefix + "s0");
            }
            result.verified = true;
            for (const auto& [who, passed] : report.verifications_passed) {
                (void)who;
                result.verified = result.verified && passed;
            }
            result.deniability = report.deniability_established;
            result.detected = report.arbitrator_detected;
            result.dispute = resolve_dispute(
                env.transcript(),
                {Participant::Bob, DisputeAssertion::ReceiverLied, disputed_session});

            switch (outcome.expectation) {
                case Expectation::HonestAccept:
                    result.expectation_met = result.verified;
                    break;
                case Expectation::AttackDeniable:
                    result.expectation_met =
                        result.deniability && result.dispute == DisputeVerdict::Unresolvable;
                    break;
                case Expectation::AttackBlocked:
                    result.expectation_met = !result.deniability;
                    break;
                case Expectation::AttackAttributable:
                    result.expectation_met =
                        result.deniability && result.dispute != DisputeVerdict::Unresolvable;
                    break;
            }
        }

        detail::merge_transcript(outcome.transcript, env.transcript());
        outcome.trial_results.push_back(result);
    }

    std::size_t accepted = 0, verified = 0, deniable = 0, detected = 0, resolved = 0, met = 0;
    for (const auto& r : outcome.trial_results) {
        accepted += r.accepted;
        verified += r.verified;
        deniable += r.deniability;
        detected += r.detected;
        resolved += r.dispute != DisputeVerdict::Unresolvable;
        met += r.expectation_met;
    }
    bool all_met = met == outcome.trial_results.size();
    outcome.status = all_met ? 0 : 2;

    std::ostringstream s;
    s << "scheme=" << to_string(cfg.scheme) << "\n";
    s << "attack=" << to_string(cfg.attack) << "\n";
    s << "n_qubits=" << cfg.n_qubits << "\n";
    s << "seed=" << cfg.seed << "\n";
    s << "trials=" << cfg.trials << "\n";
    s << "harden=" << to_string(cfg.harden) << "\n";
    s << "expectation=" << to_string(outcome.expectation) << "\n";
    if (cfg.attack == Attack::None) {
        s << "accepted=" << detail::ratio(accepted, cfg.trials) << "\n";
    } else {
        s << "verified=" << detail::ratio(verified, cfg.trials) << "\n";
        s << "deniability=" << detail::ratio(deniable, cfg.trials) << "\n";
        s << "detected=" << detail::ratio(detected, cfg.trials) << "\n";
        s << "dispute_resolved=" << detail::ratio(resolved, cfg.trials) << "\n";
    }
    s << "expectation_met=" << (all_met ? 1 : 0) << "\n";
    outcome.summary = s.str();

    if (!cfg.out.empty()) {
        transcript_write(outcome.transcript, cfg.out);
        std::ofstream sum(cfg.out + ".summary", std::ios::binary);
        if (!sum) throw IoError("cannot open summary sink: " + cfg.out + ".summary");
        sum << outcome.summary;
        if (!sum) throw IoError("failed writing summary: " + cfg.out + ".summary");
    }
    return outcome;
}

}  // namespace aqs
