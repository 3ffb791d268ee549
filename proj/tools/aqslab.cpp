// Scenario runner for the AQS protocol laboratory.
//
//   aqslab --scheme entangled --qubits 4 --seed 7 --attack swap --trials 100 --out swap.transcript
//   aqslab --config scenario.cfg
//
// Exit status: 0 every trial met the scenario expectation, 2 some trial
// violated it, 1 configuration or runtime error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aqs/aqs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Arbitrated quantum signature protocol laboratory"};

    std::string config_path;
    std::string scheme = "entangled";
    std::string attack = "none";
    std::string harden = "none";
    std::string expect;
    std::string out;
    std::size_t qubits = 4;
    std::size_t trials = 1;
    std::uint64_t seed = 1;

    auto* config_opt = app.add_option("--config", config_path, "key=value scenario file");
    auto* scheme_opt = app.add_option("--scheme", scheme, "entangled | plain");
    auto* qubits_opt = app.add_option("--qubits", qubits, "message length in qubits");
    auto* seed_opt = app.add_option("--seed", seed, "base seed; trial t uses seed+t");
    auto* attack_opt = app.add_option("--attack", attack, "none | swap | transfer");
    auto* harden_opt = app.add_option(
        "--harden", harden,
        "comma list of bind_receiver_id, announce_metadata, preregister_receiver; or none");
    auto* trials_opt = app.add_option("--trials", trials, "independent trials to run");
    auto* out_opt = app.add_option("--out", out, "transcript path (summary goes to <out>.summary)");
    auto* expect_opt =
        app.add_option("--expect", expect, "override: accept | deniable | blocked | attributable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        aqs::ScenarioConfig cfg;
        if (*config_opt) cfg = aqs::load_config_file(config_path);
        if (*scheme_opt) cfg.scheme = aqs::scheme_from_string(scheme);
        if (*qubits_opt) cfg.n_qubits = qubits;
        if (*seed_opt) cfg.seed = seed;
        if (*attack_opt) cfg.attack = aqs::attack_from_string(attack);
        if (*harden_opt) cfg.harden = aqs::parse_countermeasures(harden);
        if (*trials_opt) cfg.trials = trials;
        if (*out_opt) cfg.out = out;
        if (*expect_opt) cfg.expect = aqs::expectation_from_string(expect);

        auto outcome = aqs::run_scenario(cfg);
        std::cout << outcome.summary;
        return outcome.status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
