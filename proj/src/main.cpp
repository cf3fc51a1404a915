#include "linkopt/commands.hpp"
#include "linkopt/oracle.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"linkopt: closed-form PER approximations and cross-layer energy "
                 "optimization for block-fading links"};
    app.require_subcommand(1);

    std::string config_path, output_path, format, oracle_mode;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (INI-style sections)");
        sub->add_option("--set", sets, "override, section.key=value (repeatable)");
        sub->add_option("--output", output_path, "output path (default stdout)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "Monte Carlo seed")->each([&](const std::string&) {
            seed_given = true;
        });
        sub->add_option("--oracle", oracle_mode, "on or off: toggle numeric oracles")
            ->check(CLI::IsMember({"on", "off"}));
    };

    auto* describe = app.add_subcommand("describe", "print the modulation catalog");
    auto* per_error = app.add_subcommand("per-error", "relative-error report of the PER "
                                                      "approximations vs the quadrature oracle");
    auto* sweep = app.add_subcommand("sweep", "distance/SNR/payload sweep of required SNR "
                                              "and energy per bit");
    auto* joint = app.add_subcommand("joint", "joint optimization over SNR, payload, "
                                              "modulation, and retransmission limit");
    auto* validate = app.add_subcommand("validate", "run the numeric-oracle validation suite");
    for (auto* sub : {per_error, sweep, joint, validate}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    if (describe->parsed()) return linkopt::cmd_describe();

    linkopt::RunConfig config;
    try {
        if (!config_path.empty()) config = linkopt::load_config(config_path);
        for (const auto& s : sets) linkopt::apply_set(config, s);
        if (!output_path.empty()) config.output_path = output_path;
        if (!format.empty()) config.format = format;
        if (seed_given) config.seed = seed;
        if (oracle_mode == "off") {
            config.oracle_quadrature = false;
            config.oracle_monte_carlo = false;
        } else if (oracle_mode == "on") {
            config.oracle_quadrature = true;
        }
        linkopt::validate_config(config);
    } catch (const linkopt::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return linkopt::kExitConfig;
    }

    try {
        if (per_error->parsed()) return linkopt::cmd_per_error_report(config);
        if (sweep->parsed()) return linkopt::cmd_sweep(config);
        if (joint->parsed()) return linkopt::cmd_joint(config);
        if (validate->parsed()) return linkopt::cmd_validate(config);
    } catch (const linkopt::QuadratureFailure& e) {
        std::fprintf(stderr, "numeric-oracle failure: %s\n", e.what());
        return linkopt::kExitOracle;
    } catch (const linkopt::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return linkopt::kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return linkopt::kExitValidation;
    }
    return linkopt::kExitOk;
}
