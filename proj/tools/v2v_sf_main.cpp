#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2vsf/experiments.hpp"
#include "v2vsf/quadrature.hpp"

namespace {

void apply_overrides(v2vsf::cli::ExperimentConfig& cfg, const std::vector<std::string>& sets) {
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw v2vsf::cli::UsageError("--set expects key=value, got: " + kv);
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inter-lane V2V signal-fraction experiments"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    bool seed_given = false, trials_given = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--set", sets, "override a config key (key=value, repeatable)");
        cmd->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
            seed_given = true;
        });
        cmd->add_option("--trials", trials, "Monte Carlo trial count")
            ->each([&](const std::string&) { trials_given = true; });
    };

    CLI::App* fig1 = app.add_subcommand("fig1", "analytic vs Monte Carlo vs replacement PPP");
    CLI::App* fig2 = app.add_subcommand("fig2", "approximation validation and error probes");
    CLI::App* fig3 = app.add_subcommand("fig3", "SF vs transmit power with the noise-free limit");
    CLI::App* sweep = app.add_subcommand("sweep", "free-form single-key sweep from a config file");
    std::string config_path;
    sweep->add_option("--config", config_path, "flat key=value config file")->required();
    for (CLI::App* cmd : {fig1, fig2, fig3, sweep}) add_common(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        v2vsf::cli::ExperimentConfig cfg;
        if (app.got_subcommand(sweep)) cfg = v2vsf::cli::load_config_file(config_path);
        apply_overrides(cfg, sets);
        if (seed_given) cfg.set("seed", std::to_string(seed));
        if (trials_given) cfg.set("trials", std::to_string(trials));
        v2vsf::cli::apply_seed_env(cfg);

        v2vsf::cli::RunOutputs outputs;
        if (app.got_subcommand(sweep)) {
            outputs = v2vsf::cli::run_sweep(cfg, out_dir);
        } else {
            const std::string name = app.get_subcommands().front()->get_name();
            outputs = v2vsf::cli::run_named(name, cfg, out_dir);
        }
        for (const auto& f : outputs.files) std::cout << "wrote " << f.string() << '\n';
        return 0;
    } catch (const v2vsf::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const v2vsf::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const v2vsf::quad::IntegrationError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}
