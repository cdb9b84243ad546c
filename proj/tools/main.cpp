#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <variant>

#include "huygens/config.hpp"

namespace {

struct CommonOptions {
    std::string preset;
    std::string config_path;
    std::string out_path;
    int modes = 0;
    double step = 0.0;
    int threads = 1;
};

void add_common_options(CLI::App* sub, CommonOptions& opts) {
    sub->add_option("--preset", opts.preset, "built-in parameter set (see --list-presets)");
    sub->add_option("--config", opts.config_path, "JSON config file");
    sub->add_option("--out", opts.out_path, "output CSV path (default: stdout)");
    sub->add_option("--modes", opts.modes, "override the mode cutoff N");
    sub->add_option("--step", opts.step, "override the integration step");
    sub->add_option("--threads", opts.threads, "worker threads for independent rows")
        ->check(CLI::PositiveNumber);
}

bool subcommand_accepts(const std::string& name, const huygens::cli::RunConfig& cfg) {
    const bool scenario_like = std::holds_alternative<huygens::cli::ScenarioJob>(cfg.job) ||
                               std::holds_alternative<huygens::cli::SweepJob>(cfg.job);
    if (name == "scenario" || name == "sweep") return scenario_like;
    return name == cfg.subcommand;
}

void apply_overrides(huygens::cli::RunConfig& cfg, const CommonOptions& opts) {
    if (opts.modes > 0) {
        if (auto* job = std::get_if<huygens::cli::CommutatorJob>(&cfg.job)) {
            job->n_modes = opts.modes;
        } else if (auto* job = std::get_if<huygens::cli::ScenarioJob>(&cfg.job)) {
            job->config.cavity = huygens::CavitySpec(job->config.cavity.length, opts.modes);
        } else if (auto* job = std::get_if<huygens::cli::SweepJob>(&cfg.job)) {
            job->config.cavity = huygens::CavitySpec(job->config.cavity.length, opts.modes);
        } else {
            throw std::invalid_argument("--modes does not apply to this subcommand");
        }
    }
    if (opts.step > 0.0) {
        if (auto* job = std::get_if<huygens::cli::ScenarioJob>(&cfg.job)) {
            job->config.step = opts.step;
        } else if (auto* job = std::get_if<huygens::cli::SweepJob>(&cfg.job)) {
            job->config.step = opts.step;
        } else if (auto* job = std::get_if<huygens::cli::OracleJob>(&cfg.job)) {
            job->config.step_periods = opts.step;
        } else {
            throw std::invalid_argument("--step does not apply to this subcommand");
        }
    }
}

int execute(const std::string& name, const CommonOptions& opts) {
    using huygens::cli::RunConfig;

    if (opts.preset.empty() == opts.config_path.empty()) {
        std::cerr << "error: provide exactly one of --preset or --config\n";
        return 2;
    }

    RunConfig cfg;
    if (!opts.preset.empty()) {
        cfg = huygens::cli::preset(opts.preset);
    } else {
        std::ifstream in(opts.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file '" << opts.config_path << "'\n";
            return 2;
        }
        std::ostringstream text;
        text << in.rdbuf();
        cfg = huygens::cli::parse_config(text.str());
    }
    if (!subcommand_accepts(name, cfg)) {
        std::cerr << "error: config is for subcommand '" << cfg.subcommand << "', not '" << name
                  << "'\n";
        return 2;
    }
    apply_overrides(cfg, opts);

    huygens::cli::RunOptions run_options;
    run_options.threads = opts.threads;

    if (!opts.out_path.empty()) {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << opts.out_path << "'\n";
            return 2;
        }
        huygens::cli::run(cfg, out, run_options);
    } else {
        huygens::cli::run(cfg, std::cout, run_options);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"signal and energy propagation in a massless 1+1D field: "
                 "cavity detector scenarios, commutators, and lightcone checks"};
    app.require_subcommand(0, 1);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "print the preset names and exit");

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"commutator", "sample the cavity field commutator on a (t, x) grid"},
        {"energy-density", "energy density injected by a resting two-level detector"},
        {"total-energy", "total injected energy over a grid of coupling durations"},
        {"classical-demo", "classical d'Alembert bump: amplitude vs energy support"},
        {"scenario", "one sender->receiver signaling run"},
        {"sweep", "signaling runs over a parameter grid"},
        {"oracle", "truncated number-basis validator for one detector + one mode"},
    };

    auto opts = std::make_shared<CommonOptions>();
    for (const auto& [name, help] : subs) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common_options(sub, *opts);
    }

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const std::string& name : huygens::cli::preset_names()) std::cout << name << "\n";
        return 0;
    }
    const auto chosen = app.get_subcommands();
    if (chosen.empty()) {
        std::cerr << app.help();
        return 2;
    }

    try {
        return execute(chosen.front()->get_name(), *opts);
    } catch (const huygens::cli::ConfigError& e) {
        for (const std::string& problem : e.problems()) std::cerr << "config error: " << problem << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
