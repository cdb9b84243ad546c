#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "huygens/config.hpp"
#include "huygens/csv.hpp"

using namespace huygens;
using namespace huygens::cli;

namespace {

std::string run_to_string(const RunConfig& cfg, int threads = 1) {
    std::ostringstream out;
    RunOptions options;
    options.threads = threads;
    run(cfg, out, options);
    return out.str();
}

}  // namespace

TEST_CASE("csv numbers print with 9 significant digits") {
    CHECK(csv_number(1.0 / 3.0) == "0.333333333");
    CHECK(csv_number(0.0) == "0");
    CHECK(csv_number(-2.5e-7) == "-2.5e-07");
    CHECK(csv_number(31.41592653589793) == "31.4159265");
}

TEST_CASE("grid expansion is inclusive") {
    const GridSpec grid{0.46, 1.2, 0.01};
    const auto values = grid.values();
    CHECK(values.size() == 75);
    CHECK(values.front() == doctest::Approx(0.46));
    CHECK(values.back() == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("every preset serializes and re-parses to the identical config") {
    for (const std::string& name : preset_names()) {
        CAPTURE(name);
        const RunConfig original = preset(name);
        const std::string text = serialize_config(original);
        const RunConfig reparsed = parse_config(text);
        CHECK(serialize_config(reparsed) == text);
        CHECK(reparsed.subcommand == original.subcommand);
    }
}

TEST_CASE("fig5 preset carries the documented parameters verbatim") {
    const RunConfig cfg = preset("fig5");
    const auto& job = std::get<SweepJob>(cfg.job);
    CHECK(job.config.cavity.n_modes == 200);
    CHECK(job.config.sender.position == 0.5);
    CHECK(job.config.receiver.position == 0.6);
    CHECK(job.config.sender.coupling == 0.075);
    CHECK(job.config.sender.gap == doctest::Approx(10.0 * 3.14159265358979).epsilon(1e-10));
    CHECK(job.config.sender.t_off == 0.3);
    CHECK(job.config.receiver.t_on == 0.46);
    CHECK(job.config.init.kind == SenderKind::displaced);
    CHECK(job.config.init.mean(1) == 1.0);
    // fig4 is the same preset under the caption's other figure number.
    CHECK(serialize_config(preset("fig4")) == serialize_config(cfg));
}

TEST_CASE("unknown preset and unknown keys are rejected") {
    CHECK_THROWS_AS(preset("fig99"), std::invalid_argument);

    const std::string text = R"({
        "subcommand": "total-energy",
        "gap": 1.0, "coupling": 0.1, "excited_weight": 1.0,
        "omega_t_grid": {"min": 1.0, "max": 2.0, "step": 0.5},
        "typo_key": 3
    })";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("typo_key") != std::string::npos);
    }
}

TEST_CASE("negative coupling is rejected with the key named") {
    const std::string text = R"({
        "subcommand": "scenario",
        "cavity": {"length": 1.0, "n_modes": 4},
        "sender": {"gap": 3.14, "coupling": -0.075, "position": 0.5, "window": [0.0, 0.3]},
        "receiver": {"gap": 3.14, "coupling": 0.075, "position": 0.6, "window": [0.46, 0.8]},
        "sender_init": {"type": "displaced", "mean": [0.0, 1.0]}
    })";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("sender.coupling") != std::string::npos);
    }
}

TEST_CASE("all problems are reported together") {
    const std::string text = R"({
        "subcommand": "scenario",
        "cavity": {"length": -1.0, "n_modes": 0},
        "sender": {"gap": 0.0, "coupling": -0.1, "position": 0.5, "window": [0.3, 0.1]},
        "receiver": {"gap": 3.14, "coupling": 0.075, "position": 0.6, "window": [0.46, 0.8]},
        "sender_init": {"type": "displaced", "mean": [0.0, 1.0]}
    })";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.problems().size() >= 5);
    }
}

TEST_CASE("empty and malformed documents fail loudly") {
    CHECK_THROWS_AS(parse_config(""), ConfigError);
    CHECK_THROWS_AS(parse_config("{\"subcommand\": \"scenario\""), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2, 3]"), ConfigError);
    try {
        parse_config("{respectfully not json}");
    } catch (const ConfigError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("syntax error") != std::string::npos);
    }
}

TEST_CASE("missing sender_init is reported") {
    const std::string text = R"({
        "subcommand": "scenario",
        "cavity": {"length": 1.0, "n_modes": 4},
        "sender": {"gap": 3.14, "coupling": 0.05, "position": 0.5, "window": [0.0, 0.3]},
        "receiver": {"gap": 3.14, "coupling": 0.075, "position": 0.6, "window": [0.46, 0.8]}
    })";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("sender_init") != std::string::npos);
    }
}

TEST_CASE("deterministic byte-identical output, independent of thread count") {
    // Tiny scenario so the round trip stays fast.
    const std::string text = R"({
        "subcommand": "sweep",
        "cavity": {"length": 1.0, "n_modes": 6},
        "sender": {"gap": 9.42477796076938, "coupling": 0.05, "position": 0.45, "window": [0.0, 0.2]},
        "receiver": {"gap": 9.42477796076938, "coupling": 0.05, "position": 0.55, "window": [0.35, 0.8]},
        "sender_init": {"type": "displaced", "mean": [0.0, 1.0]},
        "parameter": "receiver_position",
        "values": [0.5, 0.55, 0.6]
    })";
    const RunConfig cfg = parse_config(text);
    const std::string once = run_to_string(cfg, 1);
    const std::string twice = run_to_string(cfg, 1);
    const std::string threaded = run_to_string(cfg, 3);
    CHECK(once == twice);
    CHECK(once == threaded);
    CHECK(once.find("T2,q_B_mean,p_B_mean,r,sigma_qq,sigma_pp,sigma_qp,"
                    "Pe_signal,Pe_vacuum,dPe,timelike\n") != std::string::npos);
}

TEST_CASE("commutator table emits the documented grid") {
    const std::string text = R"({
        "subcommand": "commutator",
        "length": 1.0, "n_modes": 50, "form": "closed", "smoothing": "none",
        "t1": 0.0, "x1": 0.5,
        "t_grid": {"min": 0.0, "max": 0.4, "step": 0.2},
        "x_grid": {"min": 0.3, "max": 0.7, "step": 0.2},
        "notes": ["note line"]
    })";
    const std::string out = run_to_string(parse_config(text));
    CHECK(out.find("# note line\n") == 0);
    CHECK(out.find("t,x,value\n") != std::string::npos);
    // 3 x 3 grid plus comment and header.
    CHECK(std::count(out.begin(), out.end(), '\n') == 11);
    // The timelike interior point (t=0.4 > |x-0.5|) carries +0.5.
    CHECK(out.find("0.4,0.5,0.5") != std::string::npos);
}

TEST_CASE("sender_init sweeps parse structured values") {
    const std::string text = R"({
        "subcommand": "sweep",
        "cavity": {"length": 1.0, "n_modes": 4},
        "sender": {"gap": 3.14, "coupling": 0.05, "position": 0.5, "window": [0.0, 0.3]},
        "receiver": {"gap": 3.14, "coupling": 0.075, "position": 0.6, "window": [0.46, 0.8]},
        "sender_init": {"type": "displaced", "mean": [0.0, 1.0]},
        "parameter": "sender_init",
        "init_values": [
            {"type": "thermal", "gap_over_temp": 0.006},
            {"type": "squeezed", "r": 1.0, "theta": 0.0}
        ]
    })";
    const RunConfig cfg = parse_config(text);
    const auto& job = std::get<SweepJob>(cfg.job);
    REQUIRE(job.init_values.size() == 2);
    CHECK(job.init_values[0].kind == SenderKind::thermal);
    CHECK(job.init_values[1].kind == SenderKind::squeezed);
    CHECK(serialize_config(parse_config(serialize_config(cfg))) == serialize_config(cfg));
}
