// CLI job configuration: JSON ingestion with aggregated validation, built-in
// figure presets, and deterministic CSV execution.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "huygens/fock.hpp"
#include "huygens/scenario.hpp"

namespace huygens::cli {

// Inclusive uniform grid min, min+step, ..., up to max (within half a step).
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

struct CommutatorJob {
    double length = 1.0;
    int n_modes = 200;
    std::string form = "closed";      // closed | modesum
    std::string smoothing = "fejer";  // none | fejer
    double t1 = 0.0;
    double x1 = 0.3;
    GridSpec t_grid;
    GridSpec x_grid;
};

struct EnergyDensityJob {
    double gap = 1.0;
    double coupling = 1.0;
    double duration = 25.0;
    double excited_weight = 1.0;
    double t_slice = 30.0;
    GridSpec x_grid;
};

struct TotalEnergyJob {
    double gap = 1.0;
    double coupling = 1.0;
    double excited_weight = 1.0;
    GridSpec omega_t_grid;  // grid in Omega*T
};

// Gaussian bump phi(0,x) = amplitude exp(-(x-center)^2/(2 width^2)), pi(0,x) = 0.
struct ClassicalJob {
    double grid_min = -1.0;
    double grid_max = 1.0;
    double dx = 1e-3;
    double bump_amplitude = 1.0;
    double bump_center = 0.0;
    double bump_width = 0.1;
    GridSpec t_grid;
    GridSpec x_grid;
};

struct ScenarioJob {
    ScenarioConfig config;
};

struct SweepJob {
    ScenarioConfig config;
    SweepParameter parameter = SweepParameter::t2;
    std::vector<double> values;           // t2 / receiver_position / sender_window
    std::vector<SenderInit> init_values;  // sender_init sweeps
};

struct OracleJob {
    FockConfig config;
    Eigen::Vector2d detector_mean{0.0, 1.0};
};

using Job = std::variant<CommutatorJob, EnergyDensityJob, TotalEnergyJob, ClassicalJob,
                         ScenarioJob, SweepJob, OracleJob>;

struct RunConfig {
    std::string subcommand;
    Job job;
    std::vector<std::string> notes;  // emitted as '#' comment lines before the header
};

// All problems found, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

// Parses and validates a JSON config document. Throws ConfigError with a
// position-annotated message on syntax errors and with one entry per problem
// on validation errors. Unknown keys are rejected.
RunConfig parse_config(const std::string& text);

// Canonical JSON serialization; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& cfg);

std::vector<std::string> preset_names();
RunConfig preset(const std::string& name);

struct RunOptions {
    int threads = 1;
};

// Executes the job and writes its CSV table (notes first, then header, then
// rows) to out. Byte-identical output for identical inputs on one platform.
void run(const RunConfig& cfg, std::ostream& out, const RunOptions& options = {});

}  // namespace huygens::cli
