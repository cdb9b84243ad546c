// Built-in parameter sets reproducing the documented figure configurations.
#include "huygens/config.hpp"

#include <numbers>
#include <stdexcept>

namespace huygens::cli {

namespace {

constexpr double pi = std::numbers::pi;

DetectorSpec detector(double gap, double coupling, double position, double t_on, double t_off) {
    return DetectorSpec{gap, coupling, position, t_on, t_off};
}

RunConfig energy_density_profile(double excited_weight) {
    EnergyDensityJob job;
    job.gap = 1.0;
    job.coupling = 1.0;
    job.duration = 25.0;
    job.excited_weight = excited_weight;
    job.t_slice = 30.0;
    job.x_grid = {-35.0, 35.0, 0.02};
    RunConfig cfg;
    cfg.subcommand = "energy-density";
    cfg.job = job;
    cfg.notes = {"gap and coupling are set to 1; the density scales as (coupling*gap)^2",
                 "detector at x = 0 coupled over t = 0..25/gap, slice at t = 30/gap"};
    return cfg;
}

RunConfig total_energy_curve(double excited_weight) {
    TotalEnergyJob job;
    job.gap = 1.0;
    job.coupling = 1.0;
    job.excited_weight = excited_weight;
    job.omega_t_grid = {0.25, 50.0, 0.25};
    RunConfig cfg;
    cfg.subcommand = "total-energy";
    cfg.job = job;
    cfg.notes = {"gap and coupling are set to 1; the energy scales as coupling^2 * gap"};
    return cfg;
}

RunConfig commutator_sketch() {
    CommutatorJob job;
    job.length = 1.0;
    job.n_modes = 200;
    job.form = "closed";
    job.smoothing = "none";
    job.t1 = 0.0;
    job.x1 = 0.3;
    job.t_grid = {-2.0, 2.0, 0.02};
    job.x_grid = {0.0, 1.0, 0.01};
    RunConfig cfg;
    cfg.subcommand = "commutator";
    cfg.job = job;
    cfg.notes = {
        "convention: value +0.5 when (t,x) lies inside the unreflected future lightcone of (t1,x1)",
        "reference event at x1 = 0.3 L (free choice; the sketch layout does not pin it)"};
    return cfg;
}

ScenarioConfig resonant_scenario(double sender_pos, double receiver_pos, double t2_max) {
    ScenarioConfig cfg;
    cfg.cavity = CavitySpec(1.0, 200);
    cfg.sender = detector(10.0 * pi, 0.075, sender_pos, 0.0, 0.3);
    cfg.receiver = detector(10.0 * pi, 0.075, receiver_pos, 0.46, t2_max);
    cfg.init = SenderInit::displaced({0.0, 1.0});
    return cfg;
}

RunConfig sweep_config(ScenarioConfig scenario, GridSpec t2, std::vector<std::string> notes) {
    SweepJob job;
    job.config = std::move(scenario);
    job.parameter = SweepParameter::t2;
    job.values = t2.values();
    RunConfig cfg;
    cfg.subcommand = "sweep";
    cfg.job = job;
    cfg.notes = std::move(notes);
    return cfg;
}

RunConfig phase_space_sweep() {
    return sweep_config(
        resonant_scenario(0.5, 0.6, 1.2), {0.47, 1.2, 0.01},
        {"strictly timelike separation for T2 < 0.9 L",
         "T2 grid starts at 0.47 L; the receiver window is empty at exactly 0.46 L"});
}

RunConfig thermal_sweep() {
    ScenarioConfig scenario = resonant_scenario(0.5, 0.6, 1.2);
    scenario.init = SenderInit::thermal(6e-3);
    return sweep_config(std::move(scenario), {0.47, 1.2, 0.01},
                        {"sender in a thermal state with gap/temperature = 6e-3",
                         "strictly timelike separation for T2 < 0.9 L"});
}

RunConfig vacuum_pe_sweep() {
    ScenarioConfig scenario;
    scenario.cavity = CavitySpec(1.0, 200);
    scenario.sender = detector(10.0 * pi, 0.0, 0.5, 0.0, 0.3);
    scenario.receiver = detector(10.0 * pi, 0.075, 0.55, 0.0, 5.0);
    scenario.init = SenderInit::displaced({0.0, 0.0});
    return sweep_config(
        std::move(scenario), {0.05, 5.0, 0.05},
        {"sender decoupled (coupling 0): the Pe_vacuum column is the vacuum excitation probability",
         "detector at 0.55 L, an antinode of the resonant 10th mode; use 0.6 L for the node case"});
}

RunConfig position_sweep(const Eigen::Vector2d& mean) {
    ScenarioConfig scenario = resonant_scenario(0.45, 0.55, 3.0);
    scenario.init = SenderInit::displaced(mean);
    return sweep_config(
        std::move(scenario), {0.47, 3.0, 0.01},
        {"sender at 0.45 L and receiver at 0.55 L, both antinodes of the resonant mode",
         "node/node variant: 0.5 L and 0.6 L; node/antinode variant: 0.5 L and 0.55 L",
         "T2 range is not pinned by the layout; the grid extends to 3 L"});
}

RunConfig position_thermal_sweep() {
    ScenarioConfig scenario = resonant_scenario(0.45, 0.55, 3.0);
    scenario.init = SenderInit::thermal(6e-3);
    RunConfig cfg = sweep_config(
        std::move(scenario), {0.47, 3.0, 0.01},
        {"sender in a thermal state with gap/temperature = 6e-3",
         "sender at 0.45 L and receiver at 0.55 L, both antinodes of the resonant mode"});
    return cfg;
}

ScenarioConfig base_mode_scenario() {
    ScenarioConfig cfg;
    cfg.cavity = CavitySpec(1.0, 200);
    cfg.sender = detector(pi, 0.01, 0.45, 0.0, 0.4);
    cfg.receiver = detector(pi, 0.01, 0.55, 0.51, 3.0);
    cfg.init = SenderInit::displaced({0.0, 1.0});
    return cfg;
}

RunConfig base_mode_mean_sweep() {
    return sweep_config(base_mode_scenario(), {0.52, 3.0, 0.01},
                        {"detectors resonant with the base mode (gap = pi/L)",
                         "strictly timelike separation for T2 < L",
                         "the (1,0) initial mean also signals here; override sender_init.mean"});
}

RunConfig base_mode_thermal_sweep() {
    ScenarioConfig scenario = base_mode_scenario();
    scenario.init = SenderInit::thermal(4e-3);
    return sweep_config(std::move(scenario), {0.52, 3.0, 0.01},
                        {"sender in a thermal state with gap/temperature = 4e-3",
                         "detectors resonant with the base mode (gap = pi/L)"});
}

RunConfig classical_demo() {
    ClassicalJob job;
    job.grid_min = -1.0;
    job.grid_max = 1.0;
    job.dx = 1e-3;
    job.bump_amplitude = 1.0;
    job.bump_center = 0.0;
    job.bump_width = 0.1;
    job.t_grid = {0.0, 0.5, 0.1};
    job.x_grid = {-0.8, 0.8, 0.02};
    RunConfig cfg;
    cfg.subcommand = "classical-demo";
    cfg.job = job;
    cfg.notes = {"static Gaussian bump: the amplitude fills the lightcone interior "
                 "while the energy density rides on its boundary"};
    return cfg;
}

RunConfig oracle_run() {
    OracleJob job;
    job.config.cavity = CavitySpec(1.0, 1);
    job.config.mode_j = 1;
    job.config.gap = pi;
    job.config.coupling = 0.01;
    job.config.position = 0.5;
    job.config.n_max = 15;
    job.config.t0 = 0.0;
    job.config.t1 = 2.0;
    job.config.step_periods = 1e-3;
    job.detector_mean = Eigen::Vector2d(0.0, 1.0);
    RunConfig cfg;
    cfg.subcommand = "oracle";
    cfg.job = job;
    cfg.notes = {"single detector resonant with the base mode, one detector period"};
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1",      "fig1_ground", "fig2",        "fig2_ground", "fig3",
            "fig4",      "fig5",        "fig6",        "appA_vacuumPe",
            "appA_meanP", "appA_meanQ", "appA_thermal", "appB_mean",
            "appB_thermal", "classical", "oracle"};
}

RunConfig preset(const std::string& name) {
    if (name == "fig1") return energy_density_profile(1.0);
    if (name == "fig1_ground") return energy_density_profile(0.0);
    if (name == "fig2") return total_energy_curve(1.0);
    if (name == "fig2_ground") return total_energy_curve(0.0);
    if (name == "fig3") return commutator_sketch();
    if (name == "fig4" || name == "fig5") return phase_space_sweep();
    if (name == "fig6") return thermal_sweep();
    if (name == "appA_vacuumPe") return vacuum_pe_sweep();
    if (name == "appA_meanP") return position_sweep({0.0, 1.0});
    if (name == "appA_meanQ") return position_sweep({1.0, 0.0});
    if (name == "appA_thermal") return position_thermal_sweep();
    if (name == "appB_mean") return base_mode_mean_sweep();
    if (name == "appB_thermal") return base_mode_thermal_sweep();
    if (name == "classical") return classical_demo();
    if (name == "oracle") return oracle_run();
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace huygens::cli
