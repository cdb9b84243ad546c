#include "huygens/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace huygens {

namespace {

void validate_config(const ScenarioConfig& cfg) {
    // Protocol ordering T_A <= T1 <= T2; vacuous when the sender never couples.
    if (cfg.sender.coupling != 0.0 && cfg.sender.t_off > cfg.receiver.t_on) {
        throw std::invalid_argument("ScenarioConfig: sender window must end before the receiver couples");
    }
    if (cfg.step && !(*cfg.step > 0.0)) {
        throw std::invalid_argument("ScenarioConfig: step override must be positive");
    }
}

double scenario_step(const ScenarioConfig& cfg) {
    return cfg.step ? *cfg.step : default_step(cfg.cavity);
}

Eigen::Vector2d sender_mean(const SenderInit& init) {
    return init.kind == SenderKind::displaced ? init.mean : Eigen::Vector2d::Zero().eval();
}

Eigen::Matrix2d sender_covariance(const SenderInit& init) {
    switch (init.kind) {
        case SenderKind::displaced:
            return 0.5 * Eigen::Matrix2d::Identity();
        case SenderKind::thermal:
            // Parameterized by the ratio Omega/tau.
            return make_thermal_covariance(init.gap_over_temp, 1.0);
        case SenderKind::squeezed:
            return make_squeezed_state(init.squeeze_r, init.squeeze_theta, Eigen::Vector2d::Zero())
                .cov;
    }
    throw std::logic_error("sender_covariance: unknown kind");
}

// Everything the receiver observables need from the propagator: its q_B and
// p_B rows. Snapshots keep these instead of full matrices.
struct ReceiverRows {
    Eigen::VectorXd q;
    Eigen::VectorXd p;
};

ReceiverRows receiver_rows(const Eigen::MatrixXd& s, const QuadratureLayout& layout) {
    return {s.row(layout.q_index(1)), s.row(layout.p_index(1))};
}

Eigen::Matrix2d mean_map_from_rows(const ReceiverRows& rows, const QuadratureLayout& layout) {
    const int qa = layout.q_index(0);
    const int pa = layout.p_index(0);
    Eigen::Matrix2d map;
    map << rows.q(qa), rows.q(pa), rows.p(qa), rows.p(pa);
    return map;
}

std::pair<Eigen::Matrix3d, Eigen::Vector3d> covariance_map_from_rows(
    const ReceiverRows& rows, const QuadratureLayout& layout) {
    const int qa = layout.q_index(0);
    const int pa = layout.p_index(0);
    const double a = rows.q(qa);
    const double b = rows.q(pa);
    const double c = rows.p(qa);
    const double d = rows.p(pa);
    Eigen::Matrix3d map;
    map << a * a, b * b, 2.0 * a * b,
           c * c, d * d, 2.0 * c * d,
           a * c, b * d, a * d + b * c;
    Eigen::Vector3d affine = Eigen::Vector3d::Zero();
    for (int i = 0; i < layout.dim(); ++i) {
        if (i == qa || i == pa) continue;
        affine(0) += rows.q(i) * rows.q(i);
        affine(1) += rows.p(i) * rows.p(i);
        affine(2) += rows.q(i) * rows.p(i);
    }
    affine *= 0.5;
    return {map, affine};
}

// Receiver observables for a given sender preparation, straight from the
// propagator rows (the linear/affine maps of the covariance formalism).
ScenarioResult result_from_rows(const ReceiverRows& signal, const ReceiverRows& vacuum,
                                const QuadratureLayout& layout, const SenderInit& init,
                                bool timelike) {
    ScenarioResult res;
    res.timelike = timelike;

    const Eigen::Matrix2d mean_map = mean_map_from_rows(signal, layout);
    res.receiver_mean = mean_map * sender_mean(init);
    res.displacement = res.receiver_mean.norm();

    const auto [cov_map, affine] = covariance_map_from_rows(signal, layout);
    const Eigen::Matrix2d sa = sender_covariance(init);
    const Eigen::Vector3d sa_vec(sa(0, 0), sa(1, 1), sa(0, 1));
    const Eigen::Vector3d sb = cov_map * sa_vec + affine;
    res.receiver_cov << sb(0), sb(2), sb(2), sb(1);
    res.pe_signal = excitation_probability(res.receiver_cov);

    const auto [vac_map, vac_affine] = covariance_map_from_rows(vacuum, layout);
    const Eigen::Vector3d ground(0.5, 0.5, 0.0);
    const Eigen::Vector3d vb = vac_map * ground + vac_affine;
    Eigen::Matrix2d vac_cov;
    vac_cov << vb(0), vb(2), vb(2), vb(1);
    res.pe_vacuum = excitation_probability(vac_cov);
    res.dpe = res.pe_signal - res.pe_vacuum;
    return res;
}

GeneratorSpec signal_generator(const ScenarioConfig& cfg) {
    return GeneratorSpec(cfg.cavity, {cfg.sender, cfg.receiver});
}

GeneratorSpec vacuum_generator(const ScenarioConfig& cfg) {
    DetectorSpec silent = cfg.sender;
    silent.coupling = 0.0;
    return GeneratorSpec(cfg.cavity, {silent, cfg.receiver});
}

bool timelike_for_window(const ScenarioConfig& cfg, double t2) {
    const double tau_min = cfg.receiver.t_on - cfg.sender.t_off;
    const double tau_max = t2 - cfg.sender.t_on;
    if (lightray_delay_in(cfg.cavity, cfg.sender.position, cfg.receiver.position, tau_min,
                          tau_max)) {
        return false;
    }
    // No lightcone line crosses the delay window, so the commutator is constant
    // on it; non-zero means the windows are connected through the cone interior.
    const double tau_mid = 0.5 * (tau_min + tau_max);
    const double comm = cavity_commutator_closed(cfg.cavity, 0.0, cfg.sender.position, tau_mid,
                                                 cfg.receiver.position);
    return std::abs(comm) > 0.25;
}

}  // namespace

SenderInit SenderInit::displaced(const Eigen::Vector2d& mean) {
    SenderInit init;
    init.kind = SenderKind::displaced;
    init.mean = mean;
    return init;
}

SenderInit SenderInit::thermal(double gap_over_temp) {
    if (!(gap_over_temp > 0.0)) {
        throw std::invalid_argument("SenderInit::thermal: gap/temperature ratio must be positive");
    }
    SenderInit init;
    init.kind = SenderKind::thermal;
    init.gap_over_temp = gap_over_temp;
    return init;
}

SenderInit SenderInit::squeezed(double r, double theta) {
    SenderInit init;
    init.kind = SenderKind::squeezed;
    init.squeeze_r = r;
    init.squeeze_theta = theta;
    return init;
}

Eigen::Matrix2d receiver_mean_map(const Eigen::MatrixXd& S, const QuadratureLayout& layout) {
    return mean_map_from_rows(receiver_rows(S, layout), layout);
}

std::pair<Eigen::Matrix3d, Eigen::Vector3d> receiver_covariance_map(
    const Eigen::MatrixXd& S, const QuadratureLayout& layout) {
    return covariance_map_from_rows(receiver_rows(S, layout), layout);
}

bool strictly_timelike(const ScenarioConfig& cfg) {
    return timelike_for_window(cfg, cfg.receiver.t_off);
}

GaussianState initial_state(const ScenarioConfig& cfg) {
    const QuadratureLayout layout(cfg.cavity.n_modes);
    GaussianState state = make_vacuum(layout);
    const int qa = layout.q_index(0);
    const int pa = layout.p_index(0);
    const Eigen::Vector2d mean = sender_mean(cfg.init);
    const Eigen::Matrix2d cov = sender_covariance(cfg.init);
    state.mean(qa) = mean(0);
    state.mean(pa) = mean(1);
    state.cov(qa, qa) = cov(0, 0);
    state.cov(qa, pa) = cov(0, 1);
    state.cov(pa, qa) = cov(1, 0);
    state.cov(pa, pa) = cov(1, 1);
    return state;
}

ScenarioEngine::ScenarioEngine(const ScenarioConfig& cfg)
    : cfg_(cfg), layout_(cfg.cavity.n_modes) {
    validate_config(cfg_);
    const double h = scenario_step(cfg_);
    const double t_end = cfg_.receiver.t_off;
    s_signal_ = evolve_window(signal_generator(cfg_), 0.0, t_end, h);
    s_vacuum_ = evolve_window(vacuum_generator(cfg_), 0.0, t_end, h);
    timelike_ = strictly_timelike(cfg_);

    const GaussianState vac_final = apply_symplectic(make_vacuum(layout_), s_vacuum_);
    pe_vacuum_ = excitation_probability(reduce_to_subsystem(vac_final, layout_, 1).cov);
}

ScenarioResult ScenarioEngine::evaluate(const SenderInit& init) const {
    ScenarioConfig cfg = cfg_;
    cfg.init = init;
    const GaussianState final_state = apply_symplectic(initial_state(cfg), s_signal_);
    const GaussianState receiver = reduce_to_subsystem(final_state, layout_, 1);

    ScenarioResult res;
    res.receiver_mean = receiver.mean;
    res.displacement = receiver.mean.norm();
    res.receiver_cov = receiver.cov;
    res.pe_signal = excitation_probability(receiver.cov);
    res.pe_vacuum = pe_vacuum_;
    res.dpe = res.pe_signal - res.pe_vacuum;
    res.timelike = timelike_;
    return res;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    return ScenarioEngine(cfg).evaluate(cfg.init);
}

std::vector<SweepRow> sweep_t2(const ScenarioConfig& cfg, std::span<const double> t2_values) {
    if (t2_values.empty()) throw std::invalid_argument("sweep_t2: empty grid");
    for (std::size_t i = 0; i < t2_values.size(); ++i) {
        if (t2_values[i] <= cfg.receiver.t_on || (i > 0 && t2_values[i] <= t2_values[i - 1])) {
            throw std::invalid_argument("sweep_t2: values must be strictly increasing and after T1");
        }
    }
    ScenarioConfig swept = cfg;
    swept.receiver.t_off = t2_values.back();
    validate_config(swept);
    const double h = scenario_step(swept);

    std::vector<ReceiverRows> signal_rows(t2_values.size());
    std::vector<ReceiverRows> vacuum_rows(t2_values.size());
    const QuadratureLayout layout(cfg.cavity.n_modes);

    evolve_with_snapshots(signal_generator(swept), 0.0, t2_values.back(), h, t2_values,
                          [&](std::size_t idx, double, const Eigen::MatrixXd& s) {
                              signal_rows[idx] = receiver_rows(s, layout);
                          });
    evolve_with_snapshots(vacuum_generator(swept), 0.0, t2_values.back(), h, t2_values,
                          [&](std::size_t idx, double, const Eigen::MatrixXd& s) {
                              vacuum_rows[idx] = receiver_rows(s, layout);
                          });

    std::vector<SweepRow> rows;
    rows.reserve(t2_values.size());
    for (std::size_t i = 0; i < t2_values.size(); ++i) {
        SweepRow row;
        row.t2 = t2_values[i];
        row.result = result_from_rows(signal_rows[i], vacuum_rows[i], layout, cfg.init,
                                      timelike_for_window(cfg, t2_values[i]));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> sweep_values(const ScenarioConfig& cfg, SweepParameter parameter,
                                   std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("sweep_values: empty grid");
    if (parameter == SweepParameter::t2) {
        return sweep_t2(cfg, values);
    }
    if (parameter == SweepParameter::sender_init) {
        throw std::invalid_argument("sweep_values: sender_init sweeps take SenderInit values");
    }
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        ScenarioConfig point = cfg;
        if (parameter == SweepParameter::receiver_position) {
            point.receiver.position = value;
        } else {
            point.sender.t_off = value;  // sender_window: T_A
        }
        SweepRow row;
        row.t2 = point.receiver.t_off;
        row.result = run_scenario(point);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> sweep_sender_init(const ScenarioConfig& cfg,
                                        std::span<const SenderInit> inits) {
    if (inits.empty()) throw std::invalid_argument("sweep_sender_init: empty grid");
    ScenarioEngine engine(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(inits.size());
    for (const SenderInit& init : inits) {
        SweepRow row;
        row.t2 = cfg.receiver.t_off;
        row.result = engine.evaluate(init);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace huygens
