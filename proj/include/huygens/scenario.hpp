// Sender -> receiver signaling runs inside the cavity: propagators, receiver
// maps, observables, and parameter sweeps.
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "huygens/dynamics.hpp"
#include "huygens/gaussian.hpp"

namespace huygens {

enum class SenderKind { displaced, thermal, squeezed };

// Initial state of the sender's oscillator. The receiver and all field modes
// always start in their ground state.
struct SenderInit {
    SenderKind kind = SenderKind::displaced;
    Eigen::Vector2d mean{0.0, 0.0};  // displaced
    double gap_over_temp = 0.0;      // thermal: Omega / tau
    double squeeze_r = 0.0;          // squeezed
    double squeeze_theta = 0.0;

    static SenderInit displaced(const Eigen::Vector2d& mean);
    static SenderInit thermal(double gap_over_temp);
    static SenderInit squeezed(double r, double theta);
};

struct ScenarioConfig {
    CavitySpec cavity{1.0, 1};
    DetectorSpec sender;    // window [0, T_A] by convention
    DetectorSpec receiver;  // window [T1, T2]
    SenderInit init;
    std::optional<double> step;  // integration step override
};

struct ScenarioResult {
    Eigen::Vector2d receiver_mean;  // (<q_B>, <p_B>)
    double displacement = 0.0;      // r = sqrt(<q_B>^2 + <p_B>^2)
    Eigen::Matrix2d receiver_cov;
    double pe_signal = 0.0;  // from the receiver covariance (zero-mean formula)
    double pe_vacuum = 0.0;  // same receiver coupled to the bare vacuum
    double dpe = 0.0;        // pe_signal - pe_vacuum
    bool timelike = false;   // strictly timelike separated coupling windows
};

// Receiver mean map of the full-scenario propagator:
//   <x_B(T2)> = map * <x_A(0)>  (all other subsystems zero-mean).
Eigen::Matrix2d receiver_mean_map(const Eigen::MatrixXd& S, const QuadratureLayout& layout);

// Receiver covariance map in three-vector form (s_qq, s_pp, s_qp):
//   sigma_B = map * sigma_A + affine, all non-sender subsystems initially ground.
std::pair<Eigen::Matrix3d, Eigen::Vector3d> receiver_covariance_map(const Eigen::MatrixXd& S,
                                                                    const QuadratureLayout& layout);

// True when the coupling windows are strictly timelike separated: no direct or
// wall-reflected light ray connects them, and the commutator between them is
// non-zero (they are causally connected through the lightcone interior).
bool strictly_timelike(const ScenarioConfig& cfg);

// Evolves the scenario once and serves per-initial-state observables. The
// propagator does not depend on the initial state, so evaluating many sender
// states against one engine is cheap.
class ScenarioEngine {
public:
    explicit ScenarioEngine(const ScenarioConfig& cfg);

    ScenarioResult evaluate(const SenderInit& init) const;

    const Eigen::MatrixXd& signal_propagator() const { return s_signal_; }
    const Eigen::MatrixXd& vacuum_propagator() const { return s_vacuum_; }
    const QuadratureLayout& layout() const { return layout_; }
    double pe_vacuum() const { return pe_vacuum_; }

private:
    ScenarioConfig cfg_;
    QuadratureLayout layout_;
    Eigen::MatrixXd s_signal_;
    Eigen::MatrixXd s_vacuum_;
    double pe_vacuum_ = 0.0;
    bool timelike_ = false;
};

// Builds the initial global state for the configured sender preparation.
GaussianState initial_state(const ScenarioConfig& cfg);

// Full run: evolve, reduce to the receiver, and compare against the vacuum
// baseline (a genuine second evolution with the sender decoupled).
ScenarioResult run_scenario(const ScenarioConfig& cfg);

enum class SweepParameter { t2, receiver_position, sender_window, sender_init };

struct SweepRow {
    double t2 = 0.0;  // receiver switch-off for this row
    ScenarioResult result;
};

// Sweep over the receiver switch-off time. One integration pass (plus one for
// the vacuum baseline) serves all grid points via propagator snapshots.
std::vector<SweepRow> sweep_t2(const ScenarioConfig& cfg, std::span<const double> t2_values);

// Sweep over receiver position or sender window length T_A (one run per value).
std::vector<SweepRow> sweep_values(const ScenarioConfig& cfg, SweepParameter parameter,
                                   std::span<const double> values);

// Sweep over sender initial states; reuses a single propagator.
std::vector<SweepRow> sweep_sender_init(const ScenarioConfig& cfg,
                                        std::span<const SenderInit> inits);

}  // namespace huygens
