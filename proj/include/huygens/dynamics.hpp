// Symplectic time evolution of oscillator detectors coupled to the cavity field.
//
// The interaction-picture Hamiltonian is quadratic, H(t) = (1/2) x^T M(t) x,
// and the propagator on quadratures solves dS/dt = J M(t) S with S(t0) = I.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

#include "huygens/cavity.hpp"
#include "huygens/quadrature.hpp"

namespace huygens {

// One oscillator detector coupled through a sharp window [t_on, t_off).
// coupling = 0 marks a detector that is present in the layout but never couples.
struct DetectorSpec {
    double gap = 1.0;       // Omega > 0
    double coupling = 0.0;  // lambda, dimensionless
    double position = 0.0;  // x_d in [0, L]
    double t_on = 0.0;
    double t_off = 0.0;
};

struct GeneratorSpec {
    CavitySpec cavity;
    std::vector<DetectorSpec> detectors;  // A then B

    GeneratorSpec(CavitySpec cav, std::vector<DetectorSpec> dets);

    QuadratureLayout layout() const { return QuadratureLayout(cavity.n_modes); }
};

// 40 integration steps per period of the fastest retained mode: (2L/N)/40.
double default_step(const CavitySpec& cavity);

// Dense symmetric M(t). Rows and columns of inactive detectors are zero;
// detector-detector and mode-mode blocks are zero.
Eigen::MatrixXd hamiltonian_matrix(const GeneratorSpec& spec, double t);

// magnus4: fourth-order Magnus (two-point Gauss) with the step map applied as an
//   exact low-rank exponential, so every step is symplectic to rounding.
// rk4_dense: classical Runge-Kutta on the dense matrix ODE; reference
//   implementation, O(d^3) per step, intended for small mode counts.
enum class Integrator { magnus4, rk4_dense };

// Propagator over [t0, t1]. Steps are aligned to window edges (no step straddles
// a switch-on/off), and sub-intervals with no active detector advance S as the
// identity. Throws std::runtime_error if the symplecticity defect exceeds 1e-6.
Eigen::MatrixXd evolve_window(const GeneratorSpec& spec, double t0, double t1, double step,
                              Integrator method = Integrator::magnus4);

// As evolve_window, additionally invoking on_snapshot(index, t, S) at each
// requested time. times must be sorted ascending and lie within [t0, t1].
Eigen::MatrixXd evolve_with_snapshots(
    const GeneratorSpec& spec, double t0, double t1, double step, std::span<const double> times,
    const std::function<void(std::size_t, double, const Eigen::MatrixXd&)>& on_snapshot,
    Integrator method = Integrator::magnus4);

// Window concatenation: S_late * S_early (valid because the interaction-picture
// propagator is the identity between windows).
Eigen::MatrixXd compose(const Eigen::MatrixXd& late, const Eigen::MatrixXd& early);

// || S^T J S - J ||_max
double symplecticity_defect(const Eigen::MatrixXd& S);

// S^{-1} = -J S^T J for symplectic S.
Eigen::MatrixXd symplectic_inverse(const Eigen::MatrixXd& S);

}  // namespace huygens
