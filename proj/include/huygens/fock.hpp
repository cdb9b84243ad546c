// Brute-force validator for the symplectic engine: exact unitary evolution of
// one detector plus one cavity mode in a truncated number basis.
#pragma once

#include <Eigen/Dense>

#include "huygens/cavity.hpp"

namespace huygens {

struct FockConfig {
    double gap = 1.0;        // detector Omega
    double coupling = 0.01;  // lambda
    double position = 0.5;   // x_d
    CavitySpec cavity{1.0, 1};
    int mode_j = 1;               // the single retained mode
    int n_max = 15;               // number cutoff per subsystem
    double t0 = 0.0;
    double t1 = 1.0;              // coupling window [t0, t1]
    double step_periods = 1e-3;   // time step as a fraction of the detector period
};

struct FockResult {
    Eigen::Vector4d mean;   // (q_d, q_mode, p_d, p_mode)
    Eigen::Matrix4d cov;
    double norm_drift = 0.0;           // | ||psi|| - 1 | at the end of the run
    double max_tail_occupation = 0.0;  // worst occupation seen at levels >= n_max - 2
};

// Evolves |coherent(detector_mean)> x |0_mode> through the coupling window by
// per-step exponentiation of the interaction-picture Hamiltonian and returns
// the first and second quadrature moments. Throws std::runtime_error if the
// tail occupation at levels >= n_max - 2 exceeds 1e-6 (cutoff inadequate).
FockResult evolve_fock(const FockConfig& config, const Eigen::Vector2d& detector_mean);

}  // namespace huygens
