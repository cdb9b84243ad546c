// Gaussian states: mean vector and covariance matrix over the quadrature layout.
#pragma once

#include <Eigen/Dense>

#include "huygens/quadrature.hpp"

namespace huygens {

// Covariance convention sigma_ij = (1/2)<{dx_i, dx_j}>, so a ground-state
// oscillator has sigma = I/2. Values are immutable in practice: every
// operation below returns a fresh state.
struct GaussianState {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    int dim() const { return static_cast<int>(mean.size()); }
};

// All detectors and modes in their ground state: mean 0, cov = I/2.
GaussianState make_vacuum(const QuadratureLayout& layout);

// Thermal single-oscillator covariance (1/2) coth(gap/(2 temperature)) I.
Eigen::Matrix2d make_thermal_covariance(double gap, double temperature);

// Single-subsystem squeezed state, cov = (1/2) R(theta) diag(e^{-2r}, e^{2r}) R(theta)^T.
// theta = 0 squeezes position (large Delta p).
GaussianState make_squeezed_state(double r, double theta, const Eigen::Vector2d& mean);

// mean' = S mean, cov' = S cov S^T.
GaussianState apply_symplectic(const GaussianState& state, const Eigen::MatrixXd& S);

// Marginal state of one subsystem: its (q, p) mean entries and 2x2 covariance block.
GaussianState reduce_to_subsystem(const GaussianState& state, const QuadratureLayout& layout,
                                  int subsystem);

// P_e = 1 - 2/sqrt(4 det s + 2 tr s + 1) for a zero-mean single-oscillator state.
// Throws std::domain_error if cov violates the uncertainty relation beyond tolerance.
double excitation_probability(const Eigen::Matrix2d& cov);

// Smallest eigenvalue of the Hermitian matrix cov + (i/2)J; >= 0 for physical states
// (0 exactly for pure states).
double uncertainty_eigenvalue_floor(const Eigen::MatrixXd& cov);

}  // namespace huygens
