#include "huygens/gaussian.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace huygens {

GaussianState make_vacuum(const QuadratureLayout& layout) {
    const int d = layout.dim();
    return {Eigen::VectorXd::Zero(d), 0.5 * Eigen::MatrixXd::Identity(d, d)};
}

Eigen::Matrix2d make_thermal_covariance(double gap, double temperature) {
    if (!(gap > 0.0) || !(temperature > 0.0)) {
        throw std::domain_error("make_thermal_covariance: gap and temperature must be positive");
    }
    const double s = 0.5 / std::tanh(gap / (2.0 * temperature));
    return s * Eigen::Matrix2d::Identity();
}

GaussianState make_squeezed_state(double r, double theta, const Eigen::Vector2d& mean) {
    if (!std::isfinite(r) || !std::isfinite(theta)) {
        throw std::invalid_argument("make_squeezed_state: parameters must be finite");
    }
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const Eigen::Vector2d diag(std::exp(-2.0 * r), std::exp(2.0 * r));
    Eigen::Matrix2d cov = 0.5 * rot * diag.asDiagonal() * rot.transpose();
    return {mean, cov};
}

GaussianState apply_symplectic(const GaussianState& state, const Eigen::MatrixXd& S) {
    if (S.rows() != state.dim() || S.cols() != state.dim()) {
        throw std::invalid_argument("apply_symplectic: dimension mismatch");
    }
    GaussianState out;
    out.mean = S * state.mean;
    out.cov = S * state.cov * S.transpose();
    return out;
}

GaussianState reduce_to_subsystem(const GaussianState& state, const QuadratureLayout& layout,
                                  int subsystem) {
    if (state.dim() != layout.dim()) {
        throw std::invalid_argument("reduce_to_subsystem: state does not match layout");
    }
    const int q = layout.q_index(subsystem);
    const int p = layout.p_index(subsystem);
    GaussianState out;
    out.mean = Eigen::Vector2d(state.mean(q), state.mean(p));
    out.cov.resize(2, 2);
    out.cov << state.cov(q, q), state.cov(q, p), state.cov(p, q), state.cov(p, p);
    return out;
}

double excitation_probability(const Eigen::Matrix2d& cov) {
    const double asym = std::abs(cov(0, 1) - cov(1, 0));
    const double det = cov.determinant();
    const double tr = cov.trace();
    // Uncertainty relation for one mode: symplectic eigenvalue sqrt(det) >= 1/2.
    if (asym > 1e-9 || tr <= 0.0 || det < 0.25 - 1e-9) {
        throw std::domain_error("excitation_probability: covariance violates the uncertainty relation");
    }
    return 1.0 - 2.0 / std::sqrt(4.0 * det + 2.0 * tr + 1.0);
}

double uncertainty_eigenvalue_floor(const Eigen::MatrixXd& cov) {
    const int d = static_cast<int>(cov.rows());
    const Eigen::MatrixXd j = symplectic_form(d);
    Eigen::MatrixXcd h = cov.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 0.5) * j.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace huygens
