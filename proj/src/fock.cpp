#include "huygens/fock.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace huygens {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat ladder(int n_max) {
    Mat a = Mat::Zero(n_max, n_max);
    for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// psi <- exp(-i H dt) psi by a truncated Taylor series on the state vector;
// converges to rounding in a handful of terms because ||H dt|| << 1.
void apply_exponential(const Mat& h, double dt, Vec& psi, Vec& term, Vec& next) {
    term = psi;
    const cd factor(0.0, -dt);
    for (int k = 1; k <= 64; ++k) {
        next.noalias() = h * term;
        term = (factor / static_cast<double>(k)) * next;
        psi += term;
        if (term.norm() < 1e-17 * psi.norm()) break;
    }
}

double tail_occupation(const Vec& psi, int n_max) {
    // Occupation of levels >= n_max - 2 in either subsystem.
    double tail = 0.0;
    for (int nd = 0; nd < n_max; ++nd) {
        for (int nm = 0; nm < n_max; ++nm) {
            if (nd >= n_max - 2 || nm >= n_max - 2) {
                tail += std::norm(psi(nd * n_max + nm));
            }
        }
    }
    return tail;
}

}  // namespace

FockResult evolve_fock(const FockConfig& config, const Eigen::Vector2d& detector_mean) {
    if (config.n_max < 8) throw std::invalid_argument("evolve_fock: n_max must be at least 8");
    if (!(config.gap > 0.0)) throw std::invalid_argument("evolve_fock: gap must be positive");
    if (!(config.t0 <= config.t1)) throw std::invalid_argument("evolve_fock: empty window");

    const int n_max = config.n_max;
    const int dim = n_max * n_max;
    const double omega = mode_frequency(config.cavity, config.mode_j);
    const double g = coupling_weight(config.cavity, config.mode_j, config.position);

    const Mat a = ladder(n_max);
    const Mat eye = Mat::Identity(n_max, n_max);
    const Mat a_det = kron(a, eye);
    const Mat a_mode = kron(eye, a);

    // H(t) = lambda Omega g (e^{-i Omega t} a_d + h.c.)(e^{-i omega t} a_m + h.c.)
    // expanded over four fixed products with scalar phases.
    const double amp = config.coupling * config.gap * g;
    const Mat p_dm = a_det * a_mode;                          // a_d a_m
    const Mat p_dM = a_det * a_mode.adjoint();                // a_d a_m^dag
    const Mat p_Dm = a_det.adjoint() * a_mode;                // a_d^dag a_m
    const Mat p_DM = a_det.adjoint() * a_mode.adjoint();      // a_d^dag a_m^dag

    // Coherent detector state: alpha = (q + i p)/sqrt(2) in our quadrature units.
    const cd alpha(detector_mean(0) / std::sqrt(2.0), detector_mean(1) / std::sqrt(2.0));
    Vec det_state = Vec::Zero(n_max);
    {
        cd amp_n = std::exp(-0.5 * std::norm(alpha));
        for (int n = 0; n < n_max; ++n) {
            det_state(n) = amp_n;
            amp_n *= alpha / std::sqrt(static_cast<double>(n + 1));
        }
        det_state /= det_state.norm();
    }
    Vec psi = Vec::Zero(dim);
    for (int n = 0; n < n_max; ++n) psi(n * n_max) = det_state(n);  // mode in |0>

    const double period = 2.0 * std::numbers::pi / config.gap;
    const double dt_target = config.step_periods * period;
    const double span = config.t1 - config.t0;
    const int n_steps = std::max(1, static_cast<int>(std::ceil(span / dt_target - 1e-9)));
    const double dt = span / static_cast<double>(n_steps);

    FockResult result;
    result.max_tail_occupation = tail_occupation(psi, n_max);

    Mat h(dim, dim);
    Vec term(dim), next(dim);
    for (int k = 0; k < n_steps; ++k) {
        const double t_mid = config.t0 + dt * (static_cast<double>(k) + 0.5);
        const cd ph_d = std::exp(cd(0.0, -config.gap * t_mid));
        const cd ph_m = std::exp(cd(0.0, -omega * t_mid));
        h = amp * (ph_d * ph_m * p_dm + ph_d * std::conj(ph_m) * p_dM +
                   std::conj(ph_d) * ph_m * p_Dm + std::conj(ph_d) * std::conj(ph_m) * p_DM);
        apply_exponential(h, dt, psi, term, next);

        const double tail = tail_occupation(psi, n_max);
        result.max_tail_occupation = std::max(result.max_tail_occupation, tail);
        if (tail > 1e-6) {
            throw std::runtime_error("evolve_fock: cutoff inadequate, tail occupation above 1e-6");
        }
    }
    result.norm_drift = std::abs(psi.norm() - 1.0);

    // Quadrature operators in the layout order (q_d, q_mode, p_d, p_mode).
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Mat> ops;
    ops.push_back(inv_sqrt2 * (a_det + a_det.adjoint()));
    ops.push_back(inv_sqrt2 * (a_mode + a_mode.adjoint()));
    ops.push_back(cd(0.0, -1.0) * inv_sqrt2 * (a_det - a_det.adjoint()));
    ops.push_back(cd(0.0, -1.0) * inv_sqrt2 * (a_mode - a_mode.adjoint()));

    std::vector<Vec> op_psi;
    op_psi.reserve(4);
    for (const Mat& op : ops) op_psi.push_back(op * psi);

    const double norm2 = psi.squaredNorm();
    for (int i = 0; i < 4; ++i) {
        result.mean(i) = std::real(psi.dot(op_psi[static_cast<std::size_t>(i)])) / norm2;
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double second =
                std::real(op_psi[static_cast<std::size_t>(i)].dot(op_psi[static_cast<std::size_t>(j)])) /
                norm2;
            result.cov(i, j) = second - result.mean(i) * result.mean(j);
        }
    }
    // Symmetrize away the antisymmetric commutator part.
    result.cov = 0.5 * (result.cov + result.cov.transpose()).eval();
    return result;
}

}  // namespace huygens
