#include "huygens/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace huygens {

namespace {

constexpr double sqrt3 = 1.7320508075688772;

struct ActiveDetector {
    double gap = 0.0;
    int q_idx = 0;
    int p_idx = 0;
    Eigen::VectorXd weights;  // w_j = 2 lambda Omega g_j(x_d)
};

// Mode-space vectors carried as (q-block, p-block) pairs of length N.
struct ModeVector {
    Eigen::VectorXd q;
    Eigen::VectorXd p;
};

// u^T J u' = u_q . u'_p - u_p . u'_q
double mode_symplectic_product(const ModeVector& a, const ModeVector& b) {
    return a.q.dot(b.p) - a.p.dot(b.q);
}

Eigen::MatrixXd expm_small(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        a *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 32; ++k) {
        term = (a * term) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

class Engine {
public:
    Engine(const GeneratorSpec& spec)
        : spec_(spec), layout_(spec.layout()), dim_(layout_.dim()), n_(spec.cavity.n_modes) {
        omegas_.resize(n_);
        for (int j = 1; j <= n_; ++j) omegas_(j - 1) = mode_frequency(spec_.cavity, j);
        mode_q_start_ = layout_.q_index(layout_.mode_subsystem(1));
        mode_p_start_ = layout_.p_index(layout_.mode_subsystem(1));
    }

    ActiveDetector make_active(int det_index) const {
        const DetectorSpec& det = spec_.detectors[static_cast<std::size_t>(det_index)];
        ActiveDetector a;
        a.gap = det.gap;
        a.q_idx = layout_.q_index(det_index);
        a.p_idx = layout_.p_index(det_index);
        a.weights.resize(n_);
        for (int j = 1; j <= n_; ++j) {
            a.weights(j - 1) = 2.0 * det.coupling * det.gap * coupling_weight(spec_.cavity, j, det.position);
        }
        return a;
    }

    ModeVector mode_vector(const ActiveDetector& det, double t) const {
        ModeVector u;
        u.q = det.weights.array() * (omegas_.array() * t).cos();
        u.p = det.weights.array() * (omegas_.array() * t).sin();
        return u;
    }

    // One fourth-order Magnus step S <- exp(Omega) S over [t, t+h], with the
    // exponential applied exactly on the low-dimensional subspace that carries
    // the generator. exp of a Hamiltonian matrix is symplectic, so the defect
    // stays at rounding level regardless of step size.
    void magnus_step(const std::vector<ActiveDetector>& active, double t, double h,
                     Eigen::MatrixXd& s_mat) const {
        const int n_act = static_cast<int>(active.size());
        const double t1 = t + h * (0.5 - sqrt3 / 6.0);
        const double t2 = t + h * (0.5 + sqrt3 / 6.0);
        const double node_times[2] = {t1, t2};

        // Detector coordinates: (q_d, p_d) per active detector, already orthonormal.
        // Mode coordinates: orthonormalized {u, Ju} at both Gauss nodes.
        std::vector<std::array<ModeVector, 2>> u(active.size());
        std::vector<std::array<double, 2>> cos_gap(active.size());
        std::vector<std::array<double, 2>> sin_gap(active.size());
        for (int d = 0; d < n_act; ++d) {
            for (int node = 0; node < 2; ++node) {
                u[d][node] = mode_vector(active[d], node_times[node]);
                cos_gap[d][node] = std::cos(active[d].gap * node_times[node]);
                sin_gap[d][node] = std::sin(active[d].gap * node_times[node]);
            }
        }

        const int n_mode_cols = std::min(2 * n_, 4 * n_act);
        Eigen::MatrixXd raw(2 * n_, 4 * n_act);
        for (int d = 0; d < n_act; ++d) {
            for (int node = 0; node < 2; ++node) {
                const ModeVector& v = u[d][node];
                raw.col(4 * d + 2 * node).head(n_) = v.q;       // u
                raw.col(4 * d + 2 * node).tail(n_) = v.p;
                raw.col(4 * d + 2 * node + 1).head(n_) = v.p;   // J u
                raw.col(4 * d + 2 * node + 1).tail(n_) = -v.q;
            }
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
        const Eigen::MatrixXd q_mode =
            qr.householderQ() * Eigen::MatrixXd::Identity(2 * n_, n_mode_cols);

        const int r = 2 * n_act + n_mode_cols;
        const int mode_offset = 2 * n_act;

        // Coordinates of the mode vectors in the orthonormal basis.
        const auto mode_coords = [&](const ModeVector& v, bool apply_j) {
            Eigen::VectorXd full(2 * n_);
            if (apply_j) {
                full.head(n_) = v.p;
                full.tail(n_) = -v.q;
            } else {
                full.head(n_) = v.q;
                full.tail(n_) = v.p;
            }
            return Eigen::VectorXd(q_mode.transpose() * full);
        };

        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(r, r);
        const double half_h = 0.5 * h;
        const double gamma = sqrt3 * h * h / 12.0;

        // (h/2)(A1 + A2): dyads (J v) u^T + (J u) v^T per detector and node.
        for (int d = 0; d < n_act; ++d) {
            for (int node = 0; node < 2; ++node) {
                const double c = cos_gap[d][node];
                const double s = sin_gap[d][node];
                const Eigen::VectorXd u_hat = mode_coords(u[d][node], false);
                const Eigen::VectorXd ju_hat = mode_coords(u[d][node], true);
                // J v = s e_q - c e_p in detector coordinates (2d, 2d+1).
                b.row(2 * d).segment(mode_offset, n_mode_cols) += half_h * s * u_hat.transpose();
                b.row(2 * d + 1).segment(mode_offset, n_mode_cols) -= half_h * c * u_hat.transpose();
                b.col(2 * d).segment(mode_offset, n_mode_cols) += half_h * c * ju_hat;
                b.col(2 * d + 1).segment(mode_offset, n_mode_cols) += half_h * s * ju_hat;
            }
        }

        // (sqrt(3) h^2 / 12) [A2, A1]. Products of dyads collapse onto the same
        // subspace; only detector-detector and mode-mode blocks appear.
        for (int d = 0; d < n_act; ++d) {
            for (int e = 0; e < n_act; ++e) {
                const double w21 = gamma * mode_symplectic_product(u[d][1], u[e][0]);
                const double w12 = -gamma * mode_symplectic_product(u[d][0], u[e][1]);
                // (J v2_d) v1_e^T and (J v1_d) v2_e^T in detector coordinates.
                const double jv2[2] = {sin_gap[d][1], -cos_gap[d][1]};
                const double v1[2] = {cos_gap[e][0], sin_gap[e][0]};
                const double jv1[2] = {sin_gap[d][0], -cos_gap[d][0]};
                const double v2[2] = {cos_gap[e][1], sin_gap[e][1]};
                for (int i = 0; i < 2; ++i) {
                    for (int k = 0; k < 2; ++k) {
                        b(2 * d + i, 2 * e + k) += w21 * jv2[i] * v1[k] + w12 * jv1[i] * v2[k];
                    }
                }
            }
            const double w_same = gamma * std::sin(active[d].gap * (t1 - t2));
            const Eigen::VectorXd ju1 = mode_coords(u[d][0], true);
            const Eigen::VectorXd ju2 = mode_coords(u[d][1], true);
            const Eigen::VectorXd u1 = mode_coords(u[d][0], false);
            const Eigen::VectorXd u2 = mode_coords(u[d][1], false);
            b.block(mode_offset, mode_offset, n_mode_cols, n_mode_cols) +=
                w_same * (ju2 * u1.transpose() + ju1 * u2.transpose());
        }

        const Eigen::MatrixXd phi =
            expm_small(b) - Eigen::MatrixXd::Identity(r, r);  // exp(B) - I

        // W = U^T S, then S += U (exp(B) - I) W.
        Eigen::MatrixXd w(r, dim_);
        for (int d = 0; d < n_act; ++d) {
            w.row(2 * d) = s_mat.row(active[d].q_idx);
            w.row(2 * d + 1) = s_mat.row(active[d].p_idx);
        }
        w.bottomRows(n_mode_cols).noalias() =
            q_mode.topRows(n_).transpose() * s_mat.middleRows(mode_q_start_, n_);
        w.bottomRows(n_mode_cols).noalias() +=
            q_mode.bottomRows(n_).transpose() * s_mat.middleRows(mode_p_start_, n_);

        const Eigen::MatrixXd y = phi * w;
        for (int d = 0; d < n_act; ++d) {
            s_mat.row(active[d].q_idx) += y.row(2 * d);
            s_mat.row(active[d].p_idx) += y.row(2 * d + 1);
        }
        s_mat.middleRows(mode_q_start_, n_).noalias() +=
            q_mode.topRows(n_) * y.bottomRows(n_mode_cols);
        s_mat.middleRows(mode_p_start_, n_).noalias() +=
            q_mode.bottomRows(n_) * y.bottomRows(n_mode_cols);
    }

    // Dense generator J M(t) restricted to the given active set.
    Eigen::MatrixXd dense_generator(const std::vector<ActiveDetector>& active, double t) const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
        for (const ActiveDetector& det : active) {
            const double c = std::cos(det.gap * t);
            const double s = std::sin(det.gap * t);
            const ModeVector u = mode_vector(det, t);
            for (int j = 0; j < n_; ++j) {
                const int qj = mode_q_start_ + j;
                const int pj = mode_p_start_ + j;
                m(det.q_idx, qj) = m(qj, det.q_idx) = c * u.q(j);
                m(det.q_idx, pj) = m(pj, det.q_idx) = c * u.p(j);
                m(det.p_idx, qj) = m(qj, det.p_idx) = s * u.q(j);
                m(det.p_idx, pj) = m(pj, det.p_idx) = s * u.p(j);
            }
        }
        Eigen::MatrixXd k(dim_, dim_);
        const int half = dim_ / 2;
        k.topRows(half) = m.bottomRows(half);
        k.bottomRows(half) = -m.topRows(half);
        return k;
    }

    void rk4_step(const std::vector<ActiveDetector>& active, double t, double h,
                  Eigen::MatrixXd& s_mat) const {
        const Eigen::MatrixXd k1 = dense_generator(active, t) * s_mat;
        const Eigen::MatrixXd k2 = dense_generator(active, t + 0.5 * h) * (s_mat + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = dense_generator(active, t + 0.5 * h) * (s_mat + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = dense_generator(active, t + h) * (s_mat + h * k3);
        s_mat += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    const GeneratorSpec& spec_;
    QuadratureLayout layout_;
    int dim_;
    int n_;
    Eigen::VectorXd omegas_;
    int mode_q_start_ = 0;
    int mode_p_start_ = 0;
};

std::vector<double> segment_breakpoints(const GeneratorSpec& spec, double t0, double t1,
                                        std::span<const double> times) {
    std::vector<double> pts{t0, t1};
    for (const DetectorSpec& det : spec.detectors) {
        if (det.t_on > t0 && det.t_on < t1) pts.push_back(det.t_on);
        if (det.t_off > t0 && det.t_off < t1) pts.push_back(det.t_off);
    }
    for (double t : times) {
        if (t > t0 && t < t1) pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    const double tol = 1e-12 * std::max({1.0, std::abs(t0), std::abs(t1)});
    std::vector<double> merged;
    for (double t : pts) {
        if (merged.empty() || t - merged.back() > tol) merged.push_back(t);
    }
    return merged;
}

Eigen::MatrixXd evolve_impl(
    const GeneratorSpec& spec, double t0, double t1, double step, std::span<const double> times,
    const std::function<void(std::size_t, double, const Eigen::MatrixXd&)>& on_snapshot,
    Integrator method) {
    if (!(step > 0.0)) throw std::invalid_argument("evolve_window: step must be positive");
    if (t0 > t1) throw std::invalid_argument("evolve_window: t0 must not exceed t1");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t0 || times[i] > t1 || (i > 0 && times[i] < times[i - 1])) {
            throw std::invalid_argument("evolve_window: snapshot times must be sorted within [t0, t1]");
        }
    }

    Engine engine(spec);
    Eigen::MatrixXd s_mat = Eigen::MatrixXd::Identity(engine.dim_, engine.dim_);
    const double tol = 1e-12 * std::max({1.0, std::abs(t0), std::abs(t1)});

    std::size_t next_snapshot = 0;
    const auto fire = [&](double t) {
        while (next_snapshot < times.size() && times[next_snapshot] <= t + tol) {
            if (on_snapshot) on_snapshot(next_snapshot, times[next_snapshot], s_mat);
            ++next_snapshot;
        }
    };

    const std::vector<double> pts = segment_breakpoints(spec, t0, t1, times);
    fire(t0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i];
        const double b = pts[i + 1];
        const double mid = 0.5 * (a + b);
        std::vector<ActiveDetector> active;
        for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
            const DetectorSpec& det = spec.detectors[d];
            if (det.coupling != 0.0 && det.t_on <= mid && mid < det.t_off) {
                active.push_back(engine.make_active(static_cast<int>(d)));
            }
        }
        if (!active.empty()) {
            const int n_steps = std::max(1, static_cast<int>(std::ceil((b - a) / step - 1e-9)));
            const double h = (b - a) / static_cast<double>(n_steps);
            for (int k = 0; k < n_steps; ++k) {
                const double t = a + h * static_cast<double>(k);
                if (method == Integrator::magnus4) {
                    engine.magnus_step(active, t, h, s_mat);
                } else {
                    engine.rk4_step(active, t, h, s_mat);
                }
            }
        }
        fire(b);
    }
    fire(t1);

    const double defect = symplecticity_defect(s_mat);
    if (!(defect <= 1e-6)) {
        std::ostringstream msg;
        msg << "evolve_window: symplecticity defect " << defect << " exceeds 1e-6 (step " << step
            << ", window [" << t0 << ", " << t1 << "], N " << spec.cavity.n_modes << ")";
        throw std::runtime_error(msg.str());
    }
    return s_mat;
}

}  // namespace

GeneratorSpec::GeneratorSpec(CavitySpec cav, std::vector<DetectorSpec> dets)
    : cavity(cav), detectors(std::move(dets)) {
    if (detectors.size() != QuadratureLayout::n_detectors) {
        throw std::invalid_argument("GeneratorSpec: expected exactly two detectors (A, B)");
    }
    for (const DetectorSpec& det : detectors) {
        if (!(det.gap > 0.0)) throw std::invalid_argument("GeneratorSpec: detector gap must be positive");
        if (!(det.position >= 0.0 && det.position <= cavity.length)) {
            throw std::invalid_argument("GeneratorSpec: detector position outside the cavity");
        }
        if (!(det.t_on >= 0.0 && det.t_on < det.t_off)) {
            throw std::invalid_argument("GeneratorSpec: coupling window must satisfy 0 <= t_on < t_off");
        }
    }
}

double default_step(const CavitySpec& cavity) {
    return (2.0 * cavity.length / static_cast<double>(cavity.n_modes)) / 40.0;
}

Eigen::MatrixXd hamiltonian_matrix(const GeneratorSpec& spec, double t) {
    Engine engine(spec);
    const QuadratureLayout layout = spec.layout();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(layout.dim(), layout.dim());
    for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
        const DetectorSpec& det = spec.detectors[d];
        if (det.coupling == 0.0 || t < det.t_on || t >= det.t_off) continue;
        const ActiveDetector a = engine.make_active(static_cast<int>(d));
        const double c = std::cos(det.gap * t);
        const double s = std::sin(det.gap * t);
        const ModeVector u = engine.mode_vector(a, t);
        for (int j = 0; j < spec.cavity.n_modes; ++j) {
            const int qj = engine.mode_q_start_ + j;
            const int pj = engine.mode_p_start_ + j;
            m(a.q_idx, qj) = m(qj, a.q_idx) = c * u.q(j);
            m(a.q_idx, pj) = m(pj, a.q_idx) = c * u.p(j);
            m(a.p_idx, qj) = m(qj, a.p_idx) = s * u.q(j);
            m(a.p_idx, pj) = m(pj, a.p_idx) = s * u.p(j);
        }
    }
    return m;
}

Eigen::MatrixXd evolve_window(const GeneratorSpec& spec, double t0, double t1, double step,
                              Integrator method) {
    return evolve_impl(spec, t0, t1, step, {}, nullptr, method);
}

Eigen::MatrixXd evolve_with_snapshots(
    const GeneratorSpec& spec, double t0, double t1, double step, std::span<const double> times,
    const std::function<void(std::size_t, double, const Eigen::MatrixXd&)>& on_snapshot,
    Integrator method) {
    return evolve_impl(spec, t0, t1, step, times, on_snapshot, method);
}

Eigen::MatrixXd compose(const Eigen::MatrixXd& late, const Eigen::MatrixXd& early) {
    if (late.rows() != early.rows() || late.cols() != early.cols() || late.rows() != late.cols()) {
        throw std::invalid_argument("compose: dimension mismatch");
    }
    return late * early;
}

double symplecticity_defect(const Eigen::MatrixXd& S) {
    if (S.rows() != S.cols() || S.rows() % 2 != 0) {
        throw std::invalid_argument("symplecticity_defect: matrix must be square with even dimension");
    }
    const Eigen::MatrixXd j = symplectic_form(static_cast<int>(S.rows()));
    return (S.transpose() * j * S - j).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd symplectic_inverse(const Eigen::MatrixXd& S) {
    const Eigen::MatrixXd j = symplectic_form(static_cast<int>(S.rows()));
    return -j * S.transpose() * j;
}

}  // namespace huygens
