// Quadrature indexing for the detectors+cavity system: all positions first, then all momenta.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace huygens {

// Index convention for two detectors (A, B) and N field modes:
//   x = (q_A, q_B, q_1..q_N, p_A, p_B, p_1..p_N),  dimension d = 2(N+2).
// Subsystem k: 0 = detector A, 1 = detector B, 2..N+1 = modes 1..N.
struct QuadratureLayout {
    static constexpr int n_detectors = 2;

    int n_modes = 0;

    explicit QuadratureLayout(int modes) : n_modes(modes) {
        if (modes < 1) {
            throw std::invalid_argument("QuadratureLayout: need at least one field mode");
        }
    }

    int subsystems() const { return n_detectors + n_modes; }
    int dim() const { return 2 * subsystems(); }

    int q_index(int k) const {
        check(k);
        return k;
    }
    int p_index(int k) const {
        check(k);
        return k + subsystems();
    }

    // mode number j = 1..N
    int mode_subsystem(int j) const {
        if (j < 1 || j > n_modes) throw std::out_of_range("QuadratureLayout: mode index out of range");
        return n_detectors + (j - 1);
    }

private:
    void check(int k) const {
        if (k < 0 || k >= subsystems()) throw std::out_of_range("QuadratureLayout: subsystem index out of range");
    }
};

// Symplectic form J = [[0, I], [-I, 0]] in the q-then-p block convention; J^2 = -I.
Eigen::MatrixXd symplectic_form(int dim);

}  // namespace huygens
