#include "huygens/quadrature.hpp"

namespace huygens {

Eigen::MatrixXd symplectic_form(int dim) {
    if (dim <= 0 || dim % 2 != 0) {
        throw std::invalid_argument("symplectic_form: dimension must be positive and even");
    }
    const int n = dim / 2;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return j;
}

}  // namespace huygens
