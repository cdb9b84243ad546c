#include "huygens/dalembert.hpp"

#include <cmath>
#include <stdexcept>

namespace huygens {

InitialData::InitialData(double x0, double dx, std::vector<double> phi0, std::vector<double> pi0,
                         double pad)
    : x0_(x0), dx_(dx), pad_(pad), phi0_(std::move(phi0)), pi0_(std::move(pi0)) {
    if (!(dx_ > 0.0)) throw std::invalid_argument("InitialData: grid spacing must be positive");
    if (phi0_.size() != pi0_.size() || phi0_.size() < 4) {
        throw std::invalid_argument("InitialData: need matching samples, at least 4 points");
    }
    for (std::size_t i = 0; i < phi0_.size(); ++i) {
        if (!std::isfinite(phi0_[i]) || !std::isfinite(pi0_[i])) {
            throw std::invalid_argument("InitialData: samples must be finite");
        }
    }
    const double window = dx_ * static_cast<double>(n() - 1);
    if (pad_ < 0.0) pad_ = 10.0 * window;

    pi_cumulative_.resize(n(), 0.0);
    for (std::size_t i = 1; i < n(); ++i) {
        pi_cumulative_[i] = pi_cumulative_[i - 1] + 0.5 * dx_ * (pi0_[i - 1] + pi0_[i]);
    }
}

void InitialData::check_domain(double y) const {
    if (!(y >= domain_min() && y <= domain_max())) {
        throw std::domain_error("InitialData: evaluation outside the padded domain");
    }
}

// Catmull-Rom cubic on the uniform grid; samples outside the window are zero.
double InitialData::interpolate(const std::vector<double>& f, double y) const {
    check_domain(y);
    const double s = (y - x0_) / dx_;
    if (s <= -1.0 || s >= static_cast<double>(n())) return 0.0;
    const double cell = std::floor(s);
    const long k = static_cast<long>(cell);
    const double u = s - cell;
    const auto sample = [&](long i) -> double {
        if (i < 0 || i >= static_cast<long>(n())) return 0.0;
        return f[static_cast<std::size_t>(i)];
    };
    const double fm1 = sample(k - 1);
    const double f0 = sample(k);
    const double f1 = sample(k + 1);
    const double f2 = sample(k + 2);
    return f0 + 0.5 * u *
                    (f1 - fm1 +
                     u * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 + u * (3.0 * (f0 - f1) + f2 - fm1)));
}

double InitialData::phi_at(double y) const { return interpolate(phi0_, y); }

double InitialData::pi_at(double y) const { return interpolate(pi0_, y); }

double InitialData::dphi_at(double y) const {
    return (phi_at(y + dx_) - phi_at(y - dx_)) / (2.0 * dx_);
}

// Prefix trapezoid integral from the window start to y; flat beyond the window
// because the data is zero there.
double InitialData::cumulative_at(double y) const {
    check_domain(y);
    if (y <= x0_) return 0.0;
    if (y >= window_max()) return pi_cumulative_.back();
    const double s = (y - x0_) / dx_;
    const long k = static_cast<long>(std::floor(s));
    const double u = s - static_cast<double>(k);
    const double f0 = pi0_[static_cast<std::size_t>(k)];
    const double f1 = pi0_[static_cast<std::size_t>(k) + 1];
    const double f_y = f0 + u * (f1 - f0);
    return pi_cumulative_[static_cast<std::size_t>(k)] + 0.5 * (u * dx_) * (f0 + f_y);
}

double InitialData::pi_integral(double lo, double hi) const {
    return cumulative_at(hi) - cumulative_at(lo);
}

double evolve_phi(const InitialData& data, double t, double x) {
    return 0.5 * (data.phi_at(x + t) + data.phi_at(x - t) + data.pi_integral(x - t, x + t));
}

double evolve_pi(const InitialData& data, double t, double x) {
    return 0.5 *
           (data.pi_at(x + t) + data.pi_at(x - t) + data.dphi_at(x + t) - data.dphi_at(x - t));
}

double energy_density_boundary(const InitialData& data, double t, double x) {
    const double right = data.pi_at(x + t) + data.dphi_at(x + t);
    const double left = data.pi_at(x - t) - data.dphi_at(x - t);
    return 0.25 * (right * right + left * left);
}

double energy_density_direct(const InitialData& data, double t, double x) {
    const double pi_tx = evolve_pi(data, t, x);
    const double dphi =
        (evolve_phi(data, t, x + data.dx()) - evolve_phi(data, t, x - data.dx())) /
        (2.0 * data.dx());
    return 0.5 * (pi_tx * pi_tx + dphi * dphi);
}

}  // namespace huygens
