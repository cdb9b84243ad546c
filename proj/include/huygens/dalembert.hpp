// Classical d'Alembert propagation on the line. The field amplitude at (t, x)
// reads Cauchy data from the whole interval [x-t, x+t]; the energy density
// reads it only at the two endpoints.
#pragma once

#include <vector>

namespace huygens {

// Cauchy data phi(0, .), pi(0, .) sampled on a uniform grid, zero outside the
// sampled window. Values between samples come from cubic interpolation; the
// integral term uses trapezoid quadrature; spatial derivatives use central
// differences at the grid spacing.
class InitialData {
public:
    // pad: evaluations are allowed up to this distance beyond the sampled
    // window (where the data is exactly zero). Defaults to 10 window lengths.
    InitialData(double x0, double dx, std::vector<double> phi0, std::vector<double> pi0,
                double pad = -1.0);

    double dx() const { return dx_; }
    double window_min() const { return x0_; }
    double window_max() const { return x0_ + dx_ * static_cast<double>(n() - 1); }
    double domain_min() const { return window_min() - pad_; }
    double domain_max() const { return window_max() + pad_; }

    double phi_at(double y) const;   // interpolated phi(0, y)
    double pi_at(double y) const;    // interpolated pi(0, y)
    double dphi_at(double y) const;  // (phi(y+dx) - phi(y-dx)) / (2 dx)

    // Trapezoid integral of pi(0, .) over [lo, hi] (signed).
    double pi_integral(double lo, double hi) const;

    void check_domain(double y) const;  // throws std::domain_error outside the padded domain

private:
    std::size_t n() const { return phi0_.size(); }
    double interpolate(const std::vector<double>& f, double y) const;
    double cumulative_at(double y) const;

    double x0_;
    double dx_;
    double pad_;
    std::vector<double> phi0_;
    std::vector<double> pi0_;
    std::vector<double> pi_cumulative_;  // trapezoid prefix integral at the nodes
};

// phi(t, x) = (phi(0,x+t) + phi(0,x-t) + int_{x-t}^{x+t} pi(0,y) dy) / 2.
double evolve_phi(const InitialData& data, double t, double x);

// pi(t, x) = (pi(0,x+t) + pi(0,x-t) + d_x phi(0,x+t) - d_x phi(0,x-t)) / 2.
double evolve_pi(const InitialData& data, double t, double x);

// T_00(t, x) = ((pi + d_x phi)^2(0, x+t) + (pi - d_x phi)^2(0, x-t)) / 4.
// Reads initial data only on the boundary of the past lightcone of (t, x).
double energy_density_boundary(const InitialData& data, double t, double x);

// T_00 from the evolved field: ((pi(t,x))^2 + (d_x phi(t,x))^2) / 2 with the
// spatial derivative taken by central differences of evolve_phi.
double energy_density_direct(const InitialData& data, double t, double x);

}  // namespace huygens
