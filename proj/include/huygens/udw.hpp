// Leading-order energy observables for a resting two-level detector in
// 1+1D Minkowski space, coupled over a sharp window [0, T).
#pragma once

#include <vector>

namespace huygens {

// Si(x) = int_0^x sin(t)/t dt. Power series for |x| <= 4, auxiliary-function
// continued fraction beyond; odd in x, -> pi/2 as x -> +inf.
double sine_integral(double x);

struct UdwParams {
    double gap = 1.0;             // Omega
    double coupling = 1.0;        // lambda
    double duration = 1.0;        // T
    double excited_weight = 1.0;  // |alpha|^2 in [0, 1], |beta|^2 = 1 - |alpha|^2

    UdwParams(double gap, double coupling, double duration, double excited_weight);
};

// <:T_tt(t, x):> to leading order. Supported only on the two lightlike strips
// x_pm = t +- x in [0, T); negative values occur for ground-state weights.
double energy_density(const UdwParams& params, double t, double x);

// Total energy injected into the field,
//   lambda^2 Omega^2 T (1/2 + (|a|^2-|b|^2)/pi (Si(Omega T) + (cos(Omega T)-1)/(T Omega))).
double total_energy(const UdwParams& params);

struct EnergyProfile {
    std::vector<double> x;
    std::vector<double> density;
};

// Samples energy_density on a constant-time slice.
EnergyProfile energy_profile(const UdwParams& params, double t, const std::vector<double>& x_grid);

}  // namespace huygens
