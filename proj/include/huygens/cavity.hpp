// Dirichlet cavity mode data and massless-field commutators (cavity and free space).
#pragma once

namespace huygens {

// Interval [0, L] with the field pinned to zero at both walls. Modes are
// sin(j pi x / L), j = 1..n_modes, with no zero mode.
struct CavitySpec {
    double length = 1.0;  // L
    int n_modes = 1;      // UV cutoff N

    CavitySpec(double L, int N);
};

// omega_j = j pi / L
double mode_frequency(const CavitySpec& spec, int j);

// Mode profile at the detector position: sin(j pi x / L) / sqrt(j pi).
double coupling_weight(const CavitySpec& spec, int j, double x);

enum class Smoothing { none, fejer };

// Field commutator [phi(t1,x1), phi(t2,x2)] inside the cavity, reported as the
// real coefficient of i. Convention: +1/2 when (t2,x2) lies in the unreflected
// future lightcone of (t1,x1), matching the free-space commutator below.
// Piecewise constant; periodic in t1 - t2 with period 2L.
double cavity_commutator_closed(const CavitySpec& spec, double t1, double x1, double t2, double x2);

// Truncated mode-sum form of the same commutator,
//   -sum_{j<=N} (2/(pi j)) sin(j pi x1/L) sin(j pi x2/L) sin(j pi (t1-t2)/L),
// optionally Fejer (Cesaro) averaged to tame Gibbs oscillations at the jumps.
double cavity_commutator_modesum(const CavitySpec& spec, double t1, double x1, double t2, double x2,
                                 Smoothing smoothing = Smoothing::none);

struct Event {
    double t;
    double x;
};

// 1+1D Minkowski commutator coefficient: +1/2 for y strictly inside the future
// lightcone of x, -1/2 strictly inside the past lightcone, 0 spacelike.
double minkowski_commutator(const Event& x, const Event& y);

// True when some light ray (direct or wall-reflected, any number of bounces)
// connects position x1 to position x2 with a time delay in [delay_min, delay_max].
bool lightray_delay_in(const CavitySpec& spec, double x1, double x2, double delay_min,
                       double delay_max);

// Distance from the event pair to the nearest lightcone line of the closed form
// (the lines where any floor argument crosses an integer). Used to keep test
// points away from the measure-zero jump set.
double lightcone_line_distance(const CavitySpec& spec, double t1, double x1, double t2, double x2);

}  // namespace huygens
