#include "huygens/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace huygens {

namespace {

constexpr double pi = std::numbers::pi;

void check_position(const CavitySpec& spec, double x, const char* what) {
    if (!(x >= 0.0 && x <= spec.length)) {
        throw std::domain_error(std::string(what) + ": position outside the cavity");
    }
}

}  // namespace

CavitySpec::CavitySpec(double L, int N) : length(L), n_modes(N) {
    if (!(L > 0.0)) throw std::invalid_argument("CavitySpec: length must be positive");
    if (N < 1) throw std::invalid_argument("CavitySpec: need at least one mode");
}

double mode_frequency(const CavitySpec& spec, int j) {
    if (j < 1 || j > spec.n_modes) throw std::out_of_range("mode_frequency: mode index out of range");
    return static_cast<double>(j) * pi / spec.length;
}

double coupling_weight(const CavitySpec& spec, int j, double x) {
    if (j < 1 || j > spec.n_modes) throw std::out_of_range("coupling_weight: mode index out of range");
    check_position(spec, x, "coupling_weight");
    const double jd = static_cast<double>(j);
    return std::sin(jd * pi * x / spec.length) / std::sqrt(jd * pi);
}

// The floor-function closed form of the mode sum, with the overall sign fixed
// so that the value is +1/2 when (t2,x2) lies in the unreflected future
// lightcone of (t1,x1). The fixed sign is what the truncated mode sum below
// converges to (see the commutator tests).
double cavity_commutator_closed(const CavitySpec& spec, double t1, double x1, double t2,
                                double x2) {
    check_position(spec, x1, "cavity_commutator_closed");
    check_position(spec, x2, "cavity_commutator_closed");
    const double tau = t1 - t2;
    const double two_l = 2.0 * spec.length;
    const auto f = [two_l](double z) { return std::floor(z / two_l); };
    return 0.5 * (f(tau + x1 + x2) + f(tau - x1 - x2) - f(tau + x1 - x2) - f(tau - x1 + x2));
}

double cavity_commutator_modesum(const CavitySpec& spec, double t1, double x1, double t2,
                                 double x2, Smoothing smoothing) {
    check_position(spec, x1, "cavity_commutator_modesum");
    check_position(spec, x2, "cavity_commutator_modesum");
    const double tau = t1 - t2;
    const double l = spec.length;
    const int n = spec.n_modes;
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        double term = -(2.0 / (pi * jd)) * std::sin(jd * pi * x1 / l) * std::sin(jd * pi * x2 / l) *
                      std::sin(jd * pi * tau / l);
        if (smoothing == Smoothing::fejer) {
            term *= 1.0 - jd / (static_cast<double>(n) + 1.0);
        }
        sum += term;
    }
    return sum;
}

double minkowski_commutator(const Event& x, const Event& y) {
    const double dt = y.t - x.t;
    const double dx = y.x - x.x;
    const double interval = dt * dt - dx * dx;
    if (interval < 0.0) return 0.0;
    if (dt > 0.0) return 0.5;
    if (dt < 0.0) return -0.5;
    return 0.0;
}

bool lightray_delay_in(const CavitySpec& spec, double x1, double x2, double delay_min,
                       double delay_max) {
    if (delay_min > delay_max) return false;
    const double two_l = 2.0 * spec.length;
    const double bases[4] = {x1 - x2, x2 - x1, x1 + x2, -(x1 + x2)};
    for (double base : bases) {
        const double k = std::ceil((delay_min - base) / two_l);
        const double delay = base + two_l * k;
        if (delay <= delay_max) return true;
    }
    return false;
}

double lightcone_line_distance(const CavitySpec& spec, double t1, double x1, double t2,
                               double x2) {
    const double tau = t1 - t2;
    const double two_l = 2.0 * spec.length;
    const double args[4] = {tau + x1 + x2, tau - x1 - x2, tau + x1 - x2, tau - x1 + x2};
    double dist = std::numeric_limits<double>::infinity();
    for (double z : args) {
        dist = std::min(dist, std::abs(z - two_l * std::round(z / two_l)));
    }
    return dist;
}

}  // namespace huygens
