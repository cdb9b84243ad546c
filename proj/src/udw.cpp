#include "huygens/udw.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace huygens {

namespace {

constexpr double pi = std::numbers::pi;

// Power series sum_k (-1)^k x^{2k+1} / ((2k+1)(2k+1)!); used for |x| <= 4 where
// it converges without cancellation trouble.
double si_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 64; ++k) {
        const double two_k = 2.0 * static_cast<double>(k);
        term *= -x2 * (two_k - 1.0) / ((two_k + 1.0) * (two_k + 1.0) * two_k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// E1(i x) by the modified-Lentz continued fraction (x > 0); then
// Si(x) = pi/2 + Im E1(i x). Evaluates the asymptotic auxiliary functions to
// machine accuracy for moderate and large arguments.
double si_continued_fraction(double x) {
    using cd = std::complex<double>;
    const cd z(0.0, x);
    cd b = z + 1.0;
    cd c(1e308, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i < 200; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const cd e1 = h * std::exp(-z);
    return pi / 2.0 + e1.imag();
}

// Indicator of the coupling window [0, T).
bool in_window(double u, double duration) { return u >= 0.0 && u < duration; }

}  // namespace

double sine_integral(double x) {
    if (!std::isfinite(x)) throw std::domain_error("sine_integral: argument must be finite");
    const double ax = std::abs(x);
    const double value = (ax <= 4.0) ? si_series(ax) : si_continued_fraction(ax);
    return x < 0.0 ? -value : value;
}

UdwParams::UdwParams(double gap_, double coupling_, double duration_, double excited_weight_)
    : gap(gap_), coupling(coupling_), duration(duration_), excited_weight(excited_weight_) {
    if (!(gap > 0.0)) throw std::invalid_argument("UdwParams: gap must be positive");
    if (!(duration > 0.0)) throw std::invalid_argument("UdwParams: duration must be positive");
    if (!(excited_weight >= 0.0 && excited_weight <= 1.0)) {
        throw std::invalid_argument("UdwParams: excited weight must lie in [0, 1]");
    }
}

double energy_density(const UdwParams& params, double t, double x) {
    const double xp = t + x;
    const double xm = t - x;
    const double pop_diff = 2.0 * params.excited_weight - 1.0;  // |alpha|^2 - |beta|^2
    double value = 0.0;
    if (in_window(xp, params.duration)) {
        value += 0.25 + pop_diff * sine_integral(params.gap * xp) / (2.0 * pi);
    }
    if (in_window(xm, params.duration)) {
        value += 0.25 + pop_diff * sine_integral(params.gap * xm) / (2.0 * pi);
    }
    return params.coupling * params.coupling * params.gap * params.gap * value;
}

double total_energy(const UdwParams& params) {
    const double omega_t = params.gap * params.duration;
    const double pop_diff = 2.0 * params.excited_weight - 1.0;
    const double bracket =
        0.5 + (pop_diff / pi) * (sine_integral(omega_t) + (std::cos(omega_t) - 1.0) / omega_t);
    return params.coupling * params.coupling * params.gap * params.gap * params.duration * bracket;
}

EnergyProfile energy_profile(const UdwParams& params, double t, const std::vector<double>& x_grid) {
    if (x_grid.empty()) throw std::invalid_argument("energy_profile: empty grid");
    EnergyProfile profile;
    profile.x = x_grid;
    profile.density.reserve(x_grid.size());
    for (double x : x_grid) {
        profile.density.push_back(energy_density(params, t, x));
    }
    return profile;
}

}  // namespace huygens
