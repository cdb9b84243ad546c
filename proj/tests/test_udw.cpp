#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "huygens/udw.hpp"
#include "oracles.hpp"

using namespace huygens;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("sine integral against the quadrature oracle") {
    CHECK(sine_integral(0.0) == 0.0);
    // Values span both evaluation branches (series <= 4 < continued fraction).
    const double xs[] = {1e-4, 0.1,  0.5, 1.0,  2.0,  3.0,   3.9,  4.0,
                         4.1,  5.0,  8.0, 12.0, 20.0, 31.4,  50.0, 100.0,
                         200.0, 347.2};
    for (double x : xs) {
        const double expected = oracles::sine_integral(x);
        CHECK(std::abs(sine_integral(x) - expected) < 1e-9);
    }
    CHECK(sine_integral(pi) == doctest::Approx(1.8519370).epsilon(1e-7));
    CHECK(std::abs(sine_integral(pi) - oracles::sine_integral(pi)) < 1e-9);
}

TEST_CASE("sine integral is odd and approaches pi/2") {
    for (double x : {0.3, 1.7, 4.5, 9.0, 42.0}) {
        CHECK(sine_integral(-x) == -sine_integral(x));
    }
    CHECK(std::abs(sine_integral(1e7) - pi / 2.0) < 1e-6);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(UdwParams(0.0, 0.1, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(UdwParams(1.0, 0.1, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(UdwParams(1.0, 0.1, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("energy density lives on the two lightlike strips only") {
    const UdwParams params(1.0, 0.1, 25.0, 1.0);
    // Both lightcone coordinates outside [0, T): exactly zero.
    CHECK(energy_density(params, 30.0, 0.0) == 0.0);   // x+ = x- = 30
    CHECK(energy_density(params, 30.0, 50.0) == 0.0);  // far outside
    CHECK(energy_density(params, -1.0, 0.0) == 0.0);   // before switch-on

    for (int i = 0; i < 10000; ++i) {
        const double t = oracles::uniform(-50.0, 80.0);
        const double x = oracles::uniform(-80.0, 80.0);
        const double xp = t + x;
        const double xm = t - x;
        const bool on_strip = (xp >= 0.0 && xp < 25.0) || (xm >= 0.0 && xm < 25.0);
        if (!on_strip) CHECK(energy_density(params, t, x) == 0.0);
    }
}

TEST_CASE("balanced superposition cancels the Si terms") {
    const UdwParams params(2.0, 0.3, 10.0, 0.5);
    const double unit = params.coupling * params.coupling * params.gap * params.gap;
    // Point with only x- inside the window.
    CHECK(energy_density(params, 6.0, -5.0) == doctest::Approx(unit * 0.25).epsilon(1e-14));
    // Point with both strips active.
    CHECK(energy_density(params, 5.0, 1.0) == doctest::Approx(unit * 0.5).epsilon(1e-14));
}

TEST_CASE("excited detector plateau approaches half the natural unit") {
    const UdwParams params(1.0, 0.05, 100.0, 1.0);
    const double unit = params.coupling * params.coupling;  // gap = 1
    // Deep inside the strip: Si -> pi/2 so the bracket -> 1/2.
    const double t = 120.0;
    const double x = t - 50.0;  // x- = 50 inside [0, 100), x+ outside
    CHECK(energy_density(params, t, x) == doctest::Approx(unit * 0.5).epsilon(1e-2));
    // Ground state tends to zero there instead.
    const UdwParams ground(1.0, 0.05, 100.0, 0.0);
    CHECK(std::abs(energy_density(ground, t, x)) < unit * 1e-2);
}

TEST_CASE("ground state yields negative energy density near switch-on") {
    const UdwParams ground(1.0, 0.1, 25.0, 0.0);
    // Just after the x- strip enters: Si(>0) makes the bracket dip negative.
    bool found_negative = false;
    for (double u = 1.0; u < 25.0; u += 0.25) {
        if (energy_density(ground, u, 0.0) < 0.0) {  // x = 0: both strips at u
            found_negative = true;
            break;
        }
    }
    CHECK(found_negative);
}

TEST_CASE("total energy closed form: balanced, limit, and continuity") {
    // |alpha|^2 = 1/2 removes the Si correction entirely.
    const UdwParams balanced(3.0, 0.2, 7.0, 0.5);
    CHECK(total_energy(balanced) ==
          doctest::Approx(0.5 * 0.04 * 9.0 * 7.0).epsilon(1e-14));

    // Ground state, long windows: E -> lambda^2 gap / pi within 1% past
    // gap*T = 100, tightening as T grows.
    for (double omega_t : {150.0, 300.0, 1000.0, 5000.0}) {
        const UdwParams ground(1.0, 0.1, omega_t, 0.0);
        CHECK(total_energy(ground) == doctest::Approx(0.01 / pi).epsilon(0.01));
    }
    CHECK(total_energy(UdwParams(1.0, 0.1, 5000.0, 0.0)) ==
          doctest::Approx(0.01 / pi).epsilon(1e-3));

    // Short window: continuous approach to zero.
    const UdwParams tiny(1.0, 0.1, 1e-6, 1.0);
    CHECK(std::abs(total_energy(tiny)) < 1e-7);
}

TEST_CASE("profile integrates to the total energy") {
    for (double omega_t : {5.0, 25.0, 100.0}) {
        for (double weight : {0.0, 0.5, 1.0}) {
            const UdwParams params(1.0, 0.1, omega_t, weight);
            const double t = omega_t + 5.0;
            const double lo = -t - 1.0;
            const double hi = t + 1.0;
            const int n = static_cast<int>((hi - lo) / 2.5e-4);
            const double dx = (hi - lo) / n;
            double integral = 0.0;
            double prev = energy_density(params, t, lo);
            for (int i = 1; i <= n; ++i) {
                const double cur = energy_density(params, t, lo + dx * i);
                integral += 0.5 * dx * (prev + cur);
                prev = cur;
            }
            const double expected = total_energy(params);
            const double scale = params.coupling * params.coupling * params.gap * params.gap *
                                 params.duration;
            CHECK(std::abs(integral - expected) < 0.01 * std::abs(expected) + 1e-6 * scale);
        }
    }
}

TEST_CASE("density interpolates monotonically between ground and excited") {
    const UdwParams ground(1.0, 0.1, 25.0, 0.0);
    const UdwParams mid(1.0, 0.1, 25.0, 0.37);
    const UdwParams excited(1.0, 0.1, 25.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double t = oracles::uniform(0.0, 40.0);
        const double x = oracles::uniform(-40.0, 40.0);
        const double lo = std::min(energy_density(ground, t, x), energy_density(excited, t, x));
        const double hi = std::max(energy_density(ground, t, x), energy_density(excited, t, x));
        const double v = energy_density(mid, t, x);
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("energy profile samples the slice and rejects empty grids") {
    const UdwParams params(1.0, 1.0, 25.0, 1.0);
    std::vector<double> grid;
    for (double x = -35.0; x <= 35.0; x += 0.5) grid.push_back(x);
    const EnergyProfile profile = energy_profile(params, 30.0, grid);
    REQUIRE(profile.x.size() == profile.density.size());
    // Support is |x| in [5, 30] on the t = 30 slice.
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
        const double ax = std::abs(profile.x[i]);
        if (ax < 4.9 || ax > 30.1) CHECK(profile.density[i] == 0.0);
    }
    CHECK_THROWS_AS(energy_profile(params, 30.0, {}), std::invalid_argument);
}
