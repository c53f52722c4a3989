#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "qspread/bounds.hpp"
#include "qspread/error.hpp"

using namespace qspread;

namespace {
const PhysicalConstants& si = PhysicalConstants::codata2018();
}

TEST_CASE("Compton wavelengths") {
    const double proton = compton_wavelength(lookup_particle("proton"), si);
    CHECK(proton == doctest::Approx(2.10308910335559201e-16).epsilon(1e-9));
    CHECK(std::floor(std::log10(proton)) == -16);

    const double electron = compton_wavelength(lookup_particle("electron"), si);
    CHECK(electron == doctest::Approx(3.86159267960890553e-13).epsilon(1e-9));
    // hand-estimate constants (hbar ~ 6.6e-34, c ~ 3e8)
    const double rough = compton_wavelength(lookup_particle("electron"), PhysicalConstants::two_digit());
    CHECK(rough == doctest::Approx(2.41509203266707955e-12).epsilon(1e-9));

    double prev = std::numeric_limits<double>::infinity();
    for (double m : {1e-30, 1e-10, 1.0, 1e3, 1e6}) {
        const double l = compton_wavelength(make_particle("m", m), si);
        CHECK(l < prev);
        prev = l;
    }
    CHECK(compton_wavelength(make_particle("heavy", 1e6), si) < 1e-47);
}

TEST_CASE("Compton length is inversely proportional to mass") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> exponent(-31.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double m1 = std::pow(10.0, exponent(rng));
        const double m2 = std::pow(10.0, exponent(rng));
        const double ratio = compton_wavelength(make_particle("a", m1), si) / compton_wavelength(make_particle("b", m2), si);
        CHECK(std::abs(ratio / (m2 / m1) - 1.0) < 1e-12);
    }
}

TEST_CASE("localization check examples") {
    const Particle e = lookup_particle("electron");
    const double lc = compton_wavelength(e, si);

    const BoundReport at = check_localization(e, lc, si);
    CHECK_FALSE(at.admissible);
    CHECK(at.implied_asymptotic_speed == doctest::Approx(si.c).epsilon(1e-12));

    const BoundReport twice = check_localization(e, 2 * lc, si);
    CHECK(twice.admissible);
    CHECK(twice.implied_asymptotic_speed == doctest::Approx(si.c / 2).epsilon(1e-12));

    const BoundReport tenth = check_localization(e, 0.1 * lc, si);
    CHECK_FALSE(tenth.admissible);
    CHECK(tenth.implied_asymptotic_speed == doctest::Approx(10 * si.c).epsilon(1e-12));
    CHECK(tenth.speed_ratio == doctest::Approx(10.0).epsilon(1e-12));

    CHECK_THROWS_AS(check_localization(e, 0.0, si), DomainError);
    CHECK_THROWS_AS(check_localization(e, -1e-12, si), DomainError);
}

TEST_CASE("admissible exactly when the implied speed is below c") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> log_factor(-3.0, 3.0);
    std::uniform_real_distribution<double> log_mass(-31.0, 0.0);
    for (int i = 0; i < 2000; ++i) {
        const Particle p = make_particle("p", std::pow(10.0, log_mass(rng)));
        const double width = compton_wavelength(p, si) * std::pow(10.0, log_factor(rng));
        const BoundReport r = check_localization(p, width, si);
        CHECK(r.admissible == (r.implied_asymptotic_speed < si.c));
        CHECK(r.implied_asymptotic_speed == doctest::Approx(si.hbar / (p.mass * width)).epsilon(1e-15));
    }
}

TEST_CASE("hydrogen report") {
    const HydrogenReport h1 = hydrogen_report(1);
    CHECK(std::abs(h1.alpha - 7.297e-3) <= 1e-6);
    CHECK(h1.alpha == doctest::Approx(7.29735256927803373e-3).epsilon(1e-10));
    CHECK(h1.forms);
    CHECK(std::abs(h1.bohr_radius_n / h1.compton_electron * h1.alpha - 1.0) < 1e-9);
    CHECK(h1.bohr_radius_n / h1.compton_electron == doctest::Approx(137.036).epsilon(1e-6));
    CHECK(h1.bohr_radius_n == doctest::Approx(5.29177210903e-11).epsilon(1e-9));

    bool prev = false;
    for (int n = 1; n <= 50; ++n) {
        const HydrogenReport hn = hydrogen_report(n);
        CHECK(hn.forms);
        CHECK(std::abs(hn.bohr_radius_n / h1.bohr_radius_n / (n * n) - 1.0) < 1e-12);
        CHECK(std::abs(hn.bohr_radius_n / hn.compton_electron * hn.alpha / (n * n) - 1.0) < 1e-9);
        if (prev) CHECK(hn.forms);
        prev = hn.forms;
    }
    CHECK_THROWS_AS(hydrogen_report(0), DomainError);
    CHECK_THROWS_AS(hydrogen_report(-2), DomainError);
}

TEST_CASE("hydrogen does not form when the coupling exceeds one") {
    PhysicalConstants strong = si;
    strong.e_charge *= std::sqrt(1.5 / si.alpha());
    const HydrogenReport h1 = hydrogen_report(1, lookup_particle("electron"), strong);
    CHECK(h1.alpha == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_FALSE(h1.forms);
    // forms is monotone in n: once alpha / n^2 < 1 it stays that way
    bool formed = false;
    for (int n = 1; n <= 5; ++n) {
        const bool f = hydrogen_report(n, lookup_particle("electron"), strong).forms;
        if (formed) CHECK(f);
        formed = formed || f;
    }
    CHECK(hydrogen_report(2, lookup_particle("electron"), strong).forms);
}

TEST_CASE("black hole floor") {
    const double sun = black_hole_floor(2e30, si);
    CHECK(sun > 0.0);
    CHECK(sun == doctest::Approx(1.75883647087305373e-73).epsilon(1e-9));
    CHECK(black_hole_floor(std::numeric_limits<double>::infinity(), si) == 0.0);
    CHECK(black_hole_floor(1e300, si) < 1e-300);
    for (double m : {1e-30, 1.0, 2e30}) {
        CHECK(black_hole_floor(m, si) == compton_wavelength(make_particle("m", m), si));
    }
    CHECK_THROWS_AS(black_hole_floor(0.0, si), DomainError);
}
