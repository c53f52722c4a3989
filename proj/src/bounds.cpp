#include "qspread/bounds.hpp"

#include <cmath>
#include <numbers>

#include "qspread/error.hpp"

namespace qspread {

double compton_wavelength(const Particle& particle, const PhysicalConstants& pc) {
    if (!(particle.mass > 0.0)) throw DomainError("Compton wavelength needs a positive mass");
    return compton_length(pc.hbar, particle.mass, pc.c);
}

BoundReport check_localization(const Particle& particle, double width, const PhysicalConstants& pc) {
    if (!(width > 0.0)) throw DomainError("localization width must be positive");
    BoundReport r{particle, compton_wavelength(particle, pc), width, false, 0.0, 0.0};
    r.implied_asymptotic_speed = pc.hbar / (particle.mass * width);
    r.speed_ratio = r.compton / width;
    r.admissible = width > r.compton;
    return r;
}

HydrogenReport hydrogen_report(int n, const Particle& electron, const PhysicalConstants& pc) {
    if (n < 1) throw DomainError("principal quantum number must be >= 1");
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    const double coulomb = pc.e_charge * pc.e_charge / (4.0 * std::numbers::pi * pc.epsilon0);
    HydrogenReport r{};
    r.n = n;
    r.bohr_radius_n = n2 * pc.hbar * pc.hbar / (electron.mass * coulomb);
    r.compton_electron = compton_wavelength(electron, pc);
    r.alpha = pc.alpha();
    r.forms = r.alpha / n2 < 1.0;
    return r;
}

HydrogenReport hydrogen_report(int n) {
    return hydrogen_report(n, lookup_particle("electron"), PhysicalConstants::codata2018());
}

double black_hole_floor(double mass, const PhysicalConstants& pc) {
    if (!(mass > 0.0)) throw DomainError("black hole mass must be positive");
    if (std::isinf(mass)) return 0.0;
    return compton_length(pc.hbar, mass, pc.c);
}

}  // namespace qspread
