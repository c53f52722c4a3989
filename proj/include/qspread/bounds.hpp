#pragma once

#include "qspread/constants.hpp"

namespace qspread {

/// Reduced Compton wavelength hbar / (m c).
template <typename Scalar>
Scalar compton_length(Scalar hbar, Scalar mass, Scalar c) {
    return hbar / (mass * c);
}

double compton_wavelength(const Particle& particle, const PhysicalConstants& pc);

/// Outcome of asking whether a packet of a given width may exist for a particle.
struct BoundReport {
    Particle particle;
    double compton;                    ///< hbar / (m c)
    double requested_width;            ///< w0
    bool admissible;                   ///< w0 > hbar / (m c)
    double implied_asymptotic_speed;   ///< hbar / (m w0)
    double speed_ratio;                ///< implied speed / c
};

/// A width is admissible only if the large-time spreading speed hbar/(m w0) stays
/// below c, which is the same as w0 exceeding the Compton wavelength.
BoundReport check_localization(const Particle& particle, double width, const PhysicalConstants& pc);

struct HydrogenReport {
    int n;
    double bohr_radius_n;      ///< n^2 hbar^2 4 pi eps0 / (m e^2)
    double compton_electron;   ///< hbar / (m c)
    double alpha;
    bool forms;                ///< alpha / n^2 < 1
};

/// Hydrogen level n with the given electron and constants. Throws DomainError for n < 1.
HydrogenReport hydrogen_report(int n, const Particle& electron, const PhysicalConstants& pc);

/// CODATA constants and the registry electron.
HydrogenReport hydrogen_report(int n);

/// Smallest size a mass can collapse to, hbar / (m c). Same value as the Compton length.
double black_hole_floor(double mass, const PhysicalConstants& pc);

}  // namespace qspread
