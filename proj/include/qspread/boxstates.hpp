#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qspread/constants.hpp"

namespace qspread {

/// Cubical box of side L.
struct BoxSpec {
    double side;
};

BoxSpec make_box(double side);

/// Axis-aligned momentum region [p_lo, p_hi] (closed on every axis).
struct MomentumRegion {
    Eigen::Vector3d p_lo;
    Eigen::Vector3d p_hi;

    void validate() const;
};

/// Cube of `cells` lattice spacings per side starting at `offset` spacings from zero.
MomentumRegion cell_region(const BoxSpec& box, double offset, double cells, const PhysicalConstants& pc);

/// p_n = n h / L. Throws DomainError for n < 1.
double momentum_level(std::int64_t n, const BoxSpec& box, const PhysicalConstants& pc);

/// L^3 * prod(p_hi - p_lo) / h^3, i.e. the region volume in units of (h/L)^3 cells.
double count_states_continuum(const BoxSpec& box, const MomentumRegion& region, const PhysicalConstants& pc);

inline constexpr std::uint64_t kDefaultLatticeCap = 100'000'000;

/// Number of (n1, n2, n3), all n_i >= 1, with n_i h / L inside the region on every axis.
/// Boundary membership is decided with a relative tolerance of 1e-9 of a cell.
/// Throws CapExceededError when more than `cap` lattice points would be enumerated.
std::uint64_t count_states_lattice(const BoxSpec& box, const MomentumRegion& region, const PhysicalConstants& pc,
                                   std::uint64_t cap = kDefaultLatticeCap);

/// h / L, the spacing between neighbouring momentum levels.
double min_momentum_uncertainty(const BoxSpec& box, const PhysicalConstants& pc);

}  // namespace qspread
