#include "qspread/boxstates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspread/error.hpp"

namespace qspread {

namespace {

constexpr double kEdgeTolerance = 1e-9;

struct AxisWindow {
    std::int64_t first;
    std::int64_t last;  // inclusive; last < first means empty
};

AxisWindow candidate_window(double lo, double hi, double cell) {
    const auto first = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(lo / cell)));
    const auto last = static_cast<std::int64_t>(std::ceil(hi / cell));
    return {first, last};
}

bool inside(std::int64_t n, double lo, double hi, double cell) {
    const double p = static_cast<double>(n) * cell;
    const double slack = kEdgeTolerance * cell;
    return p >= lo - slack && p <= hi + slack;
}

}  // namespace

BoxSpec make_box(double side) {
    if (!(side > 0.0) || !std::isfinite(side)) throw DomainError("box side must be positive");
    return {side};
}

void MomentumRegion::validate() const {
    if (!p_lo.allFinite() || !p_hi.allFinite()) throw DomainError("momentum region bounds must be finite");
    if ((p_hi.array() < p_lo.array()).any()) throw DomainError("momentum region needs p_hi >= p_lo on every axis");
}

MomentumRegion cell_region(const BoxSpec& box, double offset, double cells, const PhysicalConstants& pc) {
    const double cell = min_momentum_uncertainty(box, pc);
    MomentumRegion r{Eigen::Vector3d::Constant(offset * cell), Eigen::Vector3d::Constant((offset + cells) * cell)};
    r.validate();
    return r;
}

double momentum_level(std::int64_t n, const BoxSpec& box, const PhysicalConstants& pc) {
    if (n < 1) throw DomainError("momentum level index must be >= 1");
    return static_cast<double>(n) * pc.h / box.side;
}

double count_states_continuum(const BoxSpec& box, const MomentumRegion& region, const PhysicalConstants& pc) {
    region.validate();
    const double cell = min_momentum_uncertainty(box, pc);
    return ((region.p_hi - region.p_lo) / cell).prod();
}

std::uint64_t count_states_lattice(const BoxSpec& box, const MomentumRegion& region, const PhysicalConstants& pc,
                                   std::uint64_t cap) {
    region.validate();
    const double cell = min_momentum_uncertainty(box, pc);
    AxisWindow w[3];
    double candidates = 1.0;
    for (int a = 0; a < 3; ++a) {
        w[a] = candidate_window(region.p_lo(a), region.p_hi(a), cell);
        candidates *= static_cast<double>(std::max<std::int64_t>(0, w[a].last - w[a].first + 1));
    }
    if (candidates > static_cast<double>(cap)) {
        throw CapExceededError("lattice enumeration would visit " + std::to_string(candidates) +
                               " points, above the cap of " + std::to_string(cap));
    }
    std::uint64_t count = 0;
    for (std::int64_t i = w[0].first; i <= w[0].last; ++i) {
        if (!inside(i, region.p_lo(0), region.p_hi(0), cell)) continue;
        for (std::int64_t j = w[1].first; j <= w[1].last; ++j) {
            if (!inside(j, region.p_lo(1), region.p_hi(1), cell)) continue;
            for (std::int64_t k = w[2].first; k <= w[2].last; ++k) {
                if (inside(k, region.p_lo(2), region.p_hi(2), cell)) ++count;
            }
        }
    }
    return count;
}

double min_momentum_uncertainty(const BoxSpec& box, const PhysicalConstants& pc) {
    return pc.h / box.side;
}

}  // namespace qspread
