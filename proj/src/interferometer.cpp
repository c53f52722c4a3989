#include "qspread/interferometer.hpp"

#include <random>

#include "qspread/error.hpp"

namespace qspread {

DetectorStats run_experiment(const ExperimentConfig& config) {
    if (!(config.photon_arrival_time > 0.0)) {
        throw DomainError("photon arrival time must be positive");
    }
    const ArmStated out = propagate<double>(config);
    DetectorStats stats;
    stats.p_d1 = std::norm(out(1));
    stats.p_d2 = std::norm(out(0));
    return stats;
}

DetectorStats sample_clicks(const DetectorStats& stats, std::uint64_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("sample count must be at least 1");
    if (!(stats.p_d1 >= 0.0 && stats.p_d1 <= 1.0)) {
        throw DomainError("p_d1 must lie in [0, 1]");
    }
    // Uniform variates are built from the top 53 bits so the counts do not depend on
    // the standard library's distribution implementation.
    std::mt19937_64 engine(seed);
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    std::uint64_t d1 = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(engine() >> 11) * kScale;
        if (u < stats.p_d1) ++d1;
    }
    DetectorStats out = stats;
    out.clicks_d1 = d1;
    out.clicks_d2 = n - d1;
    out.seed = seed;
    return out;
}

std::vector<PhaseSweepRow> phase_sweep(ExperimentConfig config, std::size_t points) {
    if (points == 0) throw DomainError("phase sweep needs at least one point");
    std::vector<PhaseSweepRow> rows;
    rows.reserve(points);
    const double base_lower = config.phase_lower;
    for (std::size_t i = 0; i < points; ++i) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points);
        config.phase_upper = base_lower + phi;
        const DetectorStats s = run_experiment(config);
        rows.push_back({phi, s.p_d1, s.p_d2});
    }
    return rows;
}

}  // namespace qspread
