#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace qspread {

/// Two-mode amplitude: row 0 is the upper arm, row 1 the lower arm.
template <typename Scalar>
using ArmState = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

using ArmStated = ArmState<double>;

template <typename Scalar>
ArmState<Scalar> photon_in_upper_port() {
    ArmState<Scalar> s;
    s << std::complex<Scalar>(1), std::complex<Scalar>(0);
    return s;
}

/// Lossless symmetric 50/50 splitter, (1/sqrt2) [[1, i], [i, 1]].
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> beam_splitter_matrix() {
    using C = std::complex<Scalar>;
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    Eigen::Matrix<C, 2, 2> m;
    m << C(r, 0), C(0, r),
         C(0, r), C(r, 0);
    return m;
}

template <typename Derived>
auto beam_splitter(const Eigen::MatrixBase<Derived>& state) {
    using Scalar = typename Derived::Scalar::value_type;
    return ArmState<Scalar>(beam_splitter_matrix<Scalar>() * state);
}

/// Multiplies the upper amplitude by e^{i phase_upper} and the lower by e^{i phase_lower}.
template <typename Derived, typename Scalar = typename Derived::Scalar::value_type>
ArmState<Scalar> arm_phase(const Eigen::MatrixBase<Derived>& state, Scalar phase_upper, Scalar phase_lower) {
    ArmState<Scalar> out = state;
    out(0) *= std::polar(Scalar(1), phase_upper);
    out(1) *= std::polar(Scalar(1), phase_lower);
    return out;
}

template <typename Derived>
auto arm_norm(const Eigen::MatrixBase<Derived>& state) {
    return state.squaredNorm();
}

/// Delayed-choice setup. The arms are always isolated (walled off from each other
/// everywhere except at H2); the flag is kept so outputs state it explicitly.
struct ExperimentConfig {
    bool h2_present = false;
    double h2_insertion_time = 0.0;  ///< s, relative; only read when h2_present
    double photon_arrival_time = 1.0;  ///< s, time the photon reaches the H2 position
    double phase_upper = 0.0;
    double phase_lower = 0.0;
    bool arms_isolated = true;

    /// H2 is in the beam when the photon gets there.
    [[nodiscard]] bool h2_in_place_at_arrival() const {
        return h2_present && h2_insertion_time < photon_arrival_time;
    }
};

struct DetectorStats {
    double p_d1 = 0.0;
    double p_d2 = 0.0;
    std::uint64_t clicks_d1 = 0;
    std::uint64_t clicks_d2 = 0;
    std::uint64_t seed = 0;
};

/// Amplitudes arriving at the detectors. Mirrors M1/M2 reflect both arms once and
/// contribute a common phase, so they are omitted.
template <typename Scalar>
ArmState<Scalar> propagate(const ExperimentConfig& config) {
    ArmState<Scalar> s = beam_splitter(photon_in_upper_port<Scalar>());
    s = arm_phase(s, Scalar(config.phase_upper), Scalar(config.phase_lower));
    if (config.h2_in_place_at_arrival()) s = beam_splitter(s);
    return s;
}

/// Detection probabilities. D1 sits on the lower output mode and D2 on the upper one,
/// so with H2 in place and equal arm phases D1 is the bright port:
/// p_d1 = cos^2((phase_upper - phase_lower) / 2).
DetectorStats run_experiment(const ExperimentConfig& config);

/// Draws n independent detections with P(D1) = stats.p_d1 from a seeded 64-bit
/// Mersenne twister. Identical (p_d1, n, seed) always give identical counts.
DetectorStats sample_clicks(const DetectorStats& stats, std::uint64_t n, std::uint64_t seed);

struct PhaseSweepRow {
    double phase_rad;
    double p_d1;
    double p_d2;
};

/// Relative phase phase_upper - phase_lower stepped over [0, 2 pi) in `points` steps.
std::vector<PhaseSweepRow> phase_sweep(ExperimentConfig config, std::size_t points);

}  // namespace qspread
