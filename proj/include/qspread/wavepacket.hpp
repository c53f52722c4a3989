#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qspread/constants.hpp"

// Width convention used throughout: a packet of width parameter w has amplitude
// psi(x) ~ exp(-(x - x0)^2 / (2 w^2)) and momentum spread dk = 1/w, so that
// m * w * dv = hbar holds with equality. The rms of |psi|^2 is w / sqrt(2).

namespace qspread {

/// hbar * dt / (m * w0^2), the only combination the free spreading depends on.
template <typename Scalar>
Scalar spreading_ratio(Scalar hbar, Scalar mass, Scalar width0, Scalar dt) {
    return hbar * dt / (mass * width0 * width0);
}

/// w(t) / w0 = sqrt(1 + u^2).
template <typename Scalar>
Scalar width_growth(Scalar u) {
    using std::hypot;
    return hypot(Scalar(1), u);
}

/// w(t) / w0 - 1, without cancellation for small u.
template <typename Scalar>
Scalar width_excess(Scalar u) {
    return u * u / (width_growth(u) + Scalar(1));
}

struct GaussianPacket {
    Particle particle;
    double width0;          ///< amplitude-width parameter at t0
    double center_x = 0.0;  ///< x0
    double center_k = 0.0;  ///< k0, 1/m
    double t0 = 0.0;
};

/// Validates width0 > 0 and returns the packet.
GaussianPacket make_packet(Particle particle, double width0, double center_x = 0.0,
                           double center_k = 0.0, double t0 = 0.0);

/// Uniform periodic grid, x_j = x_min + j * dx for j in [0, n_points).
struct GridSpec {
    double x_min;
    double x_max;
    std::size_t n_points;

    [[nodiscard]] double dx() const { return (x_max - x_min) / static_cast<double>(n_points); }
    [[nodiscard]] double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }
    [[nodiscard]] double half_extent() const { return 0.5 * (x_max - x_min); }

    /// Throws GridError unless x_max > x_min and n_points is a power of two >= 16.
    void validate() const;

    [[nodiscard]] Eigen::VectorXd positions() const;

    /// Conjugate wavenumbers in FFT order: 0, dk, ..., -dk.
    [[nodiscard]] Eigen::VectorXd wavenumbers() const;
};

/// Symmetric grid of half-extent `half_extent` about `center`.
GridSpec centered_grid(double center, double half_extent, std::size_t n_points);

struct SampledWaveFunction {
    GridSpec grid;
    Eigen::VectorXcd amplitudes;
    double time = 0.0;

    /// Riemann sum of |psi|^2 dx.
    [[nodiscard]] double norm() const;
};

/// Momentum-space amplitude a(k) = exp(-(k - k0)^2 / (2 dk^2)) with dk = 1/w0. Unnormalized.
class MomentumAmplitude {
public:
    MomentumAmplitude(double center_k, double width_k) : center_k_(center_k), width_k_(width_k) {}

    [[nodiscard]] double operator()(double k) const {
        const double q = (k - center_k_) / width_k_;
        return std::exp(-0.5 * q * q);
    }

    [[nodiscard]] Eigen::VectorXd sample(const Eigen::VectorXd& ks) const {
        return ks.unaryExpr([this](double k) { return (*this)(k); });
    }

    [[nodiscard]] double center_k() const { return center_k_; }
    [[nodiscard]] double width_k() const { return width_k_; }

private:
    double center_k_;
    double width_k_;
};

MomentumAmplitude build_momentum_packet(const GaussianPacket& packet);

/// w0 * sqrt(1 + (hbar dt / (m w0^2))^2), dt = t - t0. Throws DomainError for t < t0.
double analytic_width(const GaussianPacket& packet, double t, const PhysicalConstants& pc);

/// Spread contributed by the velocity uncertainty alone: hbar dt / (m w0).
double velocity_spread_width(const GaussianPacket& packet, double t, const PhysicalConstants& pc);

/// Center of the packet at time t (moves at hbar k0 / m).
double packet_center(const GaussianPacket& packet, double t, const PhysicalConstants& pc);

/// Throws GridError unless the grid holds +-8 analytic widths around the moving
/// center, dx <= w0/16, and the spectrum |k - k0| <= 8/w0 lies below Nyquist.
void require_grid_fits(const GaussianPacket& packet, double t, const GridSpec& grid,
                       const PhysicalConstants& pc);

/// Smallest power-of-two grid that satisfies require_grid_fits up to t_max.
GridSpec auto_grid(const GaussianPacket& packet, double t_max, const PhysicalConstants& pc,
                   std::size_t min_points = 16);

/// Exact initial state (pi w0^2)^(-1/4) exp(-(x-x0)^2/(2 w0^2)) exp(i k0 (x-x0)) on the grid.
SampledWaveFunction initial_wave_function(const GaussianPacket& packet, const GridSpec& grid);

/// psi(x, t) = N sum_k a(k) exp(i k (x - x0) - i hbar k^2 dt / (2m)) dk, summed by inverse FFT.
/// N is the continuum normalization, so the sampled norm is a genuine accuracy check.
SampledWaveFunction evolve_spectral(const GaussianPacket& packet, double t, const GridSpec& grid,
                                    const PhysicalConstants& pc);

/// psi(x, t) = sum_j K(x - x'_j, dt) psi(x'_j, t0) dx with the free propagator
/// K(d, dt) = sqrt(m / (2 pi i hbar dt)) exp(i m d^2 / (2 hbar dt)).
/// Direct O(n^2) summation; source points whose initial amplitude is below 1e-18 of
/// the peak are skipped. Requires t > t0 and sqrt(hbar dt / m) >= 3 dx.
SampledWaveFunction evolve_kernel(const GaussianPacket& packet, double t, const GridSpec& grid,
                                  const PhysicalConstants& pc);

/// Throws ResolutionError when the kernel chirp is not resolved by the grid.
void require_kernel_resolved(const GaussianPacket& packet, double t, const GridSpec& grid,
                             const PhysicalConstants& pc);

/// <x> of |psi|^2.
double measured_center(const SampledWaveFunction& wf);

/// sqrt(2) times the rms deviation of |psi|^2, i.e. the amplitude-width parameter.
/// Throws DomainError when the norm differs from 1 by more than 1e-6.
double measured_width(const SampledWaveFunction& wf);

/// (w(t0 + dt) - w0) / dt. Throws DomainError for dt <= 0.
double dispersion_speed(const GaussianPacket& packet, double dt, const PhysicalConstants& pc);

/// Large-dt limit hbar / (m w0).
double asymptotic_dispersion_speed(const GaussianPacket& packet, const PhysicalConstants& pc);

struct WidthReport {
    double t;
    double width_analytic;
    double width_spectral;
    std::optional<double> width_kernel;
    double v_disp;  ///< 0 at t = t0 (limit of dispersion_speed)
    double v_disp_asymptotic;
};

struct WidthReportOptions {
    bool spectral = true;
    bool kernel = false;
};

/// Widths by every requested route at each time; times must be >= t0.
std::vector<WidthReport> width_reports(const GaussianPacket& packet, const std::vector<double>& times,
                                       const GridSpec& grid, const PhysicalConstants& pc,
                                       WidthReportOptions options = {});

struct SpreadRow {
    double t;
    double width_analytic;
    double width_spectral;
    /// Straight rays x0(t) + j * velocity_spread_width(t) / rays for j = -rays..rays.
    std::vector<double> rays;
};

/// Fig.-style data of a spreading packet: widths and fanned-out straight rays.
/// t_samples must be non-empty, ascending and start at the packet's t0.
std::vector<SpreadRow> emit_spread_series(const GaussianPacket& packet, const std::vector<double>& t_samples,
                                          std::size_t rays, const PhysicalConstants& pc);

}  // namespace qspread
