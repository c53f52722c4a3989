#include "qspread/wavepacket.hpp"

#include <algorithm>
#include <limits>
#include <bit>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "qspread/error.hpp"

namespace qspread {

namespace {

constexpr double kPi = std::numbers::pi;
// Packet must fit within this many widths of the grid edge.
constexpr double kGridWidths = 8.0;
constexpr double kNormTolerance = 1e-6;
constexpr std::size_t kMaxAutoPoints = std::size_t{1} << 24;

void require_forward(const GaussianPacket& packet, double t) {
    if (!(t >= packet.t0)) {
        throw DomainError("time " + std::to_string(t) + " precedes packet start " + std::to_string(packet.t0) +
                          "; backward evolution is not supported");
    }
}

double ratio_at(const GaussianPacket& packet, double dt, const PhysicalConstants& pc) {
    return spreading_ratio(pc.hbar, packet.particle.mass, packet.width0, dt);
}

}  // namespace

GaussianPacket make_packet(Particle particle, double width0, double center_x, double center_k, double t0) {
    if (!(particle.mass > 0.0)) throw DomainError("packet mass must be positive");
    if (!(width0 > 0.0) || !std::isfinite(width0)) throw DomainError("packet width0 must be positive");
    return {std::move(particle), width0, center_x, center_k, t0};
}

void GridSpec::validate() const {
    if (!(x_max > x_min)) throw GridError("grid needs x_max > x_min");
    if (n_points < 16 || !std::has_single_bit(n_points)) {
        throw GridError("grid n_points must be a power of two >= 16 (got " + std::to_string(n_points) + ")");
    }
}

Eigen::VectorXd GridSpec::positions() const {
    Eigen::VectorXd xs(static_cast<Eigen::Index>(n_points));
    for (std::size_t j = 0; j < n_points; ++j) xs(static_cast<Eigen::Index>(j)) = x(j);
    return xs;
}

Eigen::VectorXd GridSpec::wavenumbers() const {
    const auto n = static_cast<Eigen::Index>(n_points);
    const double dk = 2.0 * kPi / (x_max - x_min);
    Eigen::VectorXd ks(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        ks(m) = dk * static_cast<double>(m < n / 2 ? m : m - n);
    }
    return ks;
}

GridSpec centered_grid(double center, double half_extent, std::size_t n_points) {
    GridSpec grid{center - half_extent, center + half_extent, n_points};
    grid.validate();
    return grid;
}

double SampledWaveFunction::norm() const {
    return amplitudes.squaredNorm() * grid.dx();
}

MomentumAmplitude build_momentum_packet(const GaussianPacket& packet) {
    return {packet.center_k, 1.0 / packet.width0};
}

double analytic_width(const GaussianPacket& packet, double t, const PhysicalConstants& pc) {
    require_forward(packet, t);
    return packet.width0 * width_growth(ratio_at(packet, t - packet.t0, pc));
}

double velocity_spread_width(const GaussianPacket& packet, double t, const PhysicalConstants& pc) {
    require_forward(packet, t);
    return pc.hbar * (t - packet.t0) / (packet.particle.mass * packet.width0);
}

double packet_center(const GaussianPacket& packet, double t, const PhysicalConstants& pc) {
    return packet.center_x + pc.hbar * packet.center_k * (t - packet.t0) / packet.particle.mass;
}

void require_grid_fits(const GaussianPacket& packet, double t, const GridSpec& grid, const PhysicalConstants& pc) {
    grid.validate();
    const double width = analytic_width(packet, t, pc);
    const double center = packet_center(packet, t, pc);
    const double reach = kGridWidths * width;
    const double slack = 1e-12 * (grid.x_max - grid.x_min);
    if (center - reach < grid.x_min - slack || center + reach > grid.x_max + slack) {
        throw GridError("grid too small: 8 x width (" + std::to_string(reach) +
                        ") exceeds the grid half-extent around the packet center");
    }
    if (grid.dx() > packet.width0 / 16.0 * (1.0 + 1e-12)) {
        throw GridError("grid too coarse: dx must not exceed width0/16");
    }
    const double k_reach = std::abs(packet.center_k) + kGridWidths / packet.width0;
    if (k_reach > kPi / grid.dx()) {
        throw GridError("grid too coarse: packet spectrum extends past the Nyquist wavenumber");
    }
}

GridSpec auto_grid(const GaussianPacket& packet, double t_max, const PhysicalConstants& pc, std::size_t min_points) {
    const double width = analytic_width(packet, t_max, pc);
    const double c0 = packet.center_x;
    const double c1 = packet_center(packet, t_max, pc);
    const double lo = std::min(c0, c1) - kGridWidths * width;
    const double hi = std::max(c0, c1) + kGridWidths * width;
    const double extent = hi - lo;
    const double by_width = 16.0 * extent / packet.width0;
    const double by_nyquist = extent * (std::abs(packet.center_k) + kGridWidths / packet.width0) / kPi;
    const double needed = std::max({by_width, by_nyquist, static_cast<double>(std::max<std::size_t>(min_points, 16))});
    if (!(needed <= static_cast<double>(kMaxAutoPoints))) {
        throw GridError("packet needs more than 2^24 grid points; reduce t_max or the spreading");
    }
    const std::size_t n = std::bit_ceil(static_cast<std::size_t>(std::ceil(needed)));
    GridSpec grid{lo, hi, n};
    grid.validate();
    return grid;
}

SampledWaveFunction initial_wave_function(const GaussianPacket& packet, const GridSpec& grid) {
    grid.validate();
    const double w = packet.width0;
    const double amp = std::pow(kPi * w * w, -0.25);
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(grid.n_points));
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double d = grid.x(j) - packet.center_x;
        psi(static_cast<Eigen::Index>(j)) = std::polar(amp * std::exp(-0.5 * d * d / (w * w)), packet.center_k * d);
    }
    return {grid, std::move(psi), packet.t0};
}

SampledWaveFunction evolve_spectral(const GaussianPacket& packet, double t, const GridSpec& grid,
                                    const PhysicalConstants& pc) {
    require_grid_fits(packet, t, grid, pc);
    const double dt = t - packet.t0;
    const double mass = packet.particle.mass;
    const double w = packet.width0;
    const auto n = static_cast<Eigen::Index>(grid.n_points);

    const Eigen::VectorXd ks = grid.wavenumbers();
    const Eigen::VectorXd a = build_momentum_packet(packet).sample(ks);
    const double shift = grid.x_min - packet.center_x;

    Eigen::VectorXcd spectrum(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const double k = ks(m);
        const double omega = pc.hbar * k * k / (2.0 * mass);
        spectrum(m) = std::polar(a(m), k * shift - omega * dt);
    }

    // Continuum normalization: N * integral a(k) e^{ik(x-x0)} dk = (pi w^2)^(-1/4) exp(...)
    const double norm_const = w / std::sqrt(2.0 * kPi) * std::pow(kPi * w * w, -0.25);
    const double dk = 2.0 * kPi / (grid.x_max - grid.x_min);

    Eigen::FFT<double> fft;
    Eigen::VectorXcd psi(n);
    fft.inv(psi, spectrum);  // (1/n) sum_m c_m e^{+2 pi i m j / n}
    psi *= norm_const * dk * static_cast<double>(n);
    return {grid, std::move(psi), t};
}

void require_kernel_resolved(const GaussianPacket& packet, double t, const GridSpec& grid,
                             const PhysicalConstants& pc) {
    require_forward(packet, t);
    const double dt = t - packet.t0;
    if (!(dt > 0.0)) throw DomainError("kernel propagation needs t > t0");
    const double scale = std::sqrt(pc.hbar * dt / packet.particle.mass);
    if (scale < 3.0 * grid.dx()) {
        throw ResolutionError("kernel unresolved: sqrt(hbar dt / m) = " + std::to_string(scale) +
                              " is below 3 dx = " + std::to_string(3.0 * grid.dx()));
    }
}

SampledWaveFunction evolve_kernel(const GaussianPacket& packet, double t, const GridSpec& grid,
                                  const PhysicalConstants& pc) {
    require_kernel_resolved(packet, t, grid, pc);
    require_grid_fits(packet, t, grid, pc);

    const double dt = t - packet.t0;
    const double mass = packet.particle.mass;
    const double dx = grid.dx();
    const auto n = static_cast<Eigen::Index>(grid.n_points);

    const Eigen::VectorXcd source = initial_wave_function(packet, grid).amplitudes;

    // Contiguous support of the source above 1e-18 of its peak.
    const Eigen::VectorXd magnitude = source.cwiseAbs();
    const double cutoff = 1e-18 * magnitude.maxCoeff();
    Eigen::Index lo = 0;
    Eigen::Index hi = n - 1;
    while (lo < hi && magnitude(lo) <= cutoff) ++lo;
    while (hi > lo && magnitude(hi) <= cutoff) --hi;
    const Eigen::Index len = hi - lo + 1;
    const Eigen::VectorXcd source_rev = source.segment(lo, len).reverse();

    // kernel(q) = K((q - (n - 1)) dx) for q in [0, 2n - 1)
    const std::complex<double> prefactor =
        std::sqrt(mass / (2.0 * kPi * pc.hbar * dt)) * std::polar(1.0, -0.25 * kPi) * dx;
    const double chirp = mass * dx * dx / (2.0 * pc.hbar * dt);
    Eigen::VectorXcd kernel(2 * n - 1);
    for (Eigen::Index q = 0; q < 2 * n - 1; ++q) {
        const auto d = static_cast<double>(q - (n - 1));
        kernel(q) = prefactor * std::polar(1.0, chirp * d * d);
    }

    Eigen::VectorXcd psi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // sum_j K(x_i - x_j) psi_j, with j = hi - r
        psi(i) = (kernel.segment(i - hi + n - 1, len).array() * source_rev.array()).sum();
    }
    return {grid, std::move(psi), t};
}

double measured_center(const SampledWaveFunction& wf) {
    const Eigen::VectorXd density = wf.amplitudes.cwiseAbs2();
    const Eigen::VectorXd xs = wf.grid.positions();
    return xs.dot(density) / density.sum();
}

double measured_width(const SampledWaveFunction& wf) {
    const double norm = wf.norm();
    if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
        throw DomainError("wave function is not normalized (norm = " + std::to_string(norm) + ")");
    }
    const Eigen::VectorXd density = wf.amplitudes.cwiseAbs2();
    const Eigen::VectorXd xs = wf.grid.positions();
    const double total = density.sum();
    const double mean = xs.dot(density) / total;
    const double variance = (xs.array() - mean).square().matrix().dot(density) / total;
    return std::sqrt(2.0 * variance);
}

double dispersion_speed(const GaussianPacket& packet, double dt, const PhysicalConstants& pc) {
    if (!(dt > 0.0)) throw DomainError("dispersion speed needs dt > 0");
    return packet.width0 * width_excess(ratio_at(packet, dt, pc)) / dt;
}

double asymptotic_dispersion_speed(const GaussianPacket& packet, const PhysicalConstants& pc) {
    return pc.hbar / (packet.particle.mass * packet.width0);
}

std::vector<WidthReport> width_reports(const GaussianPacket& packet, const std::vector<double>& times,
                                       const GridSpec& grid, const PhysicalConstants& pc,
                                       WidthReportOptions options) {
    std::vector<WidthReport> out;
    out.reserve(times.size());
    const double v_inf = asymptotic_dispersion_speed(packet, pc);
    for (const double t : times) {
        WidthReport r{};
        r.t = t;
        r.width_analytic = analytic_width(packet, t, pc);
        r.width_spectral = options.spectral ? measured_width(evolve_spectral(packet, t, grid, pc))
                                            : std::numeric_limits<double>::quiet_NaN();
        if (options.kernel) {
            r.width_kernel = t > packet.t0 ? measured_width(evolve_kernel(packet, t, grid, pc))
                                           : measured_width(initial_wave_function(packet, grid));
        }
        r.v_disp = t > packet.t0 ? dispersion_speed(packet, t - packet.t0, pc) : 0.0;
        r.v_disp_asymptotic = v_inf;
        out.push_back(r);
    }
    return out;
}

std::vector<SpreadRow> emit_spread_series(const GaussianPacket& packet, const std::vector<double>& t_samples,
                                          std::size_t rays, const PhysicalConstants& pc) {
    if (t_samples.empty()) throw DomainError("spread series needs at least one time sample");
    if (t_samples.front() != packet.t0) throw DomainError("spread series must start at the packet's t0");
    if (!std::is_sorted(t_samples.begin(), t_samples.end())) {
        throw DomainError("spread series time samples must be ascending");
    }
    const GridSpec grid = auto_grid(packet, t_samples.back(), pc);
    std::vector<SpreadRow> rows;
    rows.reserve(t_samples.size());
    const auto fan = static_cast<long>(rays);
    for (const double t : t_samples) {
        SpreadRow row;
        row.t = t;
        row.width_analytic = analytic_width(packet, t, pc);
        row.width_spectral = measured_width(evolve_spectral(packet, t, grid, pc));
        const double center = packet_center(packet, t, pc);
        const double step = rays == 0 ? 0.0 : velocity_spread_width(packet, t, pc) / static_cast<double>(rays);
        for (long j = -fan; j <= fan; ++j) row.rays.push_back(center + static_cast<double>(j) * step);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qspread
