// Acceptance suite: one line per criterion, non-zero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qspread/bounds.hpp"
#include "qspread/boxstates.hpp"
#include "qspread/interferometer.hpp"
#include "qspread/wavepacket.hpp"

using namespace qspread;

namespace {

const PhysicalConstants& nat = PhysicalConstants::natural();
const PhysicalConstants& si = PhysicalConstants::codata2018();

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* pattern, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Verdict interferometer_baseline() {
    Verdict v;
    ExperimentConfig cfg;
    DetectorStats s = run_experiment(cfg);
    v.require(std::abs(s.p_d1 - 0.5) <= 1e-12 && std::abs(s.p_d2 - 0.5) <= 1e-12, "no-H2 50/50");
    cfg.h2_present = true;
    s = run_experiment(cfg);
    v.require(std::abs(s.p_d1 - 1.0) <= 1e-12 && std::abs(s.p_d2) <= 1e-12, "H2 phase 0 -> (1, 0)");
    cfg.phase_upper = std::numbers::pi;
    s = run_experiment(cfg);
    v.require(std::abs(s.p_d1) <= 1e-12 && std::abs(s.p_d2 - 1.0) <= 1e-12, "H2 phase pi -> (0, 1)");
    v.note(fmt("phase pi gives p_d2 = %.15f", s.p_d2));
    return v;
}

Verdict delayed_insertion() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.h2_present = true;
    cfg.photon_arrival_time = 1.0;
    cfg.phase_upper = 0.4;
    cfg.h2_insertion_time = 0.0;
    const DetectorStats ref = run_experiment(cfg);
    bool identical = true;
    bool restored = true;
    for (int i = 0; i < 50; ++i) {
        cfg.h2_present = true;
        cfg.h2_insertion_time = cfg.photon_arrival_time * i / 50.0;
        const DetectorStats s = run_experiment(cfg);
        identical = identical && s.p_d1 == ref.p_d1 && s.p_d2 == ref.p_d2;
        // H2 pulled out again before the photon arrives
        cfg.h2_present = false;
        const DetectorStats r = run_experiment(cfg);
        restored = restored && std::abs(r.p_d1 - 0.5) <= 1e-12 && std::abs(r.p_d2 - 0.5) <= 1e-12;
    }
    const double elapsed = seconds_since(start);
    v.require(identical, "bit-identical probabilities over 50 insertion times");
    v.require(restored, "removal restores 50/50");
    v.require(elapsed < 1.0, "runtime < 1 s");
    v.note(fmt("%.4f s", elapsed));
    return v;
}

Verdict monte_carlo() {
    Verdict v;
    const DetectorStats half{0.5, 0.5};
    const double band = 3.0 * std::sqrt(1e5 * 0.25);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const DetectorStats s = sample_clicks(half, 100000, seed * 7919);
        worst = std::max(worst, std::abs(static_cast<double>(s.clicks_d1) - 50000.0));
        v.require(s.clicks_d1 + s.clicks_d2 == 100000, "counts sum to n");
    }
    v.require(worst <= band, "all 10 seeds within 3 sigma");
    v.note(fmt("worst |d1 - 50000| = %.0f", worst) + fmt(" (band %.1f)", band));

    // exhaustive enumeration of 2^n outcomes vs sampled frequencies
    double worst_z = 0.0;
    for (int n = 1; n <= 10; ++n) {
        std::vector<double> pmf(n + 1, 0.0);
        for (unsigned mask = 0; mask < (1u << n); ++mask) pmf[__builtin_popcount(mask)] += std::ldexp(1.0, -n);
        double var = 0.0;
        for (int k = 0; k <= n; ++k) var += (k - 0.5 * n) * (k - 0.5 * n) * pmf[k];
        v.require(std::abs(var - 0.25 * n) < 1e-12, "enumerated variance equals n/4");
        constexpr int kRuns = 4000;
        std::vector<double> freq(n + 1, 0.0);
        for (int r = 0; r < kRuns; ++r) freq[sample_clicks(half, n, 1000 * n + r).clicks_d1] += 1.0 / kRuns;
        for (int k = 0; k <= n; ++k) {
            const double sigma = std::sqrt(pmf[k] * (1 - pmf[k]) / kRuns);
            worst_z = std::max(worst_z, std::abs(freq[k] - pmf[k]) / sigma);
        }
    }
    v.require(worst_z <= 5.0, "sampled pmf within 5 sigma of enumeration for n <= 10");
    v.note(fmt("worst pmf z = %.2f", worst_z));
    return v;
}

struct RouteRun {
    double worst_spectral = 0.0;
    double worst_kernel = 0.0;
    double worst_pointwise = 0.0;
    double worst_norm_spectral = 0.0;
    double worst_norm_kernel = 0.0;
    double elapsed = 0.0;
};

const RouteRun& route_run() {
    static const RouteRun run = [] {
        RouteRun r;
        const auto start = std::chrono::steady_clock::now();
        const GaussianPacket p = make_packet(make_particle("unit", 1.0), 1.0);
        const std::vector<double> times = {0.25, 0.5, 1.0, 2.0, 4.0};
        const GridSpec grid = centered_grid(0.0, 8.0 * analytic_width(p, times.back(), nat), std::size_t{1} << 14);
        for (const double t : times) {
            const double exact = analytic_width(p, t, nat);
            const SampledWaveFunction s = evolve_spectral(p, t, grid, nat);
            const SampledWaveFunction k = evolve_kernel(p, t, grid, nat);
            r.worst_spectral = std::max(r.worst_spectral, std::abs(measured_width(s) - exact) / exact);
            r.worst_kernel = std::max(r.worst_kernel, std::abs(measured_width(k) - exact) / exact);
            r.worst_pointwise = std::max(r.worst_pointwise, (s.amplitudes - k.amplitudes).cwiseAbs().maxCoeff());
            r.worst_norm_spectral = std::max(r.worst_norm_spectral, std::abs(s.norm() - 1.0));
            r.worst_norm_kernel = std::max(r.worst_norm_kernel, std::abs(k.norm() - 1.0));
        }
        r.elapsed = seconds_since(start);
        return r;
    }();
    return run;
}

Verdict three_routes() {
    Verdict v;
    const RouteRun& r = route_run();
    v.require(r.worst_spectral <= 1e-3, "spectral width within 0.1%");
    v.require(r.worst_kernel <= 5e-3, "kernel width within 0.5%");
    v.require(r.worst_pointwise <= 1e-4, "spectral vs kernel amplitudes within 1e-4");
    v.require(r.elapsed < 10.0, "runtime < 10 s");
    v.note(fmt("spectral %.2e", r.worst_spectral) + fmt(", kernel %.2e", r.worst_kernel) +
           fmt(", pointwise %.2e", r.worst_pointwise) + fmt(", %.2f s", r.elapsed));
    return v;
}

Verdict norm_conservation() {
    Verdict v;
    const RouteRun& r = route_run();
    // drift relative to the initial state's norm
    const GaussianPacket p = make_packet(make_particle("unit", 1.0), 1.0);
    const GridSpec grid = centered_grid(0.0, 8.0 * analytic_width(p, 4.0, nat), std::size_t{1} << 14);
    const double n0 = evolve_spectral(p, 0.0, grid, nat).norm();
    v.require(std::abs(n0 - 1.0) <= 1e-9, "initial norm");
    v.require(r.worst_norm_spectral <= 1e-9, "spectral drift <= 1e-9");
    v.require(r.worst_norm_kernel <= 1e-6, "kernel drift <= 1e-6");
    v.note(fmt("spectral %.2e", r.worst_norm_spectral) + fmt(", kernel %.2e", r.worst_norm_kernel));
    return v;
}

Verdict dispersion_limits() {
    Verdict v;
    const GaussianPacket p = make_packet(make_particle("unit", 1.0), 1.0);
    const double small = dispersion_speed(p, 1e-6, nat);
    v.require(small < 1e-5, "v_disp(1e-6) < 1e-5");
    // hbar dt / (m w0^2) = 100
    const double ratio = dispersion_speed(p, 100.0, nat) / asymptotic_dispersion_speed(p, nat);
    v.require(std::abs(ratio - 1.0) <= 0.01, "asymptote within 1%");
    v.note(fmt("v(1e-6) = %.3e", small) + fmt(", v(100)/v_inf - 1 = %.4e", ratio - 1.0));
    return v;
}

Verdict compton_boundary() {
    Verdict v;
    const Particle e = lookup_particle("electron");
    const double lc = compton_wavelength(e, si);
    const double speed = asymptotic_dispersion_speed(make_packet(e, lc), si);
    v.require(std::abs(speed / si.c - 1.0) <= 1e-9, "implied speed = c at the Compton width");
    for (const double f : {1.0, 1.0 - 1e-9, 0.999, 0.5, 0.1, 1e-3}) {
        v.require(!check_localization(e, f * lc, si).admissible, "inadmissible below the Compton width");
    }
    v.require(check_localization(e, 1.001 * lc, si).admissible, "admissible just above it");

    const double proton = compton_wavelength(lookup_particle("proton"), si);
    const int exponent = static_cast<int>(std::floor(std::log10(proton)));
    v.require(exponent == -16 || exponent == -15, "proton exponent -16/-15");
    v.require(std::abs(lc / 3.86159268e-13 - 1.0) < 1e-6, "electron ~3.9e-13 m");
    const double rough = compton_wavelength(e, PhysicalConstants::two_digit());
    v.note(fmt("proton %.3e m", proton) + fmt(", electron %.4e m", lc) +
           fmt(", electron with two-digit constants %.2e m (1e-11 not reproduced)", rough));
    return v;
}

Verdict hydrogen_chain() {
    Verdict v;
    const HydrogenReport h1 = hydrogen_report(1);
    v.require(std::abs(h1.alpha - 7.297e-3) <= 1e-6, "alpha = 7.297e-3 +- 1e-6");
    v.require(std::abs(h1.bohr_radius_n / h1.compton_electron * h1.alpha - 1.0) <= 1e-6, "a1 / compton = 1 / alpha");
    bool all = true;
    for (int n = 1; n <= 1000; ++n) all = all && hydrogen_report(n).forms;
    v.require(all, "forms for n = 1..1000");
    v.note(fmt("alpha = %.9e", h1.alpha) + fmt(", a1/compton = %.6f", h1.bohr_radius_n / h1.compton_electron));
    return v;
}

Verdict pen_non_dispersion() {
    Verdict v;
    const GaussianPacket pen = make_packet(lookup_particle("pen"), 2.4e-12);
    const double t = 3e9;
    const double growth = analytic_width(pen, t, si) / pen.width0 - 1.0;
    v.require(growth <= 1e-10, "width growth over 3e9 s <= 1e-10");
    v.note(fmt("w(t)/w0 - 1 = %.6e", growth) +
           fmt(", absolute spread %.3e m", analytic_width(pen, t, si) - pen.width0) +
           fmt(", v_inf = %.3e m/s", asymptotic_dispersion_speed(pen, si)));
    return v;
}

Verdict box_counting() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const BoxSpec box = make_box(1.0);
    v.require(count_states_continuum(box, cell_region(box, 0.0, 1.0, si), si) == 1.0, "single cell counts 1.0");
    double worst = 0.0;
    for (const int k : {5, 10, 20, 40}) {
        for (const double offset : {0.0, 0.25, 0.5, 0.75}) {
            for (const double extra : {0.0, 0.5}) {
                const MomentumRegion r = cell_region(box, offset, k + extra, si);
                const double dev = std::abs(static_cast<double>(count_states_lattice(box, r, si)) /
                                            count_states_continuum(box, r, si) - 1.0);
                v.require(dev <= 3.0 / k, "lattice/continuum within 3/k at k = " + std::to_string(k));
                worst = std::max(worst, dev * k);
            }
        }
    }
    for (const double L : {1e-10, 1.0, 3.0, 1e4}) {
        v.require(std::abs(min_momentum_uncertainty(make_box(L), si) * L / si.h - 1.0) <= 1e-15, "dp_min L = h");
    }
    const double elapsed = seconds_since(start);
    v.require(elapsed < 5.0, "runtime < 5 s");
    v.note(fmt("worst k*|ratio-1| = %.3f", worst) + fmt(", %.3f s", elapsed));
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"AC1 interferometer baseline", interferometer_baseline},
        {"AC2 delayed-insertion invariance", delayed_insertion},
        {"AC3 Monte Carlo consistency", monte_carlo},
        {"AC4 dispersion three-route agreement", three_routes},
        {"AC5 norm conservation", norm_conservation},
        {"AC6 dispersion-speed limits", dispersion_limits},
        {"AC7 Compton boundary", compton_boundary},
        {"AC8 hydrogen chain", hydrogen_chain},
        {"AC9 pen non-dispersion", pen_non_dispersion},
        {"AC10 box counting", box_counting},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
        if (!v.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
