#include "qspread/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "qspread/bounds.hpp"
#include "qspread/boxstates.hpp"
#include "qspread/error.hpp"
#include "qspread/interferometer.hpp"
#include "qspread/version.hpp"
#include "qspread/wavepacket.hpp"

namespace qspread::cli {

using nlohmann::json;

namespace {

enum class Kind { Flag, Number, Integer, Text, Vec3 };

struct ParamSpec {
    const char* key;
    Kind kind;
    const char* help;
};

const std::vector<ParamSpec>& global_params() {
    static const std::vector<ParamSpec> specs = {
        {"units", Kind::Text, "unit system: SI (default) or natural (hbar = c = 1)"},
        {"format", Kind::Text, "output format: json (default) or csv"},
        {"seed", Kind::Integer, "64-bit seed for Monte Carlo sampling"},
        {"out", Kind::Text, "write the output document to this path instead of stdout"},
        {"particles", Kind::Text, "JSON file {name: mass_kg} extending the particle registry"},
    };
    return specs;
}

const std::map<std::string, std::vector<ParamSpec>>& subcommand_params() {
    static const std::map<std::string, std::vector<ParamSpec>> specs = {
        {"interfere",
         {{"h2", Kind::Flag, "insert the second half-silvered mirror H2"},
          {"phase", Kind::Number, "relative arm phase (upper - lower), radians"},
          {"insertion-frac", Kind::Number, "H2 insertion time as a fraction of the photon arrival time"},
          {"arrival", Kind::Number, "photon arrival time at H2, seconds"},
          {"samples", Kind::Integer, "number of Monte Carlo detections"},
          {"sweep", Kind::Integer, "points in the CSV phase sweep"}}},
        {"disperse",
         {{"particle", Kind::Text, "registry particle name"},
          {"mass", Kind::Number, "particle mass (kg, or dimensionless in natural units)"},
          {"width0", Kind::Number, "initial amplitude-width parameter"},
          {"t-max", Kind::Number, "final time"},
          {"t-steps", Kind::Integer, "number of time steps after t0"},
          {"t0", Kind::Number, "packet start time"},
          {"x0", Kind::Number, "packet center"},
          {"k0", Kind::Number, "packet center wavenumber"},
          {"routes", Kind::Text, "comma list of analytic,spectral,kernel"},
          {"n-points", Kind::Integer, "minimum grid points (rounded up to a power of two)"},
          {"rays", Kind::Integer, "straight rays per side for the spreading plot"},
          {"rays-out", Kind::Text, "CSV path for ray positions (t, ray_index, x)"}}},
        {"bounds",
         {{"particle", Kind::Text, "registry particle name (default: every registry entry)"},
          {"mass", Kind::Number, "particle mass instead of a registry name"},
          {"width", Kind::Number, "requested localization width"},
          {"hydrogen", Kind::Integer, "principal quantum number for the hydrogen check"}}},
        {"boxcount",
         {{"side", Kind::Number, "box side L"},
          {"p-lo", Kind::Vec3, "region lower corner X,Y,Z"},
          {"p-hi", Kind::Vec3, "region upper corner X,Y,Z"},
          {"cells", Kind::Flag, "read p-lo/p-hi in units of h/L"},
          {"cap", Kind::Integer, "maximum lattice points to enumerate"}}},
    };
    return specs;
}

std::string usage_text() {
    return "usage: qspread [--units SI|natural] [--format json|csv] [--out PATH] [--config FILE]\n"
           "               [--particles FILE] [--seed S] <subcommand> [options]\n"
           "subcommands:\n"
           "  interfere [--h2] [--phase RAD] [--insertion-frac F] [--samples N] [--seed S]\n"
           "  disperse  --particle NAME|--mass KG --width0 M --t-max S [--t-steps N]\n"
           "            [--routes analytic,spectral,kernel] [--rays N --rays-out PATH]\n"
           "  bounds    [--particle NAME|--mass KG] [--width M] [--hydrogen N]\n"
           "  boxcount  --side M --p-lo X,Y,Z --p-hi X,Y,Z [--cells]\n";
}

[[noreturn]] void usage_error(const std::string& message) {
    throw UsageError(message, usage_text());
}

double parse_number(const std::string& key, std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        usage_error("malformed number for --" + key + ": '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        usage_error("malformed non-negative integer for --" + key + ": '" + std::string(text) + "'");
    }
    return value;
}

json parse_vec3(const std::string& key, std::string_view text) {
    json out = json::array();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_number(key, text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != 3) usage_error("--" + key + " needs three comma-separated numbers");
    return out;
}

json convert_text(const ParamSpec& spec, const std::string& text) {
    switch (spec.kind) {
        case Kind::Flag:
            if (text == "true" || text == "1") return true;
            if (text == "false" || text == "0") return false;
            usage_error("malformed boolean for --" + std::string(spec.key) + ": '" + text + "'");
        case Kind::Number: return parse_number(spec.key, text);
        case Kind::Integer: return parse_unsigned(spec.key, text);
        case Kind::Text: return text;
        case Kind::Vec3: return parse_vec3(spec.key, text);
    }
    return nullptr;
}

json convert_config_value(const ParamSpec& spec, const json& value) {
    if (value.is_string()) return convert_text(spec, value.get<std::string>());
    const std::string key = spec.key;
    switch (spec.kind) {
        case Kind::Flag:
            if (value.is_boolean()) return value;
            break;
        case Kind::Number:
            if (value.is_number()) return value.get<double>();
            break;
        case Kind::Integer:
            if (value.is_number_unsigned()) return value;
            if (value.is_number_integer() && value.get<std::int64_t>() >= 0) return value.get<std::uint64_t>();
            break;
        case Kind::Text:
            break;
        case Kind::Vec3:
            if (value.is_array() && value.size() == 3 &&
                std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); })) {
                json out = json::array();
                for (const auto& v : value) out.push_back(v.get<double>());
                return out;
            }
            break;
    }
    usage_error("config key '" + key + "' has a value of the wrong type (" + std::string(value.type_name()) + ")");
}

const ParamSpec* find_spec(const std::vector<ParamSpec>& specs, const std::string& key) {
    for (const auto& s : specs) {
        if (key == s.key) return &s;
    }
    return nullptr;
}

json read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) usage_error("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        usage_error("malformed config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) usage_error("config file '" + path + "' must hold a flat JSON object");
    return doc;
}

void require(const json& params, const std::string& key, const std::string& subcommand) {
    if (!params.contains(key)) usage_error(subcommand + ": missing required parameter --" + key);
}

void set_default(json& params, const std::string& key, json value) {
    if (!params.contains(key)) params[key] = std::move(value);
}

void resolve_defaults(RunConfig& config) {
    json& p = config.parameters;
    const std::string& sub = config.subcommand;
    if (sub == "interfere") {
        set_default(p, "h2", false);
        set_default(p, "phase", 0.0);
        set_default(p, "insertion-frac", 0.0);
        set_default(p, "arrival", 1.0);
        set_default(p, "samples", 10000);
        set_default(p, "sweep", 64);
        if (!config.seed) config.seed = 1;
    } else if (sub == "disperse") {
        if (!p.contains("particle") && !p.contains("mass")) usage_error("disperse: need --particle or --mass");
        require(p, "width0", sub);
        require(p, "t-max", sub);
        set_default(p, "t-steps", 10);
        set_default(p, "t0", 0.0);
        set_default(p, "x0", 0.0);
        set_default(p, "k0", 0.0);
        set_default(p, "routes", "analytic,spectral");
        set_default(p, "n-points", 16);
        set_default(p, "rays", 0);
    } else if (sub == "boxcount") {
        require(p, "side", sub);
        require(p, "p-lo", sub);
        require(p, "p-hi", sub);
        set_default(p, "cells", false);
        set_default(p, "cap", kDefaultLatticeCap);
    }
    if (config.unit_mode == UnitSystem::Natural && p.contains("particle")) {
        usage_error(sub + ": registry particles carry SI masses; use --mass with --units natural");
    }
}

void apply_global(RunConfig& config, const std::string& key, const json& value) {
    if (key == "units") {
        try {
            config.unit_mode = parse_unit_system(value.get<std::string>());
        } catch (const DomainError& e) {
            usage_error(e.what());
        }
    } else if (key == "format") {
        const auto f = value.get<std::string>();
        if (f == "json") config.output_format = OutputFormat::Json;
        else if (f == "csv") config.output_format = OutputFormat::Csv;
        else usage_error("unknown output format '" + f + "' (expected json or csv)");
    } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
        config.out_path = value.get<std::string>();
    } else if (key == "particles") {
        config.particles_file = value.get<std::string>();
    }
}

// ---------------------------------------------------------------------------
// output helpers

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json header(const RunConfig& config, const PhysicalConstants& pc) {
    return {{"tool", "qspread"}, {"version", kVersion}, {"constants", pc.id}, {"config", config.resolved()}};
}

void csv_header(std::ostream& os, const RunConfig& config, const PhysicalConstants& pc) {
    os << "# qspread " << kVersion << " constants=" << pc.id << '\n';
    os << "# config " << config.resolved().dump() << '\n';
}

bool natural(const RunConfig& c) { return c.unit_mode == UnitSystem::Natural; }

std::string col(const RunConfig& c, const std::string& base, const std::string& si_suffix) {
    return natural(c) ? base : base + "_" + si_suffix;
}

ParticleRegistry load_registry(const RunConfig& config) {
    ParticleRegistry registry = ParticleRegistry::builtin();
    if (config.particles_file) registry.load_json(*config.particles_file);
    return registry;
}

Particle particle_from(const json& p, const ParticleRegistry& registry) {
    if (p.contains("mass")) return make_particle("custom", p["mass"].get<double>());
    return registry.lookup(p["particle"].get<std::string>());
}

// ---------------------------------------------------------------------------
// subcommands

void run_interfere(const RunConfig& config, std::ostream& os) {
    const json& p = config.parameters;
    const PhysicalConstants& pc = PhysicalConstants::for_units(config.unit_mode);
    ExperimentConfig exp;
    exp.h2_present = p["h2"].get<bool>();
    exp.photon_arrival_time = p["arrival"].get<double>();
    exp.h2_insertion_time = p["insertion-frac"].get<double>() * exp.photon_arrival_time;
    exp.phase_upper = p["phase"].get<double>();
    exp.phase_lower = 0.0;

    if (config.output_format == OutputFormat::Csv) {
        csv_header(os, config, pc);
        os << "phase_rad,p_d1,p_d2\n";
        for (const auto& row : phase_sweep(exp, p["sweep"].get<std::size_t>())) {
            os << num(row.phase_rad) << ',' << num(row.p_d1) << ',' << num(row.p_d2) << '\n';
        }
        return;
    }
    DetectorStats stats = run_experiment(exp);
    const auto samples = p["samples"].get<std::uint64_t>();
    json result = {{"p_d1", stats.p_d1}, {"p_d2", stats.p_d2}, {"h2_in_place", exp.h2_in_place_at_arrival()},
                   {"arms_isolated", exp.arms_isolated}, {"seed", *config.seed}, {"samples", samples}};
    if (samples > 0) {
        stats = sample_clicks(stats, samples, *config.seed);
        result["clicks_d1"] = stats.clicks_d1;
        result["clicks_d2"] = stats.clicks_d2;
    }
    json doc = header(config, pc);
    doc["result"] = result;
    os << doc.dump(2) << '\n';
}

std::vector<std::string> split_routes(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item != "analytic" && item != "spectral" && item != "kernel") {
            usage_error("disperse: unknown route '" + item + "' (expected analytic, spectral, kernel)");
        }
        out.push_back(item);
    }
    return out;
}

void run_disperse(const RunConfig& config, std::ostream& os) {
    const json& p = config.parameters;
    const PhysicalConstants& pc = PhysicalConstants::for_units(config.unit_mode);
    const ParticleRegistry registry = load_registry(config);
    const GaussianPacket packet = make_packet(particle_from(p, registry), p["width0"].get<double>(),
                                              p["x0"].get<double>(), p["k0"].get<double>(), p["t0"].get<double>());
    const double t_max = p["t-max"].get<double>();
    const auto steps = p["t-steps"].get<std::size_t>();
    if (!(t_max > packet.t0)) throw DomainError("t-max must be later than t0");
    if (steps == 0) throw DomainError("t-steps must be at least 1");

    const auto routes = split_routes(p["routes"].get<std::string>());
    const auto has = [&](const char* r) { return std::find(routes.begin(), routes.end(), r) != routes.end(); };
    WidthReportOptions options{has("spectral"), has("kernel")};

    std::vector<double> times;
    for (std::size_t i = 0; i <= steps; ++i) {
        times.push_back(packet.t0 + (t_max - packet.t0) * static_cast<double>(i) / static_cast<double>(steps));
    }
    times.back() = t_max;

    const GridSpec grid = auto_grid(packet, t_max, pc, p["n-points"].get<std::size_t>());
    const auto reports = width_reports(packet, times, grid, pc, options);

    const auto rays = p["rays"].get<std::size_t>();
    std::vector<SpreadRow> spread;
    if (rays > 0) spread = emit_spread_series(packet, times, rays, pc);

    if (p.contains("rays-out")) {
        if (rays == 0) usage_error("disperse: --rays-out needs --rays N with N >= 1");
        std::ofstream ray_file(p["rays-out"].get<std::string>());
        if (!ray_file) throw Error("cannot write ray file '" + p["rays-out"].get<std::string>() + "'");
        csv_header(ray_file, config, pc);
        ray_file << col(config, "t", "s") << ",ray_index," << col(config, "x", "m") << '\n';
        for (const auto& row : spread) {
            const auto fan = static_cast<long>(rays);
            for (long j = -fan; j <= fan; ++j) {
                ray_file << num(row.t) << ',' << j << ',' << num(row.rays[static_cast<std::size_t>(j + fan)]) << '\n';
            }
        }
    }

    if (config.output_format == OutputFormat::Csv) {
        csv_header(os, config, pc);
        os << col(config, "t", "s") << ',' << col(config, "width_analytic", "m");
        if (options.spectral) os << ',' << col(config, "width_spectral", "m");
        if (options.kernel) os << ',' << col(config, "width_kernel", "m");
        os << ',' << col(config, "v_disp", "mps") << '\n';
        for (const auto& r : reports) {
            os << num(r.t) << ',' << num(r.width_analytic);
            if (options.spectral) os << ',' << num(r.width_spectral);
            if (options.kernel) os << ',' << num(*r.width_kernel);
            os << ',' << num(r.v_disp) << '\n';
        }
        return;
    }

    json rows = json::array();
    for (const auto& r : reports) {
        json row = {{"t", r.t}, {"width_analytic", r.width_analytic}, {"v_disp", r.v_disp}};
        if (options.spectral) row["width_spectral"] = r.width_spectral;
        if (r.width_kernel) row["width_kernel"] = *r.width_kernel;
        rows.push_back(row);
    }
    json doc = header(config, pc);
    doc["result"] = {{"particle", packet.particle.name},
                     {"mass", packet.particle.mass},
                     {"grid", {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_points", grid.n_points}}},
                     {"v_disp_asymptotic", asymptotic_dispersion_speed(packet, pc)},
                     {"rows", rows}};
    if (rays > 0) {
        json ray_rows = json::array();
        for (const auto& row : spread) ray_rows.push_back({{"t", row.t}, {"x", row.rays}});
        doc["result"]["rays"] = ray_rows;
    }
    os << doc.dump(2) << '\n';
}

void run_bounds(const RunConfig& config, std::ostream& os) {
    const json& p = config.parameters;
    const PhysicalConstants& pc = PhysicalConstants::for_units(config.unit_mode);
    const ParticleRegistry registry = load_registry(config);

    std::vector<Particle> particles;
    if (p.contains("particle") || p.contains("mass")) {
        particles.push_back(particle_from(p, registry));
    } else if (config.unit_mode == UnitSystem::Natural) {
        usage_error("bounds: natural units need --mass");
    } else {
        for (const auto& name : registry.names()) particles.push_back(registry.lookup(name));
    }
    const bool si = config.unit_mode == UnitSystem::SI;

    json entries = json::array();
    for (const auto& particle : particles) {
        json e = {{"name", particle.name},
                  {"mass", particle.mass},
                  {"compton", compton_wavelength(particle, pc)},
                  {"black_hole_floor", black_hole_floor(particle.mass, pc)}};
        if (si) e["compton_two_digit_constants"] = compton_wavelength(particle, PhysicalConstants::two_digit());
        if (p.contains("width")) {
            const BoundReport r = check_localization(particle, p["width"].get<double>(), pc);
            e["localization"] = {{"requested_width", r.requested_width},
                                 {"admissible", r.admissible},
                                 {"implied_asymptotic_speed", r.implied_asymptotic_speed},
                                 {"speed_over_c", r.speed_ratio}};
        }
        entries.push_back(e);
    }

    std::optional<HydrogenReport> hydrogen;
    if (p.contains("hydrogen")) {
        const auto n = p["hydrogen"].get<std::uint64_t>();
        if (n < 1 || n > 1'000'000) throw DomainError("hydrogen level must be in [1, 1e6]");
        const Particle electron = si ? registry.lookup("electron") : particles.front();
        hydrogen = hydrogen_report(static_cast<int>(n), electron, pc);
    }

    if (config.output_format == OutputFormat::Csv) {
        csv_header(os, config, pc);
        os << "name," << col(config, "mass", "kg") << ',' << col(config, "compton", "m");
        if (si) os << ",compton_two_digit_m";
        if (p.contains("width")) os << ',' << col(config, "width", "m") << ",admissible," << col(config, "implied_speed", "mps");
        os << '\n';
        for (const auto& e : entries) {
            os << e["name"].get<std::string>() << ',' << num(e["mass"]) << ',' << num(e["compton"]);
            if (si) os << ',' << num(e["compton_two_digit_constants"]);
            if (p.contains("width")) {
                const json& l = e["localization"];
                os << ',' << num(l["requested_width"]) << ',' << (l["admissible"].get<bool>() ? "true" : "false")
                   << ',' << num(l["implied_asymptotic_speed"]);
            }
            os << '\n';
        }
        return;
    }

    json doc = header(config, pc);
    doc["result"] = {{"particles", entries}};
    if (hydrogen) {
        doc["result"]["hydrogen"] = {{"n", hydrogen->n},
                                     {"bohr_radius", hydrogen->bohr_radius_n},
                                     {"compton_electron", hydrogen->compton_electron},
                                     {"alpha", hydrogen->alpha},
                                     {"forms", hydrogen->forms}};
    }
    os << doc.dump(2) << '\n';
}

void run_boxcount(const RunConfig& config, std::ostream& os) {
    const json& p = config.parameters;
    const PhysicalConstants& pc = PhysicalConstants::for_units(config.unit_mode);
    const BoxSpec box = make_box(p["side"].get<double>());
    const double unit = p["cells"].get<bool>() ? min_momentum_uncertainty(box, pc) : 1.0;
    MomentumRegion region;
    for (int a = 0; a < 3; ++a) {
        region.p_lo(a) = p["p-lo"][static_cast<std::size_t>(a)].get<double>() * unit;
        region.p_hi(a) = p["p-hi"][static_cast<std::size_t>(a)].get<double>() * unit;
    }
    const double continuum = count_states_continuum(box, region, pc);
    const std::uint64_t lattice = count_states_lattice(box, region, pc, p["cap"].get<std::uint64_t>());
    const json ratio = continuum > 0.0 ? json(static_cast<double>(lattice) / continuum) : json(nullptr);

    if (config.output_format == OutputFormat::Csv) {
        csv_header(os, config, pc);
        os << "continuum,lattice,ratio\n"
           << num(continuum) << ',' << lattice << ',' << (ratio.is_null() ? "nan" : num(ratio.get<double>())) << '\n';
        return;
    }
    json doc = header(config, pc);
    doc["result"] = {{"continuum", continuum},
                     {"lattice", lattice},
                     {"ratio", ratio},
                     {"min_momentum_uncertainty", min_momentum_uncertainty(box, pc)}};
    os << doc.dump(2) << '\n';
}

}  // namespace

json RunConfig::resolved() const {
    json out = {{"subcommand", subcommand},
                {"units", std::string(to_string(unit_mode))},
                {"format", output_format == OutputFormat::Json ? "json" : "csv"},
                {"parameters", parameters}};
    if (seed) out["seed"] = *seed;
    if (particles_file) out["particles"] = *particles_file;
    return out;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Numerical delayed-choice, wave-packet dispersion and localization-bound tool", "qspread"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> given;

    std::string config_path;
    app.add_option("--config", config_path, "flat JSON object of flag values");
    for (const auto& spec : global_params()) {
        given[spec.key] = app.add_option(std::string("--") + spec.key, text[spec.key], spec.help);
    }

    std::map<std::string, std::map<std::string, CLI::Option*>> sub_given;
    for (const auto& [name, specs] : subcommand_params()) {
        CLI::App* sub = app.add_subcommand(name);
        for (const auto& spec : specs) {
            const std::string id = name + "/" + spec.key;
            const std::string flag = std::string("--") + spec.key;
            sub_given[name][spec.key] = spec.kind == Kind::Flag ? sub->add_flag(flag, flags[id], spec.help)
                                                                : sub->add_option(flag, text[id], spec.help);
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested(std::string("qspread ") + kVersion);
    } catch (const CLI::ParseError& e) {
        usage_error(e.what());
    }

    RunConfig config;
    config.subcommand = app.get_subcommands().front()->get_name();
    const auto& specs = subcommand_params().at(config.subcommand);

    std::set<std::string> from_file;
    if (!config_path.empty()) {
        const json file_values = read_config_file(config_path);
        for (const auto& [key, value] : file_values.items()) {
            if (const ParamSpec* g = find_spec(global_params(), key)) {
                apply_global(config, key, convert_config_value(*g, value));
            } else if (const ParamSpec* s = find_spec(specs, key)) {
                config.parameters[key] = convert_config_value(*s, value);
                from_file.insert(key);
            } else {
                usage_error("unknown key '" + key + "' in config file for subcommand " + config.subcommand);
            }
        }
    }

    for (const auto& spec : global_params()) {
        if (given[spec.key]->count() > 0) apply_global(config, spec.key, convert_text(spec, text[spec.key]));
    }
    std::set<std::string> from_flags;
    for (const auto& spec : specs) {
        if (sub_given[config.subcommand][spec.key]->count() == 0) continue;
        const std::string id = config.subcommand + "/" + spec.key;
        config.parameters[spec.key] = spec.kind == Kind::Flag ? json(flags[id]) : convert_text(spec, text[id]);
        from_flags.insert(spec.key);
    }

    // --particle and --mass name the same thing; a flag displaces a file value.
    if (from_flags.count("particle") && from_flags.count("mass")) {
        usage_error(config.subcommand + ": --particle and --mass are mutually exclusive");
    }
    if (from_flags.count("particle")) config.parameters.erase("mass");
    if (from_flags.count("mass")) config.parameters.erase("particle");
    if (config.parameters.contains("particle") && config.parameters.contains("mass")) {
        usage_error(config.subcommand + ": config gives both particle and mass");
    }

    resolve_defaults(config);
    return config;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::ofstream file;
    if (config.out_path) {
        file.open(*config.out_path);
        if (!file) {
            err << "error: cannot open output file '" << *config.out_path << "'\n";
            return 1;
        }
    }
    std::ostream& os = config.out_path ? static_cast<std::ostream&>(file) : out;
    try {
        if (config.subcommand == "interfere") run_interfere(config, os);
        else if (config.subcommand == "disperse") run_disperse(config, os);
        else if (config.subcommand == "bounds") run_bounds(config, os);
        else if (config.subcommand == "boxcount") run_boxcount(config, os);
        else usage_error("unknown subcommand '" + config.subcommand + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n' << e.usage();
        return 2;
    } catch (const Error& e) {
        err << "error: " << config.subcommand << ": " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << config.subcommand << ": bad parameter value: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.what() << '\n';
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n' << e.usage();
        return 2;
    }
    return execute(config, out, err);
}

}  // namespace qspread::cli
