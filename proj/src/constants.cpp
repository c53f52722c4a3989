#include "qspread/constants.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "qspread/error.hpp"

namespace qspread {

namespace {

// CODATA-2018 exact and recommended values.
constexpr double kH = 6.62607015e-34;
constexpr double kC = 299792458.0;
constexpr double kE = 1.602176634e-19;
constexpr double kEpsilon0 = 8.8541878128e-12;
constexpr double kG = 6.67430e-11;

PhysicalConstants make_codata() {
    return {"CODATA-2018", kH / (2.0 * std::numbers::pi), kH, kC, kE, kEpsilon0, kG};
}

PhysicalConstants make_natural() {
    const PhysicalConstants si = make_codata();
    const double alpha = si.alpha();
    const double eps0 = 1.0 / (4.0 * std::numbers::pi);
    // e^2 / (4 pi eps0 hbar c) = e^2 with hbar = c = 4 pi eps0 = 1
    return {"natural(hbar=c=1)", 1.0, 2.0 * std::numbers::pi, 1.0, std::sqrt(alpha), eps0, 1.0};
}

PhysicalConstants make_two_digit() {
    const double hbar = 6.6e-34;
    return {"two-digit", hbar, 2.0 * std::numbers::pi * hbar, 3.0e8, 1.6e-19, kEpsilon0, 6.7e-11};
}

}  // namespace

std::string_view to_string(UnitSystem mode) {
    return mode == UnitSystem::SI ? "SI" : "natural";
}

UnitSystem parse_unit_system(std::string_view text) {
    if (text == "SI" || text == "si") return UnitSystem::SI;
    if (text == "natural" || text == "Natural") return UnitSystem::Natural;
    throw DomainError("unknown unit system '" + std::string(text) + "' (expected SI or natural)");
}

const PhysicalConstants& PhysicalConstants::codata2018() {
    static const PhysicalConstants value = make_codata();
    return value;
}

const PhysicalConstants& PhysicalConstants::natural() {
    static const PhysicalConstants value = make_natural();
    return value;
}

const PhysicalConstants& PhysicalConstants::two_digit() {
    static const PhysicalConstants value = make_two_digit();
    return value;
}

const PhysicalConstants& PhysicalConstants::for_units(UnitSystem mode) {
    return mode == UnitSystem::SI ? codata2018() : natural();
}

double PhysicalConstants::alpha() const {
    return e_charge * e_charge / (4.0 * std::numbers::pi * epsilon0 * hbar * c);
}

Particle make_particle(std::string name, double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw DomainError("particle '" + name + "' must have a finite positive mass");
    }
    return {std::move(name), mass};
}

ParticleRegistry::ParticleRegistry()
    : masses_{{"electron", 9.1093837015e-31}, {"proton", 1.67262192369e-27}, {"pen", 1.0e-2}} {}

const ParticleRegistry& ParticleRegistry::builtin() {
    static const ParticleRegistry registry;
    return registry;
}

void ParticleRegistry::define(const std::string& name, double mass_kg) {
    if (name.empty()) throw DomainError("particle name must not be empty");
    masses_[name] = make_particle(name, mass_kg).mass;
}

void ParticleRegistry::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open particle file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("malformed particle file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw Error("particle file '" + path + "' must hold a JSON object");
    for (const auto& [name, mass] : doc.items()) {
        if (!mass.is_number()) throw Error("particle '" + name + "' mass is not a number");
        define(name, mass.get<double>());
    }
}

Particle ParticleRegistry::lookup(const std::string& name) const {
    const auto it = masses_.find(name);
    if (it == masses_.end()) {
        std::string known;
        for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
        throw UnknownParticleError("unknown particle '" + name + "'; available: " + known);
    }
    return {it->first, it->second};
}

bool ParticleRegistry::contains(const std::string& name) const {
    return masses_.count(name) != 0;
}

std::vector<std::string> ParticleRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(masses_.size());
    for (const auto& entry : masses_) out.push_back(entry.first);
    return out;
}

Particle lookup_particle(const std::string& name) {
    return ParticleRegistry::builtin().lookup(name);
}

}  // namespace qspread
