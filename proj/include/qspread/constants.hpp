#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qspread {

enum class UnitSystem { SI, Natural };

std::string_view to_string(UnitSystem mode);
UnitSystem parse_unit_system(std::string_view text);

/// A coherent set of physical constants. Every module reads its numbers from one of these.
struct PhysicalConstants {
    std::string id;   ///< identifier embedded in every CLI output document
    double hbar;      ///< J s
    double h;         ///< J s
    double c;         ///< m/s
    double e_charge;  ///< C
    double epsilon0;  ///< F/m
    double G;         ///< m^3 / (kg s^2)

    /// CODATA-2018 SI values.
    static const PhysicalConstants& codata2018();

    /// hbar = c = 1, 4 pi epsilon0 = 1, G = 1. The elementary charge is chosen so the
    /// fine-structure constant keeps its CODATA value.
    static const PhysicalConstants& natural();

    /// Two-significant-digit back-of-envelope set: hbar = 6.6e-34 J s, c = 3e8 m/s.
    /// Used only to show how hand estimates compare with full-precision values.
    static const PhysicalConstants& two_digit();

    static const PhysicalConstants& for_units(UnitSystem mode);

    /// Fine-structure constant e^2 / (4 pi epsilon0 hbar c).
    [[nodiscard]] double alpha() const;
};

struct Particle {
    std::string name;
    double mass;  ///< kg in SI mode, dimensionless in natural mode
};

/// Builds a particle after checking mass > 0.
Particle make_particle(std::string name, double mass);

/// Named particle masses. Built-in entries are electron, proton and pen (0.01 kg);
/// extra entries may be added before the registry is shared, after which it is read-only.
class ParticleRegistry {
public:
    ParticleRegistry();

    static const ParticleRegistry& builtin();

    /// Adds or replaces an entry. Mass in kg, must be > 0.
    void define(const std::string& name, double mass_kg);

    /// Reads a JSON object {"name": mass_kg, ...} and defines each entry.
    void load_json(const std::string& path);

    [[nodiscard]] Particle lookup(const std::string& name) const;
    [[nodiscard]] bool contains(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> names() const;

private:
    std::map<std::string, double> masses_;
};

/// Shorthand for ParticleRegistry::builtin().lookup(name).
Particle lookup_particle(const std::string& name);

}  // namespace qspread
