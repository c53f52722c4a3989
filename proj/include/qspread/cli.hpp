#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qspread/constants.hpp"

namespace qspread::cli {

/// Bad command line or config file. Exit status 2.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& message, std::string usage)
        : std::runtime_error(message), usage_(std::move(usage)) {}
    [[nodiscard]] const std::string& usage() const { return usage_; }

private:
    std::string usage_;
};

/// --help was given; carries the help text. Exit status 0.
class HelpRequested : public std::runtime_error {
public:
    explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::string subcommand;  ///< interfere | disperse | bounds | boxcount
    UnitSystem unit_mode = UnitSystem::SI;
    OutputFormat output_format = OutputFormat::Json;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path;
    std::optional<std::string> particles_file;
    /// Subcommand parameters keyed by flag name (without dashes), defaults filled in.
    nlohmann::json parameters = nlohmann::json::object();

    /// Everything above as one JSON object; embedded in every output document.
    [[nodiscard]] nlohmann::json resolved() const;
};

/// Parses argv (without the program name). A `--config FILE` flat JSON object supplies
/// values for the same keys as the flags; flags win over the file.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs the subcommand and writes its document to `out` (or to config.out_path).
/// Returns 0 on success, 1 on computation errors, 2 on usage errors.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit-status mapping; what main() calls.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qspread::cli
