#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "qst/momentum_group.hpp"
#include "qst/structure_constants.hpp"

namespace qst::cli {

enum class Format { csv, json };

std::string_view to_string(Format f);
Format parse_format(std::string_view text);

// Schema violation located by a JSON pointer ("" is the document root).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, const std::string& message);
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

struct Parameters {
    double mass = 1.0;
    std::string cutoff_grid = "1:1e4:10";
    std::string inverse_momentum_grid = "1:1e3:10";
    int grid_points = 256;
    std::string slopes = "-1:1:0.5";
    int truncation = 32;
    int samples = 10000;

    friend bool operator==(const Parameters&, const Parameters&) = default;
};

struct RunConfig {
    // A preset name or an inline tensor; parsing an inline tensor copies its deformation and
    // dimension into `deformation` and `d`.
    std::variant<Preset, StructureConstants> spacetime = Preset::kappa_minkowski;
    double deformation = 1.0;
    // Spatial dimension for kappa-Minkowski, base dimension for Moyal; rho and su2 fix it at 3.
    // Unused for inline tensors.
    int d = 3;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::string output = "-";
    Format format = Format::csv;
    std::map<std::string, double> tolerances;
    Parameters parameters;

    std::optional<Preset> preset() const;
    int group_dim() const;
    StructureConstants structure() const;
    GroupDescriptor group() const;
    double tolerance(const std::string& key, double fallback) const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Deformation key of each preset: kappa, theta, rho or lambda.
std::string_view deformation_key(Preset p);

RunConfig parse_config(std::string_view text);
std::string serialize_config(const RunConfig& cfg);

// "key=value" with a finite value.
std::pair<std::string, double> parse_tolerance_override(std::string_view text);

inline constexpr std::uint64_t default_seed = 1;

// Seed precedence: --seed, then the config, then QSTKIT_SEED, then default_seed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config_seed, const char* env);

}  // namespace qst::cli
