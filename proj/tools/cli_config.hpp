#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "relcoll/cross_section.hpp"
#include "relcoll/kinematics.hpp"

namespace relcoll::cli {

/// Bad flags, config file or input files: exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct RunConfig {
    PhysicsConfig physics;
    CrossSection sigma = CrossSection::constant();
    int sphere_order = 0;  ///< 0: per-command default
    int radial_order = 48;
    std::optional<double> ball_radius;  ///< empty: 8c + |p|
    std::uint64_t seed = 12345;
    Format format = Format::json;
    std::string out;  ///< empty: stdout
};

/// Values given on the command line; unset fields leave the config alone.
struct Overrides {
    std::optional<int> dimension;
    std::optional<double> light_speed;
    std::optional<double> tol_algebra;
    std::optional<double> tol_quadrature;
    std::optional<std::string> sigma_model;
    std::optional<double> sigma_c;
    std::optional<double> sigma_a;
    std::optional<double> sigma_b;
    std::optional<int> sphere_order;
    std::optional<int> radial_order;
    std::optional<std::string> ball_radius;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<std::string> out;
};

/// Keys: dimension, c, tol_algebra, tol_quadrature, sigma {model, C, a, b},
/// sphere_order, radial_order, ball_radius (number or "auto"), seed,
/// format, out. Unknown keys are rejected.
void apply_file(RunConfig& cfg, nlohmann::json const& doc);
void apply_overrides(RunConfig& cfg, Overrides const& flags);

/// defaults < file < flags, then validate.
RunConfig resolve(std::optional<std::string> const& config_path, Overrides const& flags);

/// Throws ConfigError for anything a module would reject.
void validate(RunConfig const& cfg);

nlohmann::json to_json(RunConfig const& cfg);

/// Comma-separated components; must have exactly `dimension` entries.
Momentum parse_vector(std::string const& text, int dimension, char const* what);

}  // namespace relcoll::cli
