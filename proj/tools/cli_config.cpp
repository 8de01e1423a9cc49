#include "cli_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace relcoll::cli {

namespace {

CrossSection::Model model_from_name(std::string const& name)
{
    if (name == "constant") {
        return CrossSection::Model::constant;
    }
    if (name == "power-law" || name == "power_law") {
        return CrossSection::Model::power_law;
    }
    throw ConfigError("unknown sigma model '" + name + "' (expected constant or power-law)");
}

std::string model_name(CrossSection::Model m)
{
    return m == CrossSection::Model::constant ? "constant" : "power-law";
}

Format format_from_name(std::string const& name)
{
    if (name == "json") {
        return Format::json;
    }
    if (name == "csv") {
        return Format::csv;
    }
    throw ConfigError("unknown format '" + name + "' (expected json or csv)");
}

std::optional<double> radius_from_text(std::string const& text)
{
    if (text == "auto") {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        double const r = std::stod(text, &used);
        if (used != text.size()) {
            throw ConfigError("");
        }
        return r;
    } catch (std::exception const&) {
        throw ConfigError("ball_radius must be a number or \"auto\" (got '" + text + "')");
    }
}

template <class T>
T get(nlohmann::json const& value, char const* key)
{
    try {
        return value.get<T>();
    } catch (nlohmann::json::exception const&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

}  // namespace

void apply_file(RunConfig& cfg, nlohmann::json const& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    for (auto const& [key, value] : doc.items()) {
        if (key == "dimension") {
            cfg.physics.dimension = get<int>(value, "dimension");
        } else if (key == "c") {
            cfg.physics.light_speed = get<double>(value, "c");
        } else if (key == "tol_algebra") {
            cfg.physics.tol_algebra = get<double>(value, "tol_algebra");
        } else if (key == "tol_quadrature") {
            cfg.physics.tol_quadrature = get<double>(value, "tol_quadrature");
        } else if (key == "sigma") {
            if (!value.is_object()) {
                throw ConfigError("config key 'sigma' must be an object");
            }
            for (auto const& [skey, svalue] : value.items()) {
                if (skey == "model") {
                    cfg.sigma.model = model_from_name(get<std::string>(svalue, "sigma.model"));
                } else if (skey == "C") {
                    cfg.sigma.amplitude = get<double>(svalue, "sigma.C");
                } else if (skey == "a") {
                    cfg.sigma.rho_exponent = get<double>(svalue, "sigma.a");
                } else if (skey == "b") {
                    cfg.sigma.angular_exponent = get<double>(svalue, "sigma.b");
                } else {
                    throw ConfigError("unknown config key 'sigma." + skey + "'");
                }
            }
        } else if (key == "sphere_order") {
            cfg.sphere_order = get<int>(value, "sphere_order");
        } else if (key == "radial_order") {
            cfg.radial_order = get<int>(value, "radial_order");
        } else if (key == "ball_radius") {
            if (value.is_string()) {
                cfg.ball_radius = radius_from_text(value.get<std::string>());
            } else if (value.is_null()) {
                cfg.ball_radius.reset();
            } else {
                cfg.ball_radius = get<double>(value, "ball_radius");
            }
        } else if (key == "seed") {
            cfg.seed = get<std::uint64_t>(value, "seed");
        } else if (key == "format") {
            cfg.format = format_from_name(get<std::string>(value, "format"));
        } else if (key == "out") {
            cfg.out = get<std::string>(value, "out");
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

void apply_overrides(RunConfig& cfg, Overrides const& flags)
{
    if (flags.dimension) {
        cfg.physics.dimension = *flags.dimension;
    }
    if (flags.light_speed) {
        cfg.physics.light_speed = *flags.light_speed;
    }
    if (flags.tol_algebra) {
        cfg.physics.tol_algebra = *flags.tol_algebra;
    }
    if (flags.tol_quadrature) {
        cfg.physics.tol_quadrature = *flags.tol_quadrature;
    }
    if (flags.sigma_model) {
        cfg.sigma.model = model_from_name(*flags.sigma_model);
    }
    if (flags.sigma_c) {
        cfg.sigma.amplitude = *flags.sigma_c;
    }
    if (flags.sigma_a) {
        cfg.sigma.rho_exponent = *flags.sigma_a;
    }
    if (flags.sigma_b) {
        cfg.sigma.angular_exponent = *flags.sigma_b;
    }
    if (flags.sphere_order) {
        cfg.sphere_order = *flags.sphere_order;
    }
    if (flags.radial_order) {
        cfg.radial_order = *flags.radial_order;
    }
    if (flags.ball_radius) {
        cfg.ball_radius = radius_from_text(*flags.ball_radius);
    }
    if (flags.seed) {
        cfg.seed = *flags.seed;
    }
    if (flags.format) {
        cfg.format = format_from_name(*flags.format);
    }
    if (flags.out) {
        cfg.out = *flags.out;
    }
}

void validate(RunConfig const& cfg)
{
    try {
        cfg.physics.validate();
        if (cfg.physics.dimension > kMaxDimension) {
            throw ConfigError("dimension must satisfy n <= " + std::to_string(kMaxDimension));
        }
        cfg.sigma.validate();
    } catch (InputError const& e) {
        throw ConfigError(e.what());
    }
    if (cfg.sphere_order < 0) {
        throw ConfigError("sphere_order must be >= 1 (or 0 for the command default)");
    }
    if (cfg.radial_order < 1) {
        throw ConfigError("radial_order must be >= 1");
    }
    if (cfg.ball_radius && !(*cfg.ball_radius > 0.0 && std::isfinite(*cfg.ball_radius))) {
        throw ConfigError("ball_radius must be positive");
    }
}

RunConfig resolve(std::optional<std::string> const& config_path, Overrides const& flags)
{
    RunConfig cfg;
    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) {
            throw ConfigError("cannot open config file '" + *config_path + "'");
        }
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (nlohmann::json::exception const& e) {
            throw ConfigError("config file '" + *config_path + "' is not valid JSON: " + e.what());
        }
        apply_file(cfg, doc);
    }
    apply_overrides(cfg, flags);
    validate(cfg);
    return cfg;
}

nlohmann::json to_json(RunConfig const& cfg)
{
    nlohmann::json j;
    j["dimension"] = cfg.physics.dimension;
    j["c"] = cfg.physics.light_speed;
    j["tol_algebra"] = cfg.physics.tol_algebra;
    j["tol_quadrature"] = cfg.physics.tol_quadrature;
    j["sigma"] = {{"model", model_name(cfg.sigma.model)},
                  {"C", cfg.sigma.amplitude},
                  {"a", cfg.sigma.rho_exponent},
                  {"b", cfg.sigma.angular_exponent}};
    j["sphere_order"] = cfg.sphere_order;
    j["radial_order"] = cfg.radial_order;
    if (cfg.ball_radius) {
        j["ball_radius"] = *cfg.ball_radius;
    } else {
        j["ball_radius"] = "auto";
    }
    j["seed"] = cfg.seed;
    j["format"] = cfg.format == Format::json ? "json" : "csv";
    j["out"] = cfg.out;
    return j;
}

Momentum parse_vector(std::string const& text, int dimension, char const* what)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) {
                ++used;
            }
            if (used != item.size()) {
                throw ConfigError("");
            }
        } catch (std::exception const&) {
            throw ConfigError(std::string(what) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (static_cast<int>(values.size()) != dimension) {
        std::ostringstream os;
        os << what << " has " << values.size() << " components, expected " << dimension;
        throw ConfigError(os.str());
    }
    Momentum v(dimension);
    for (int i = 0; i < dimension; ++i) {
        v(i) = values[static_cast<std::size_t>(i)];
    }
    return v;
}

}  // namespace relcoll::cli
