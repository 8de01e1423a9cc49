#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "cli_config.hpp"
#include "commands.hpp"

using namespace relcoll;
using namespace relcoll::cli;

namespace {

std::string write_temp(std::string const& name, std::string const& text)
{
    auto const path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("defaults")
{
    auto const cfg = resolve(std::nullopt, Overrides{});
    CHECK(cfg.physics.dimension == 3);
    CHECK(cfg.physics.light_speed == 1.0);
    CHECK(cfg.sigma.model == CrossSection::Model::constant);
    CHECK(cfg.radial_order == 48);
    CHECK_FALSE(cfg.ball_radius.has_value());
    CHECK(cfg.seed == 12345);
    CHECK(cfg.format == Format::json);
}

TEST_CASE("flags override the file, which overrides defaults")
{
    auto const path = write_temp("relcoll_precedence.json",
                                 R"({"dimension": 2, "c": 2.0, "seed": 7,
                                     "sigma": {"model": "power-law", "a": 1, "b": 0},
                                     "ball_radius": 4.5, "format": "csv"})");
    Overrides flags;
    flags.light_speed = 3.0;
    flags.ball_radius = "auto";
    auto const cfg = resolve(path, flags);
    CHECK(cfg.physics.dimension == 2);
    CHECK(cfg.physics.light_speed == 3.0);
    CHECK(cfg.seed == 7);
    CHECK(cfg.sigma.model == CrossSection::Model::power_law);
    CHECK(cfg.sigma.rho_exponent == 1.0);
    CHECK_FALSE(cfg.ball_radius.has_value());
    CHECK(cfg.format == Format::csv);

    auto const echoed = to_json(cfg);
    CHECK(echoed["c"] == 3.0);
    CHECK(echoed["ball_radius"] == "auto");
    CHECK(echoed["sigma"]["model"] == "power-law");
}

TEST_CASE("bad configuration is rejected")
{
    CHECK_THROWS_AS(resolve(write_temp("relcoll_unknown.json", R"({"dimensions": 3})"), Overrides{}),
                    ConfigError);
    CHECK_THROWS_AS(resolve(write_temp("relcoll_type.json", R"({"dimension": "three"})"), Overrides{}),
                    ConfigError);
    CHECK_THROWS_AS(resolve(write_temp("relcoll_syntax.json", "{"), Overrides{}), ConfigError);
    CHECK_THROWS_AS(resolve(std::string("/nonexistent/relcoll.json"), Overrides{}), ConfigError);

    Overrides flags;
    flags.dimension = 1;
    CHECK_THROWS_AS(resolve(std::nullopt, flags), ConfigError);
    flags = Overrides{};
    flags.light_speed = -1.0;
    CHECK_THROWS_AS(resolve(std::nullopt, flags), ConfigError);
    flags = Overrides{};
    flags.sigma_model = "hard-sphere";
    CHECK_THROWS_AS(resolve(std::nullopt, flags), ConfigError);
    flags = Overrides{};
    flags.ball_radius = "large";
    CHECK_THROWS_AS(resolve(std::nullopt, flags), ConfigError);
    flags = Overrides{};
    flags.format = "xml";
    CHECK_THROWS_AS(resolve(std::nullopt, flags), ConfigError);
}

TEST_CASE("vector parsing")
{
    Momentum const v = parse_vector("1, -2.5,3e-1", 3, "p");
    CHECK(v(0) == 1.0);
    CHECK(v(1) == -2.5);
    CHECK(v(2) == 0.3);
    CHECK_THROWS_AS(parse_vector("1,2", 3, "p"), ConfigError);
    CHECK_THROWS_AS(parse_vector("1,x,2", 3, "p"), ConfigError);
    CHECK_THROWS_AS(parse_vector("1,2,3abc", 3, "p"), ConfigError);
}

TEST_CASE("points file")
{
    auto const path = write_temp("relcoll_points.csv", "# momenta\n0.1,0.2\n\n-1,3\n");
    auto const points = read_points(path, 2);
    REQUIRE(points.size() == 2);
    CHECK(points[1](0) == -1.0);
    CHECK_THROWS(read_points(write_temp("relcoll_bad_points.csv", "1,2,3\n"), 2));
    CHECK(csv_number(std::nullopt).empty());
    CHECK(csv_number(0.1) == "0.1");
}
