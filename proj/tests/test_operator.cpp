#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "relcoll/collision_operator.hpp"
#include "support.hpp"

using namespace relcoll;
using relcoll::testing::config;
using relcoll::testing::PairSampler;
using relcoll::testing::rel_diff;

TEST_CASE("sphere integral of the Moller velocity")
{
    auto const cfg = config(3);
    auto const p = lift(make_momentum({1, 0, 0}), cfg);
    auto const q = lift(zero_momentum(3), cfg);
    auto const one = test_functions::constant();
    // the COM integrand is smooth on the sphere; the GS kernel has a kink
    // across the plane omega . (p0 q - q0 p) = 0 and needs the split rule
    CHECK(sphere_integral(Representation::com, p, q, CrossSection::constant(), one,
                          sphere_rule(3, 16), cfg)
          == doctest::Approx(4.4428829).epsilon(1e-7));
    for (auto rep : {Representation::com, Representation::gs}) {
        double const value = sphere_integral(rep, p, q, CrossSection::constant(), one,
                                             sphere_rule_split(3, 16), cfg);
        CHECK(value == doctest::Approx(4.4428829).epsilon(1e-7));
    }
    double const plain_gs = sphere_integral(Representation::gs, p, q, CrossSection::constant(), one,
                                            sphere_rule(3, 16), cfg);
    CHECK(std::abs(plain_gs - 4.4428829) > 1e-4);
    double const exact = 4.0 * std::numbers::pi / (2.0 * std::sqrt(2.0));
    CHECK(sphere_integral(Representation::gs, p, q, CrossSection::constant(), one,
                          sphere_rule_split(3, 16), cfg)
          == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("both representations give the same sphere integral")
{
    for (int n : {3, 4}) {
        auto const cfg = config(n);
        auto const rule = sphere_rule_split(n, 32);
        PairSampler sample(cfg, 2.0, 61);
        for (int i = 0; i < 5; ++i) {
            auto const p = sample.momentum();
            auto const q = sample.momentum();
            for (auto const& sigma : {CrossSection::constant(), CrossSection::power_law(1.0, 1.0, 0.0)}) {
                for (auto const& g : {test_functions::constant(), test_functions::energy_difference(),
                                      test_functions::gaussian_post()}) {
                    double const com = sphere_integral(Representation::com, p, q, sigma, g, rule, cfg);
                    double const gs = sphere_integral(Representation::gs, p, q, sigma, g, rule, cfg);
                    double const scale = sphere_integral(Representation::com, p, q, sigma,
                                                         test_functions::constant(), rule, cfg);
                    INFO("n = " << n << ", pair " << i << ": com " << com << ", gs " << gs
                                << ", scale " << scale);
                    CHECK(std::abs(com - gs) <= 1e-8 * std::max(std::abs(com), 1e-3 * scale));
                }
            }
        }
    }
}

TEST_CASE("Juttner equilibrium is annihilated pointwise")
{
    for (int n : {2, 3}) {
        auto const cfg = config(n);
        auto const f = Distribution::juttner(1.0);
        auto const sphere = sphere_rule_split(n, 8);
        for (auto rep : {Representation::com, Representation::gs}) {
            Momentum p = zero_momentum(n);
            p(0) = 0.7;
            auto const r = collision_operator(f, f, p, CrossSection::constant(), rep, sphere,
                                              default_operator_ball(p, cfg, 12, 4), cfg);
            CHECK(r.max_pointwise_imbalance <= 1e-12);
            CHECK(std::abs(r.value) <= 1e-12 * r.loss);
            CHECK(r.loss > 0.0);
        }
    }
}

TEST_CASE("gaussian bump: representations agree, serial equals parallel")
{
    auto const cfg = config(3);
    auto const f = distribution_by_name("gaussian-bump", 3);
    auto const sphere = sphere_rule_split(3, 24);
    Momentum const p = make_momentum({0.3, 0.1, -0.2});
    auto const ball = default_operator_ball(p, cfg, 10, 4);
    auto const sigma = CrossSection::constant();

    auto const com = collision_operator(f, f, p, sigma, Representation::com, sphere, ball, cfg,
                                        Execution::serial);
    auto const gs = collision_operator(f, f, p, sigma, Representation::gs, sphere, ball, cfg,
                                       Execution::serial);
    CHECK(rel_diff(com.value, gs.value) <= 1e-6);
    // the loss term does not involve the outgoing pair
    CHECK(rel_diff(com.loss, gs.loss) <= 1e-6);
    CHECK(com.value == doctest::Approx(com.gain - com.loss));

    auto const com_par = collision_operator(f, f, p, sigma, Representation::com, sphere, ball, cfg,
                                            Execution::parallel);
    CHECK(com_par.value == com.value);
    CHECK(com_par.gain == com.gain);
    CHECK(com_par.max_pointwise_imbalance == com.max_pointwise_imbalance);

    CHECK(com.sphere_order == 24);
    CHECK(com.radial_order == 10);
    CHECK(com.ball_nodes == ball.size());
    CHECK(com.ball_radius == doctest::Approx(8.0 + p.norm()));
}

TEST_CASE("operator input checks")
{
    auto const cfg = config(3);
    auto const f = Distribution::juttner(1.0);
    Momentum const p = zero_momentum(3);
    auto const ball = default_operator_ball(p, cfg, 4, 2);
    CHECK_THROWS_AS(collision_operator(f, f, p, CrossSection::constant(), Representation::com,
                                       sphere_rule(2, 4), ball, cfg),
                    InputError);
    CHECK_THROWS_AS(collision_operator(f, f, zero_momentum(2), CrossSection::constant(),
                                       Representation::com, sphere_rule(3, 4), ball, cfg),
                    InputError);

    auto const broken = Distribution::custom([](FourMomentum const& x) {
        return x.spatial.norm() > 3.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    });
    CHECK_THROWS_AS(collision_operator(broken, broken, p, CrossSection::constant(),
                                       Representation::gs, sphere_rule(3, 4), ball, cfg),
                    EvaluationError);
}

TEST_CASE("conservation moments have the right shape")
{
    auto const cfg = config(2);
    auto const f = distribution_by_name("bump", 2);
    auto const grid = ball_rule(2, 5.0, 4, 6);
    auto const m = conservation_moments(f, f, CrossSection::constant(), Representation::com, grid,
                                        sphere_rule_split(2, 8), cfg);
    REQUIRE(m.values.size() == 4);
    REQUIRE(m.loss_scale.size() == 4);
    for (double s : m.loss_scale) {
        CHECK(s > 0.0);
    }
    // the bump is symmetric in p_2, so that moment cancels by symmetry
    CHECK(std::abs(m.values[2]) <= 1e-12 * m.loss_scale[2]);
    CHECK(std::isfinite(m.max_relative()));
}

TEST_CASE("distributions")
{
    auto const cfg = config(3);
    auto const p = lift(make_momentum({0.5, 0, 0}), cfg);
    CHECK(Distribution::juttner(2.0).evaluate(p) == doctest::Approx(std::exp(-2.0 * p.energy)));
    auto const bump = distribution_by_name("gaussian-bump", 3);
    CHECK(bump.evaluate(p) == doctest::Approx(1.0));
    CHECK(bump.scaled(3.0).evaluate(p) == doctest::Approx(3.0));
    CHECK(Distribution::gaussian_bump(Momentum(), 2.0).evaluate(lift(make_momentum({2, 0, 0}), cfg))
          == doctest::Approx(std::exp(-0.5)));
    CHECK_THROWS_AS(distribution_by_name("maxwell", 3), InputError);
    CHECK_THROWS_AS(Distribution::juttner(-1.0).validate(3), InputError);
    CHECK_THROWS_AS(Distribution::gaussian_bump(make_momentum({1, 0}), 1.0).validate(3), InputError);

    CHECK(representation_from_name("com") == Representation::com);
    CHECK(representation_from_name("gs") == Representation::gs);
    CHECK(to_string(Representation::gs) == "gs");
    CHECK_THROWS_AS(representation_from_name("lab"), InputError);
}
