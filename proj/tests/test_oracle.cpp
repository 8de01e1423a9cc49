#include <cmath>
#include <utility>
#include <vector>

#include <doctest.h>

#include "relcoll/oracle.hpp"
#include "support.hpp"

using namespace relcoll;
using relcoll::testing::config;
using relcoll::testing::PairSampler;
using relcoll::testing::rel_diff;

TEST_CASE("extrapolation")
{
    std::vector<std::pair<double, double>> flat{{0.3, 2.0}, {0.2, 2.0}, {0.1, 2.0}};
    CHECK(extrapolate(flat) == doctest::Approx(2.0).epsilon(1e-14));

    std::vector<std::pair<double, double>> quadratic;
    for (double eps : {0.08, 0.04, 0.02, 0.01}) {
        quadratic.emplace_back(eps, 1.5 - 7.0 * eps * eps);
    }
    CHECK(extrapolate(quadratic) == doctest::Approx(1.5).epsilon(1e-13));

    std::vector<std::pair<double, double>> short_series{{0.2, 1.0}, {0.1, 1.0}};
    CHECK_THROWS_AS(extrapolate(short_series), InputError);
    std::vector<std::pair<double, double>> unordered{{0.1, 1.0}, {0.2, 1.0}, {0.05, 1.0}};
    CHECK_THROWS_AS(extrapolate(unordered), InputError);
}

TEST_CASE("mollified integral vanishes with G or sigma")
{
    auto const cfg = config(2);
    auto const p = lift(make_momentum({0.3, 0.0}), cfg);
    auto const q = lift(make_momentum({-0.2, 0.1}), cfg);
    auto const inner =
        translated(ball_rule(2, 2.0, 8, 32, 40), Momentum(0.5 * (p.spatial + q.spatial)));
    CHECK(mollified_I(p, q, CrossSection::constant(), test_functions::constant(0.0), 0.01, inner, cfg)
          == 0.0);
    CHECK(mollified_I(p, q, CrossSection::constant(0.0), test_functions::constant(), 0.01, inner, cfg)
          == 0.0);
}

TEST_CASE("mollified series matches single evaluations")
{
    auto const cfg = config(2);
    auto const p = lift(make_momentum({0.3, 0.0}), cfg);
    auto const q = lift(make_momentum({-0.2, 0.1}), cfg);
    auto const inner =
        translated(ball_rule(2, 2.0, 8, 64, 200), Momentum(0.5 * (p.spatial + q.spatial)));
    std::vector<double> const eps{0.02, 0.01};
    auto const series = mollified_series(p, q, CrossSection::constant(), test_functions::constant(),
                                         eps, inner, cfg);
    REQUIRE(series.size() == 2);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        double const single = mollified_I(p, q, CrossSection::constant(), test_functions::constant(),
                                          eps[i], inner, cfg);
        CHECK(rel_diff(series[i], single) <= 1e-13);
    }
    CHECK(mollifier_mass_defect(p, q, 0.01, inner, cfg) <= 1e-6);
}

TEST_CASE("oracle reproduces both reductions in two dimensions")
{
    auto const cfg = config(2);
    auto const p = lift(make_momentum({0.3, 0.0}), cfg);
    auto const q = lift(make_momentum({-0.2, 0.1}), cfg);
    for (auto const& g : {test_functions::constant(), test_functions::juttner_weighted()}) {
        auto const report = compare_reductions(p, q, CrossSection::constant(), g, cfg);
        CHECK(report.rel_err_com <= 0.01);
        CHECK(report.rel_err_gs <= 0.01);
        CHECK(rel_diff(report.com_value, report.gs_value) <= 1e-8);
        REQUIRE(report.raw_estimates.size() == 3);
        CHECK(report.raw_estimates[0].first > report.raw_estimates[2].first);
        CHECK(report.mollifier_mass_defect <= 1e-6);
        CHECK(report.threshold_gap > 0.0);
    }
}

TEST_CASE("reduced values agree in three dimensions")
{
    auto const cfg = config(3);
    PairSampler sample(cfg, 1.0, 67);
    auto const rule = sphere_rule_split(3, 32);
    for (int i = 0; i < 5; ++i) {
        auto const p = sample.momentum();
        auto const q = sample.momentum();
        for (auto const& g : {test_functions::constant(), test_functions::juttner_weighted()}) {
            double const com = reduced_com_value(p, q, CrossSection::constant(), g, rule, cfg);
            double const gs = reduced_gs_value(p, q, CrossSection::constant(), g, rule, cfg);
            CHECK(rel_diff(com, gs) <= 1e-8);
        }
    }
}

TEST_CASE("oracle edge cases")
{
    auto const cfg4 = config(4);
    auto const p4 = lift(make_momentum({0.3, 0, 0, 0}), cfg4);
    auto const q4 = lift(zero_momentum(4), cfg4);
    CHECK_THROWS_AS(compare_reductions(p4, q4, CrossSection::constant(), test_functions::constant(), cfg4),
                    InputError);

    auto const cfg = config(2);
    auto const p = lift(make_momentum({0.3, 0.0}), cfg);
    auto const same = compare_reductions(p, p, CrossSection::constant(), test_functions::constant(), cfg);
    CHECK(same.extrapolated == 0.0);
    CHECK(same.com_value == 0.0);
    CHECK(same.gs_value == 0.0);
    CHECK(same.rel_err_com == 0.0);
}
