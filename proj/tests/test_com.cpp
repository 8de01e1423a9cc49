#include <cmath>

#include <doctest.h>

#include "relcoll/com.hpp"
#include "relcoll/lorentz.hpp"
#include "support.hpp"

using namespace relcoll;
using relcoll::testing::config;
using relcoll::testing::max_abs;
using relcoll::testing::PairSampler;

namespace {

struct WorkedPoint {
    PhysicsConfig cfg = config(3);
    FourMomentum p = lift(make_momentum({1, 0, 0}), cfg);
    FourMomentum q = lift(zero_momentum(3), cfg);
};

SpacetimeMatrix rotated_boost(Eigen::MatrixXd const& rotation, FourMomentum const& p,
                              FourMomentum const& q, PhysicsConfig const& cfg)
{
    int const n = cfg.dimension;
    SpacetimeMatrix spatial = SpacetimeMatrix::identity(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            spatial(i + 1, j + 1) = rotation(i, j);
        }
    }
    return spatial * boost_to_com(p, q, cfg);
}

}  // namespace

TEST_CASE("k at the worked point")
{
    WorkedPoint w;
    auto const lambda = boost_to_com(w.p, w.q, w.cfg);
    Momentum const k = k_vector(lambda, w.p, w.q, w.cfg);
    CHECK(k(0) == doctest::Approx(0.9101797).epsilon(1e-7));
    CHECK(std::abs(k(1)) < 1e-15);
    CHECK(std::abs(k(2)) < 1e-15);
    CHECK((k - k_vector_boost(w.p, w.q, w.cfg)).norm() < 1e-14);
    CHECK_THROWS_AS(k_vector(SpacetimeMatrix::identity(3), w.p, w.q, w.cfg), ContractViolation);
}

TEST_CASE("|k| = rho and the closed form matches the matrix form")
{
    for (int n : {2, 3, 4}) {
        PairSampler sample(config(n), 10.0, 3);
        for (int i = 0; i < 500; ++i) {
            auto const p = sample.momentum();
            auto const q = sample.momentum();
            Momentum const k = k_vector_boost(p, q, sample.cfg);
            double const rho = invariants(p, q, sample.cfg).rho;
            CHECK(std::abs(k.norm() - rho) <= 1e-10 * std::max(1.0, rho));
            Momentum const km = k_vector(boost_to_com(p, q, sample.cfg), p, q, sample.cfg);
            CHECK((k - km).norm() <= 1e-10 * (p.energy + q.energy));
        }
    }
}

TEST_CASE("post-collision momenta at the worked point")
{
    WorkedPoint w;
    auto const omega = make_momentum({0, 1, 0});
    auto const post = post_collision_boost(w.p, w.q, omega, w.cfg);
    CHECK(post.p_post.spatial(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(post.p_post.spatial(1) == doctest::Approx(0.4550899).epsilon(1e-7));
    CHECK(std::abs(post.p_post.spatial(2)) < 1e-15);
    CHECK(post.p_post.energy == doctest::Approx(1.2071068).epsilon(1e-7));
    CHECK(post.q_post.spatial(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(post.q_post.spatial(1) == doctest::Approx(-0.4550899).epsilon(1e-7));
    // p'0 = (sqrt2 + 1) / 2
    CHECK(post.p_post.energy == doctest::Approx((std::sqrt(2.0) + 1.0) / 2.0).epsilon(1e-14));
    CHECK(post.p_post.shell_residual(1.0) < 1e-14);

    auto const generic = post_collision_com(boost_to_com(w.p, w.q, w.cfg), w.p, w.q, omega, w.cfg);
    CHECK(max_abs(generic.p_post, post.p_post) < 1e-14);
    CHECK(max_abs(generic.q_post, post.q_post) < 1e-14);
}

TEST_CASE("omega along k is the identity collision")
{
    auto const cfg = config(3);
    PairSampler sample(cfg, 10.0, 5);
    for (int i = 0; i < 300; ++i) {
        auto const p = sample.momentum();
        auto const q = sample.momentum();
        Momentum const k = k_vector_boost(p, q, cfg);
        auto const post = post_collision_boost(p, q, k / k.norm(), cfg);
        double const scale = p.energy + q.energy;
        CHECK(max_abs(post.p_post, p) <= 1e-10 * scale);
        CHECK(max_abs(post.q_post, q) <= 1e-10 * scale);
        CHECK(com_geometry(p, q, k / k.norm(), cfg).cos_theta == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("boost form conserves four-momentum and agrees with the generic map")
{
    for (double c : {0.5, 1.0, 3.0}) {
        for (int n : {2, 3, 4}) {
            PairSampler sample(config(n, c), 10.0, 13);
            for (int i = 0; i < 300; ++i) {
                auto const p = sample.momentum();
                auto const q = sample.momentum();
                Momentum const omega = sample.unit();
                auto const post = post_collision_boost(p, q, omega, sample.cfg);
                double const scale = p.energy + q.energy;

                CHECK(std::abs(post.p_post.energy + post.q_post.energy - scale) <= 1e-10 * scale);
                CHECK(((post.p_post.spatial + post.q_post.spatial) - (p.spatial + q.spatial))
                          .cwiseAbs()
                          .maxCoeff()
                      <= 1e-10 * scale);
                CHECK(post.p_post.shell_residual(c) <= 1e-10);
                CHECK(post.q_post.shell_residual(c) <= 1e-10);

                auto const inv = invariants(p, q, sample.cfg);
                auto const inv_post = invariants(post.p_post, post.q_post, sample.cfg);
                CHECK(std::abs(inv_post.s - inv.s) <= 1e-10 * inv.s);

                auto const generic =
                    post_collision_com(boost_to_com(p, q, sample.cfg), p, q, omega, sample.cfg);
                CHECK(max_abs(generic.p_post, post.p_post) <= 1e-10 * scale);
                CHECK(max_abs(generic.q_post, post.q_post) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("a rotated COM map reparameterises the sphere")
{
    auto const cfg = config(3);
    PairSampler sample(cfg, 5.0, 17);
    for (int i = 0; i < 100; ++i) {
        auto const p = sample.momentum();
        auto const q = sample.momentum();
        Momentum const omega = sample.unit();
        Eigen::MatrixXd const rotation = random_rotation(sample.engine, 3);
        auto const lambda = rotated_boost(rotation, p, q, cfg);
        REQUIRE(check_com_frame(lambda, p, q, cfg));

        auto const generic = post_collision_com(lambda, p, q, omega, cfg);
        Momentum const pulled = rotation.transpose() * omega;
        auto const boosted = post_collision_boost(p, q, pulled, cfg);
        double const scale = p.energy + q.energy;
        CHECK(max_abs(generic.p_post, boosted.p_post) <= 1e-10 * scale);
        CHECK(max_abs(generic.q_post, boosted.q_post) <= 1e-10 * scale);
    }
}

TEST_CASE("antipodal omega swaps the outgoing pair")
{
    auto const cfg = config(4);
    PairSampler sample(cfg, 5.0, 19);
    for (int i = 0; i < 100; ++i) {
        auto const p = sample.momentum();
        auto const q = sample.momentum();
        Momentum const omega = sample.unit();
        auto const a = post_collision_boost(p, q, omega, cfg);
        auto const b = post_collision_boost(p, q, Momentum(-omega), cfg);
        CHECK(max_abs(a.p_post, b.q_post) <= 1e-12 * (p.energy + q.energy));
    }
}

TEST_CASE("COM cosine matches the Minkowski definition")
{
    auto const cfg = config(3);
    PairSampler sample(cfg, 10.0, 23);
    for (int i = 0; i < 300; ++i) {
        auto const p = sample.momentum();
        auto const q = sample.momentum();
        Momentum const omega = sample.unit();
        auto const geo = com_geometry(p, q, omega, cfg);
        double const reference = scattering_cosine(p, q, geo.p_post, geo.q_post, cfg);
        CHECK(std::abs(geo.cos_theta - reference) <= 1e-9);
    }
}

TEST_CASE("COM integrand")
{
    WorkedPoint w;
    auto const one = test_functions::constant();
    for (auto const& omega : {make_momentum({1, 0, 0}), make_momentum({0, 0, -1})}) {
        CHECK(com_integrand(w.p, w.q, omega, CrossSection::constant(), one, w.cfg)
              == doctest::Approx(0.3535534).epsilon(1e-7));
    }
    CHECK(com_integrand(w.p, w.p, make_momentum({1, 0, 0}), CrossSection::constant(), one, w.cfg)
          == 0.0);
    CHECK_THROWS_AS(
        com_integrand(w.p, w.q, make_momentum({1, 1, 0}), CrossSection::constant(), one, w.cfg),
        InputError);
}

TEST_CASE("unchecked fast path matches the checked integrand")
{
    auto const cfg = config(3);
    PairSampler sample(cfg, 4.0, 29);
    auto const sigma = CrossSection::power_law(1.0, 1.0, 2.0);
    auto const g = test_functions::energy_difference();
    for (int i = 0; i < 200; ++i) {
        auto const p = sample.momentum();
        auto const q = sample.momentum();
        Momentum const omega = sample.unit();
        auto const inv = invariants(p, q, cfg);
        auto const point = detail::com_point(p, q, inv, omega, sigma, cfg);
        double const fast = point.weight * g(p, q, point.post.p_post, point.post.q_post);
        double const checked = com_integrand(p, q, omega, sigma, g, cfg);
        CHECK(std::abs(fast - checked) <= 1e-14 * std::max(1.0, std::abs(checked)));
    }
}
