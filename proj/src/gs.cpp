#include "relcoll/gs.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace relcoll {

namespace {

struct GsScalars {
    double energy;      // p0 + q0
    double along;       // omega.(p + q)
    double transverse;  // omega.(p0 q - q0 p)
    double d1;
    double d2;
};

GsScalars gs_scalars(FourMomentum const& p, FourMomentum const& q, Momentum const& omega)
{
    GsScalars g{};
    g.energy = p.energy + q.energy;
    g.along = omega.dot(p.spatial + q.spatial);
    // p0 q - q0 p = p0 (q - p) + (p0 - q0) p keeps digits when p ~ q
    g.transverse = p.energy * omega.dot(q.spatial - p.spatial)
                   + (p.energy - q.energy) * omega.dot(p.spatial);
    g.d1 = (g.energy - g.along) * (g.energy + g.along);
    g.d2 = g.energy * g.transverse;
    return g;
}

GsKernels kernels_from(GsScalars const& g, CollisionInvariants const& inv,
                       PhysicsConfig const& cfg)
{
    int const n = cfg.dimension;
    double const c = cfg.light_speed;
    double const abs_d2 = std::abs(g.d2);

    GsKernels k;
    // (p0+q0)^2 p0 q0 |omega.(p/p0 - q/q0)| = (p0+q0) |D2|
    k.b = c * g.energy * abs_d2 / (g.d1 * g.d1);
    if (inv.rho <= cfg.tol_algebra) {
        k.a = 0.0;
        k.bn = (n == 3) ? k.b : 0.0;
        return k;
    }
    k.a = 4.0 * abs_d2 / (g.d1 * inv.rho);
    if (n == 3) {
        k.bn = k.b;
    } else if (n == 2) {
        // B / A with |D2| cancelled
        k.bn = c * g.energy * inv.rho / (4.0 * g.d1);
    } else {
        k.bn = k.b * std::pow(k.a, n - 3);
    }
    return k;
}

double gs_cosine_from(GsScalars const& g, CollisionInvariants const& inv)
{
    double const cosine =
        1.0 - 8.0 * g.transverse * g.transverse / (inv.rho * inv.rho * g.d1);
    return std::clamp(cosine, -1.0, 1.0);
}

CollisionPair gs_pair(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                      GsScalars const& g, double* displacement = nullptr,
                      double* transfer = nullptr)
{
    double const a = 2.0 * g.d2 / g.d1;
    double const n0 = 2.0 * g.along * g.transverse / g.d1;
    if (displacement != nullptr) {
        *displacement = a;
    }
    if (transfer != nullptr) {
        *transfer = n0;
    }
    return {{p.energy + n0, p.spatial + a * omega}, {q.energy - n0, q.spatial - a * omega}};
}

void check_inputs(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                  PhysicsConfig const& cfg)
{
    detail::require_unit(omega, cfg);
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
}

}  // namespace

QuadraticCoeffs quadratic_coeffs(FourMomentum const& p, FourMomentum const& q,
                                 Momentum const& omega, PhysicsConfig const& cfg)
{
    check_inputs(p, q, omega, cfg);
    auto const g = gs_scalars(p, q, omega);
    return {g.d1, g.d2};
}

GsGeometry post_collision_gs(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                             PhysicsConfig const& cfg)
{
    check_inputs(p, q, omega, cfg);
    auto const inv = invariants(p, q, cfg);
    auto const g = gs_scalars(p, q, omega);

    GsGeometry geo;
    geo.d1 = g.d1;
    geo.d2 = g.d2;
    auto const pair = gs_pair(p, q, omega, g, &geo.a, &geo.n0);
    geo.p_post = pair.p_post;
    geo.q_post = pair.q_post;
    if (inv.rho > cfg.tol_algebra) {
        geo.cos_theta = gs_cosine_from(g, inv);
    }
    auto const k = kernels_from(g, inv, cfg);
    geo.kernel_b = k.b;
    geo.kernel_a = k.a;
    geo.kernel_bn = k.bn;
    return geo;
}

GsKernels kernels(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                  PhysicsConfig const& cfg)
{
    check_inputs(p, q, omega, cfg);
    return kernels_from(gs_scalars(p, q, omega), invariants(p, q, cfg), cfg);
}

double gs_cosine(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                 PhysicsConfig const& cfg)
{
    check_inputs(p, q, omega, cfg);
    auto const inv = invariants(p, q, cfg);
    if (inv.rho <= cfg.tol_algebra) {
        throw DegenerateAngleError("gs_cosine: angle undefined for rho = 0 (p = q)");
    }
    return gs_cosine_from(gs_scalars(p, q, omega), inv);
}

namespace detail {

ReducedPoint gs_point(FourMomentum const& p, FourMomentum const& q,
                      CollisionInvariants const& inv, Momentum const& omega,
                      CrossSection const& sigma, PhysicsConfig const& cfg)
{
    auto const g = gs_scalars(p, q, omega);
    auto const pair = gs_pair(p, q, omega, g);
    if (inv.rho <= cfg.tol_algebra) {
        return {0.0, pair};
    }
    auto const k = kernels_from(g, inv, cfg);
    if (k.bn == 0.0) {
        return {0.0, pair};
    }
    double const sig = eval_sigma(sigma, inv.rho, gs_cosine_from(g, inv));
    return {inv.s * sig * k.bn / (p.energy * q.energy), pair};
}

}  // namespace detail

double gs_integrand(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                    CrossSection const& sigma, TestFunction const& g, PhysicsConfig const& cfg)
{
    check_inputs(p, q, omega, cfg);
    auto const inv = invariants(p, q, cfg);
    auto const point = detail::gs_point(p, q, inv, omega, sigma, cfg);
    if (point.weight == 0.0) {
        return 0.0;
    }
    return point.weight * g(p, q, point.post.p_post, point.post.q_post);
}

double jacobian_prepost(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                        PhysicsConfig const& cfg)
{
    auto const geo = post_collision_gs(p, q, omega, cfg);
    return geo.p_post.energy * geo.q_post.energy / (p.energy * q.energy);
}

double jacobian_prepost_fd(Momentum const& p, Momentum const& q, Momentum const& omega,
                           PhysicsConfig const& cfg)
{
    int const n = cfg.dimension;
    detail::require_unit(omega, cfg);
    detail::require_dimension(p, n, "p");
    detail::require_dimension(q, n, "q");

    using Vec = Eigen::VectorXd;
    auto map = [&](Vec const& x) {
        auto const geo =
            post_collision_gs(lift(x.head(n), cfg), lift(x.tail(n), cfg), omega, cfg);
        Vec y(2 * n);
        y.head(n) = geo.p_post.spatial;
        y.tail(n) = geo.q_post.spatial;
        return y;
    };

    Vec x(2 * n);
    x.head(n) = p;
    x.tail(n) = q;
    Eigen::MatrixXd jac(2 * n, 2 * n);
    for (int j = 0; j < 2 * n; ++j) {
        double const h = 1e-5 * std::max(1.0, std::abs(x(j)));
        Vec plus = x;
        Vec minus = x;
        plus(j) += h;
        minus(j) -= h;
        jac.col(j) = (map(plus) - map(minus)) / (plus(j) - minus(j));
    }
    return std::abs(jac.determinant());
}

Momentum kink_axis(FourMomentum const& p, FourMomentum const& q)
{
    return p.energy * q.spatial - q.energy * p.spatial;
}

}  // namespace relcoll
