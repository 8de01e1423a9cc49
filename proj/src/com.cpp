#include "relcoll/com.hpp"

#include <algorithm>
#include <cmath>

namespace relcoll {

Momentum k_vector(SpacetimeMatrix const& lambda, FourMomentum const& p, FourMomentum const& q,
                  PhysicsConfig const& cfg)
{
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
    if (!check_com_frame(lambda, p, q, cfg)) {
        throw ContractViolation("k_vector: lambda does not map (p, q) to the centre-of-momentum frame");
    }
    FourVector const diff = apply(lambda, FourVector(p.components() - q.components()));
    return diff.tail(cfg.dimension);
}

Momentum k_vector_boost(FourMomentum const& p, FourMomentum const& q, PhysicsConfig const& cfg)
{
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
    Momentum const total = p.spatial + q.spatial;
    Momentum const diff = p.spatial - q.spatial;
    double const energy = p.energy + q.energy;
    double const total2 = total.squaredNorm();
    if (std::sqrt(total2) <= cfg.tol_algebra * energy) {
        return diff;
    }
    double const root_s = std::sqrt(energy * energy - total2);
    double const gamma = energy / root_s;
    return -total * ((p.energy - q.energy) / root_s) + diff
           + total * ((gamma - 1.0) * total.dot(diff) / total2);
}

CollisionPair post_collision_com(SpacetimeMatrix const& lambda, FourMomentum const& p,
                                 FourMomentum const& q, Momentum const& omega,
                                 PhysicsConfig const& cfg)
{
    detail::require_unit(omega, cfg);
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
    if (lambda.dimension() != cfg.dimension) {
        throw InputError("post_collision_com: matrix dimension mismatch");
    }
    if (!check_com_frame(lambda, p, q, cfg)) {
        throw ContractViolation(
            "post_collision_com: lambda does not map (p, q) to the centre-of-momentum frame");
    }

    int const n = cfg.dimension;
    auto const inv = invariants(p, q, cfg);
    double const half_root_s = 0.5 * std::sqrt(inv.s);
    double const half_rho = 0.5 * inv.rho;

    // L^{mu kappa} = -g^{mu mu} Lambda^kappa_mu
    auto tensor_l = [&](int mu, int kappa) {
        double const g = (mu == 0) ? -1.0 : 1.0;
        return -g * lambda(kappa, mu);
    };

    FourVector p_post(n + 1);
    FourVector q_post(n + 1);
    for (int mu = 0; mu <= n; ++mu) {
        double rotated = 0.0;
        for (int j = 0; j < n; ++j) {
            rotated += tensor_l(mu, j + 1) * omega(j);
        }
        double const centre = tensor_l(mu, 0) * half_root_s;
        p_post(mu) = centre - rotated * half_rho;
        q_post(mu) = centre + rotated * half_rho;
    }
    return {{p_post(0), p_post.tail(n)}, {q_post(0), q_post.tail(n)}};
}

namespace {

CollisionPair boost_pair(FourMomentum const& p, FourMomentum const& q,
                         CollisionInvariants const& inv, Momentum const& omega,
                         PhysicsConfig const& cfg)
{
    Momentum const total = p.spatial + q.spatial;
    double const energy = p.energy + q.energy;
    double const total2 = total.squaredNorm();
    double const root_s = std::sqrt(inv.s);
    double const along = total.dot(omega);

    Momentum direction = omega;
    if (std::sqrt(total2) > cfg.tol_algebra * energy) {
        double const gamma = energy / root_s;
        direction += total * ((gamma - 1.0) * along / total2);
    }
    Momentum const half_total = 0.5 * total;
    Momentum const offset = (0.5 * inv.rho) * direction;
    double const energy_shift = inv.rho / (2.0 * root_s) * along;

    return {{0.5 * energy + energy_shift, half_total + offset},
            {0.5 * energy - energy_shift, half_total - offset}};
}

}  // namespace

CollisionPair post_collision_boost(FourMomentum const& p, FourMomentum const& q,
                                   Momentum const& omega, PhysicsConfig const& cfg)
{
    detail::require_unit(omega, cfg);
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
    return boost_pair(p, q, invariants(p, q, cfg), omega, cfg);
}

ComGeometry com_geometry(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                         PhysicsConfig const& cfg)
{
    detail::require_unit(omega, cfg);
    auto const inv = invariants(p, q, cfg);
    auto const post = boost_pair(p, q, inv, omega, cfg);
    ComGeometry geo{k_vector_boost(p, q, cfg), 1.0, post.p_post, post.q_post, inv.moller};
    if (inv.rho > cfg.tol_algebra) {
        geo.cos_theta = std::clamp(geo.k.dot(omega) / geo.k.norm(), -1.0, 1.0);
    }
    return geo;
}

namespace detail {

ComFrame com_frame(FourMomentum const& p, FourMomentum const& q, CollisionInvariants const& inv,
                   PhysicsConfig const& cfg)
{
    ComFrame f;
    f.inv = inv;
    f.degenerate = inv.rho <= cfg.tol_algebra;
    if (f.degenerate) {
        return f;
    }
    f.total = p.spatial + q.spatial;
    double const energy = p.energy + q.energy;
    double const total2 = f.total.squaredNorm();
    double const root_s = std::sqrt(inv.s);
    if (std::sqrt(total2) > cfg.tol_algebra * energy) {
        f.boost = (energy / root_s - 1.0) / total2;
    }
    f.half_energy = 0.5 * energy;
    f.half_total = 0.5 * f.total;
    f.shift = inv.rho / (2.0 * root_s);
    Momentum const k = k_vector_boost(p, q, cfg);
    f.k_hat = k / k.norm();
    return f;
}

ReducedPoint com_point(FourMomentum const& p, FourMomentum const& q, ComFrame const& frame,
                       Momentum const& omega, CrossSection const& sigma)
{
    if (frame.degenerate) {
        return {0.0, {p, q}};
    }
    double const cos_theta = std::clamp(frame.k_hat.dot(omega), -1.0, 1.0);
    double const along = frame.total.dot(omega);
    Momentum const offset = (0.5 * frame.inv.rho) * (omega + (frame.boost * along) * frame.total);
    double const energy_shift = frame.shift * along;
    return {frame.inv.moller * eval_sigma(sigma, frame.inv.rho, cos_theta),
            {{frame.half_energy + energy_shift, frame.half_total + offset},
             {frame.half_energy - energy_shift, frame.half_total - offset}}};
}

ReducedPoint com_point(FourMomentum const& p, FourMomentum const& q,
                       CollisionInvariants const& inv, Momentum const& omega,
                       CrossSection const& sigma, PhysicsConfig const& cfg)
{
    return com_point(p, q, com_frame(p, q, inv, cfg), omega, sigma);
}

}  // namespace detail

double com_integrand(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                     CrossSection const& sigma, TestFunction const& g, PhysicsConfig const& cfg)
{
    detail::require_unit(omega, cfg);
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
    auto const inv = invariants(p, q, cfg);
    auto const point = detail::com_point(p, q, inv, omega, sigma, cfg);
    if (point.weight == 0.0) {
        return 0.0;
    }
    return point.weight * g(p, q, point.post.p_post, point.post.q_post);
}

}  // namespace relcoll
