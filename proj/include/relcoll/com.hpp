#pragma once

#include <utility>

#include "relcoll/cross_section.hpp"
#include "relcoll/kinematics.hpp"
#include "relcoll/lorentz.hpp"

namespace relcoll {

/// Outgoing pair of an elastic collision.
struct CollisionPair {
    FourMomentum p_post;
    FourMomentum q_post;
};

/// Everything the centre-of-momentum parameterisation produces at one omega.
struct ComGeometry {
    Momentum k;          ///< spatial part of Lambda (p - q); |k| = rho
    double cos_theta;    ///< k.omega / |k| (1 when rho = 0)
    FourMomentum p_post;
    FourMomentum q_post;
    double moller;
};

/// k^i = Lambda^i_mu (p^mu - q^mu). Throws ContractViolation unless lambda
/// passes check_com_frame for (p, q).
Momentum k_vector(SpacetimeMatrix const& lambda, FourMomentum const& p, FourMomentum const& q,
                  PhysicsConfig const& cfg);

/// Closed form of k for the boost returned by boost_to_com.
Momentum k_vector_boost(FourMomentum const& p, FourMomentum const& q, PhysicsConfig const& cfg);

/// Post-collisional momenta for any Lorentz map lambda into the COM frame:
///   p'^mu = L^{mu 0} sqrt(s)/2 - L^{mu j} omega_j rho/2
///   q'^mu = L^{mu 0} sqrt(s)/2 + L^{mu j} omega_j rho/2
/// with L^{mu kappa} = -g^{mu lambda} Lambda^kappa_lambda. Energies come from
/// the mu = 0 row, not from re-lifting the spatial parts.
CollisionPair post_collision_com(SpacetimeMatrix const& lambda, FourMomentum const& p,
                                 FourMomentum const& q, Momentum const& omega,
                                 PhysicsConfig const& cfg);

/// Boost closed form of post_collision_com. When |p+q| <= tol_algebra (p0+q0)
/// the (rho_b - 1) projection term is dropped.
CollisionPair post_collision_boost(FourMomentum const& p, FourMomentum const& q,
                                   Momentum const& omega, PhysicsConfig const& cfg);

/// Geometry for the boost map.
ComGeometry com_geometry(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                         PhysicsConfig const& cfg);

/// Integrand of the COM reduction, v_o sigma(rho, theta) G(p, q, p', q').
/// Returns 0 on the diagonal rho <= tol_algebra where v_o vanishes.
double com_integrand(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                     CrossSection const& sigma, TestFunction const& g, PhysicsConfig const& cfg);

namespace detail {
/// Weight w and outgoing pair such that the reduced integrand is w G(p,q,p',q').
struct ReducedPoint {
    double weight = 0.0;
    CollisionPair post;
};

/// Unchecked fast path for quadrature loops: p, q, omega already validated
/// and inv = invariants(p, q). Weight is v_o sigma(rho, k.omega/|k|).
ReducedPoint com_point(FourMomentum const& p, FourMomentum const& q,
                       CollisionInvariants const& inv, Momentum const& omega,
                       CrossSection const& sigma, PhysicsConfig const& cfg);

/// Per-pair part of com_point, computed once for a whole sphere rule.
struct ComFrame {
    CollisionInvariants inv;
    bool degenerate = true;  ///< rho <= tol_algebra
    double half_energy = 0.0;
    Momentum half_total;
    Momentum total;
    double boost = 0.0;  ///< (gamma - 1) / |p + q|^2, or 0 without a boost
    double shift = 0.0;  ///< rho / (2 sqrt(s))
    Momentum k_hat;
};

ComFrame com_frame(FourMomentum const& p, FourMomentum const& q, CollisionInvariants const& inv,
                   PhysicsConfig const& cfg);

ReducedPoint com_point(FourMomentum const& p, FourMomentum const& q, ComFrame const& frame,
                       Momentum const& omega, CrossSection const& sigma);
}  // namespace detail

}  // namespace relcoll
