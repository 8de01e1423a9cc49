#pragma once

#include <optional>

#include "relcoll/com.hpp"
#include "relcoll/cross_section.hpp"
#include "relcoll/kinematics.hpp"

namespace relcoll {

/// Coefficients of the energy-constraint polynomial 4 D1 r^2 - 8 D2 r along
/// p' = p + r omega, q' = q - r omega.
struct QuadraticCoeffs {
    double d1;  ///< (p0+q0)^2 - (omega.(p+q))^2, always positive
    double d2;  ///< (p0+q0) omega.(p0 q - q0 p)
};

QuadraticCoeffs quadratic_coeffs(FourMomentum const& p, FourMomentum const& q,
                                 Momentum const& omega, PhysicsConfig const& cfg);

/// Glassey-Strauss collision kernels. `bn` = B A^(n-3).
struct GsKernels {
    double b = 0.0;
    double a = 0.0;
    double bn = 0.0;
};

/// Everything the Glassey-Strauss parameterisation produces at one omega.
struct GsGeometry {
    double d1 = 0.0;
    double d2 = 0.0;
    double a = 0.0;   ///< displacement: p' = p + a omega, q' = q - a omega
    double n0 = 0.0;  ///< energy transfer: p'^0 = p^0 + n0
    FourMomentum p_post;
    FourMomentum q_post;
    std::optional<double> cos_theta;  ///< empty when rho <= tol_algebra
    double kernel_b = 0.0;
    double kernel_a = 0.0;
    double kernel_bn = 0.0;
};

/// Post-collisional momenta and energies from the non-trivial root
/// r = 2 D2 / D1; energies are p0 + N0 and q0 - N0.
GsGeometry post_collision_gs(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                             PhysicsConfig const& cfg);

/// p0 q - q0 p. The GS kernels depend on omega through |omega . axis|, so
/// split sphere rules are oriented along it.
Momentum kink_axis(FourMomentum const& p, FourMomentum const& q);

/// B, A and B_n.
///
/// B_n = B A^(n-3). For n = 2 it is taken as c (p0+q0) rho / (4 D1), the
/// same product with |D2| cancelled, which stays finite where A vanishes.
/// On the diagonal rho <= tol_algebra, A and (for n != 3) B_n are set to 0.
/// For n = 3, B_n is B exactly.
GsKernels kernels(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                  PhysicsConfig const& cfg);

/// cos(theta) = 1 - (8/rho^2) {omega.(p0 q - q0 p)}^2 / D1.
/// Throws DegenerateAngleError when rho <= tol_algebra.
double gs_cosine(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                 PhysicsConfig const& cfg);

/// s sigma(rho, theta) B_n / (p0 q0) G(p, q, p', q').
double gs_integrand(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                    CrossSection const& sigma, TestFunction const& g, PhysicsConfig const& cfg);

/// |d(p', q') / d(p, q)| at fixed omega, closed form p'0 q'0 / (p0 q0).
double jacobian_prepost(FourMomentum const& p, FourMomentum const& q, Momentum const& omega,
                        PhysicsConfig const& cfg);

/// Same determinant from central finite differences of the map
/// (p, q) -> (p', q') with step 1e-5 max(1, |coordinate|).
double jacobian_prepost_fd(Momentum const& p, Momentum const& q, Momentum const& omega,
                           PhysicsConfig const& cfg);

namespace detail {
/// Unchecked fast path; weight is s sigma(rho, theta) B_n / (p0 q0).
ReducedPoint gs_point(FourMomentum const& p, FourMomentum const& q,
                      CollisionInvariants const& inv, Momentum const& omega,
                      CrossSection const& sigma, PhysicsConfig const& cfg);
}  // namespace detail

}  // namespace relcoll
