#pragma once

#include <span>
#include <utility>
#include <vector>

#include "relcoll/cross_section.hpp"
#include "relcoll/kinematics.hpp"
#include "relcoll/parallel.hpp"
#include "relcoll/quadrature.hpp"

namespace relcoll {

/// The inner ball does not reach far enough past the energy shell.
class CoverageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Brute-force value of
///   I = int dp'/(p'0 q'0) s sigma(rho, theta) delta(p'0 + q'0 - p0 - q0) G
/// with q' = p + q - p' substituted exactly and the energy delta replaced by
/// a unit-mass Gaussian of width eps. cos(theta) comes straight from the
/// Minkowski definition on (p, q, p', q'); neither reduction is consulted.
///
/// Throws CoverageError when the energy at the edge of `inner` is within
/// 8 eps of the shell for some direction of the rule.
double mollified_I(FourMomentum const& p, FourMomentum const& q, CrossSection const& sigma,
                   TestFunction const& g, double eps, BallRule const& inner,
                   PhysicsConfig const& cfg, Execution exec = Execution::serial);

/// mollified_I for several widths sharing one pass over the nodes.
std::vector<double> mollified_series(FourMomentum const& p, FourMomentum const& q,
                                     CrossSection const& sigma, TestFunction const& g,
                                     std::span<double const> eps, BallRule const& inner,
                                     PhysicsConfig const& cfg, Execution exec = Execution::serial);

/// Worst |1 - mass| over the rule's directions, where mass is the radial
/// quadrature of delta_eps(E(r) - E0) dE/dr along the ray. Only meaningful
/// for rules centred at (p+q)/2, where E is increasing along every ray.
double mollifier_mass_defect(FourMomentum const& p, FourMomentum const& q, double eps,
                             BallRule const& inner, PhysicsConfig const& cfg);

/// Least-squares fit value(eps) = v0 + v2 eps^2; returns v0.
/// Needs at least three points with strictly decreasing eps.
double extrapolate(std::span<std::pair<double, double> const> estimates);

/// 2^(2-n) int rho^(n-2) sqrt(s) sigma G domega over the COM parameterisation.
double reduced_com_value(FourMomentum const& p, FourMomentum const& q, CrossSection const& sigma,
                         TestFunction const& g, SphereRule const& rule, PhysicsConfig const& cfg);

/// (2/c) (rho/2)^(n-3) int s sigma B A^(n-3) G domega over the GS parameterisation.
double reduced_gs_value(FourMomentum const& p, FourMomentum const& q, CrossSection const& sigma,
                        TestFunction const& g, SphereRule const& rule, PhysicsConfig const& cfg);

struct OracleOptions {
    std::vector<double> eps_factors{0.08, 0.04, 0.02};
    int reduced_sphere_order = 0;  ///< 0: 64 for n = 2, 32 otherwise
    int inner_sphere_order = 0;    ///< 0: 128 for n = 2, 24 otherwise
    int panel_order = 8;
    int max_panels = 20000;
    double mass_tolerance = 1e-6;
    bool allow_high_dimension = false;
    Execution exec = Execution::parallel;
};

struct OracleReport {
    std::vector<std::pair<double, double>> raw_estimates;  ///< (eps, value)
    double extrapolated = 0.0;
    double com_value = 0.0;
    double gs_value = 0.0;
    double rel_err_com = 0.0;
    double rel_err_gs = 0.0;
    double eps_scale = 0.0;       ///< eps = factor * eps_scale
    double threshold_gap = 0.0;   ///< p0 + q0 - sqrt(4c^2 + |p+q|^2)
    double mollifier_mass_defect = 0.0;
    double inner_radius = 0.0;
    std::size_t inner_nodes = 0;
};

/// Run the mollified integral at eps = factor * min(c, gap / (6 max factor)),
/// extrapolate to eps -> 0 and compare with both reduced sphere integrals.
/// The gap is the distance of p0 + q0 above the kinematic threshold, so the
/// widest Gaussian stays six widths clear of it.
/// Throws InputError for n > 3 unless allow_high_dimension is set.
OracleReport compare_reductions(FourMomentum const& p, FourMomentum const& q,
                                CrossSection const& sigma, TestFunction const& g,
                                PhysicsConfig const& cfg, OracleOptions const& options = {});

}  // namespace relcoll
