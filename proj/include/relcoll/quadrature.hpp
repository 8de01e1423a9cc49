#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "relcoll/kinematics.hpp"
#include "relcoll/parallel.hpp"

namespace relcoll {

/// Node-weight rule on the unit sphere S^{n-1}.
struct SphereRule {
    int dimension = 0;
    int order = 0;  ///< 0 for Monte Carlo rules
    bool split = false;  ///< polar rule split at the equator omega_1 = 0
    std::vector<Momentum> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Radial Gauss-Legendre (with r^{n-1}) times a sphere rule, on the ball
/// |x - center| <= radius.
struct BallRule {
    int dimension = 0;
    double radius = 0.0;
    int radial_order = 0;
    int panels = 0;
    Momentum center;
    std::vector<double> radial_nodes;    ///< in [0, radius]
    std::vector<double> radial_weights;  ///< plain 1-D weights, no r^{n-1}
    SphereRule directions;
    /// Flattened nodes: index = radial_index * directions.size() + direction_index.
    std::vector<Momentum> nodes;
    std::vector<double> weights;  ///< include r^{n-1}

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int dimension);

/// Volume of the n-ball of radius r.
double ball_volume(int dimension, double radius);

/// Deterministic product rule on S^{n-1}.
///  n = 2: 4 order equally spaced angles starting at 0.
///  n = 3: order-point Gauss-Legendre in cos(theta) times 2 order azimuths.
///  n > 3: omega = (cos phi, sin phi omega'); Gauss-Jacobi in cos(phi) with
///         weight (1 - t^2)^{(n-3)/2}, recursing into S^{n-2}.
/// All rules are antipodally symmetric and have strictly positive weights.
SphereRule sphere_rule(int dimension, int order);

/// Like sphere_rule, but the polar factor is two Gauss rules on [-1, 0] and
/// [0, 1] (n = 2: two Gauss-Legendre arcs of 2 order points on either side of
/// omega_1 = 0). Integrands with a kink on the equator stay spectrally accurate.
SphereRule sphere_rule_split(int dimension, int order);

/// Householder reflection taking e_1 to axis / |axis|; the identity when
/// |axis| is zero or axis is already along e_1.
struct Reflection {
    Momentum u;
    double scale = 0.0;  ///< 2 / |u|^2, or 0 for the identity

    [[nodiscard]] Momentum operator()(Momentum const& x) const
    {
        return scale == 0.0 ? x : Momentum(x - (scale * u.dot(x)) * u);
    }
};

Reflection reflection_to(Momentum const& axis);

/// The rule reflected so that e_1 maps to axis / |axis|. Returns the rule
/// unchanged when |axis| is zero.
SphereRule oriented(SphereRule rule, Momentum const& axis);

/// Equal-weight rule of `count` i.i.d. uniform points (normalised Gaussians).
SphereRule mc_sample(int dimension, std::size_t count, std::uint64_t seed);

/// Composite radial Gauss-Legendre with `panels` equal panels of
/// `radial_order` points each, composed with sphere_rule(dimension, sphere_order).
BallRule ball_rule(int dimension, double radius, int radial_order, int sphere_order,
                   int panels = 1);

/// Same rule shifted to a new centre.
BallRule translated(BallRule rule, Momentum const& center);

using SphereFunction = std::function<double(Momentum const& omega)>;

/// sum_i w_i f(omega_i), accumulated pairwise. Serial and parallel results
/// are bitwise identical.
double integrate_sphere(SphereRule const& rule, SphereFunction const& f,
                        Execution exec = Execution::serial);

/// sum_i w_i f(x_i) over a ball rule, accumulated pairwise.
double integrate_ball(BallRule const& rule, SphereFunction const& f,
                      Execution exec = Execution::serial);

/// Gauss-Legendre nodes and weights on [a, b].
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
LineRule gauss_legendre(int order, double a, double b);

}  // namespace relcoll
