#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relcoll/cross_section.hpp"
#include "relcoll/kinematics.hpp"
#include "relcoll/parallel.hpp"
#include "relcoll/quadrature.hpp"

namespace relcoll {

enum class Representation { com, gs };

Representation representation_from_name(std::string const& name);
std::string to_string(Representation rep);

/// Momentum-space scalar field used as f or h.
struct Distribution {
    enum class Kind { juttner, gaussian_bump, user };

    Kind kind = Kind::juttner;
    double amplitude = 1.0;
    double beta = 1.0;  ///< juttner: exp(-beta p0)
    Momentum center;    ///< bump centre (empty = origin)
    double width = 1.0;
    std::function<double(FourMomentum const&)> user;

    static Distribution juttner(double beta, double amplitude = 1.0);
    static Distribution gaussian_bump(Momentum center, double width, double amplitude = 1.0);
    static Distribution custom(std::function<double(FourMomentum const&)> fn);

    [[nodiscard]] double evaluate(FourMomentum const& p) const;
    [[nodiscard]] Distribution scaled(double factor) const;
    void validate(int dimension) const;
};

/// Look up juttner / bump by CLI name with default parameters.
Distribution distribution_by_name(std::string const& name, int dimension);

/// Checked entry point for a single node of either representation.
double representation_integrand(Representation rep, FourMomentum const& p, FourMomentum const& q,
                                Momentum const& omega, CrossSection const& sigma,
                                TestFunction const& g, PhysicsConfig const& cfg);

/// Sphere integral of the representation's integrand for fixed (p, q).
double sphere_integral(Representation rep, FourMomentum const& p, FourMomentum const& q,
                       CrossSection const& sigma, TestFunction const& g, SphereRule const& rule,
                       PhysicsConfig const& cfg, Execution exec = Execution::serial);

struct OperatorResult {
    double value = 0.0;
    double gain = 0.0;
    double loss = 0.0;
    int sphere_order = 0;  ///< 0 for Monte Carlo rules
    int radial_order = 0;
    int radial_panels = 0;
    std::size_t sphere_nodes = 0;
    std::size_t ball_nodes = 0;
    double ball_radius = 0.0;
    /// max over nodes of |f(p')h(q') - f(p)h(q)| / max(f(p')h(q'), f(p)h(q)).
    double max_pointwise_imbalance = 0.0;
};

/// Q(f, h)(p) = int dq int domega K [f(p')h(q') - f(p)h(q)], with the gain
/// and loss halves accumulated separately.
/// Throws EvaluationError naming the node if any integrand is not finite.
OperatorResult collision_operator(Distribution const& f, Distribution const& h, Momentum const& p,
                                  CrossSection const& sigma, Representation rep,
                                  SphereRule const& sphere, BallRule const& ball,
                                  PhysicsConfig const& cfg, Execution exec = Execution::parallel);

/// Default ball for evaluating Q at p: radius 8c + |p|.
BallRule default_operator_ball(Momentum const& p, PhysicsConfig const& cfg, int radial_order = 48,
                               int sphere_order = 16);

/// int Q(f,h)(p) phi(p) dp for phi in {1, p^1, ..., p^n, p^0}.
struct MomentResult {
    std::vector<double> values;
    /// int loss(p) |phi(p)| dp for each phi, the natural scale of each moment.
    std::vector<double> loss_scale;
    [[nodiscard]] double max_relative() const;
};

/// The same grid is used for the outer p integral and the inner q integral.
MomentResult conservation_moments(Distribution const& f, Distribution const& h,
                                  CrossSection const& sigma, Representation rep,
                                  BallRule const& grid, SphereRule const& sphere,
                                  PhysicsConfig const& cfg, Execution exec = Execution::parallel);

class EvaluationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace relcoll
