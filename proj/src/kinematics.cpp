#include "relcoll/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relcoll {

void PhysicsConfig::validate() const
{
    if (dimension < 2) {
        throw InputError("dimension must satisfy n >= 2 (got " + std::to_string(dimension) + ")");
    }
    if (dimension > kMaxDimension) {
        throw InputError("dimension " + std::to_string(dimension) + " exceeds the supported maximum "
                         + std::to_string(kMaxDimension));
    }
    if (!(light_speed > 0.0) || !std::isfinite(light_speed)) {
        throw InputError("light_speed must be positive and finite");
    }
    if (!(tol_algebra > 0.0) || !(tol_quadrature > 0.0)) {
        throw InputError("tolerances must be positive");
    }
}

FourVector FourMomentum::components() const
{
    FourVector x(spatial.size() + 1);
    x(0) = energy;
    x.tail(spatial.size()) = spatial;
    return x;
}

double FourMomentum::shell_residual(double light_speed) const
{
    double const e2 = energy * energy;
    return std::abs(e2 - spatial.squaredNorm() - light_speed * light_speed) / e2;
}

Momentum make_momentum(std::initializer_list<double> components)
{
    if (components.size() > static_cast<std::size_t>(kMaxDimension)) {
        throw InputError("too many momentum components");
    }
    Momentum p(static_cast<Eigen::Index>(components.size()));
    Eigen::Index i = 0;
    for (double v : components) {
        p(i++) = v;
    }
    return p;
}

Momentum zero_momentum(int dimension)
{
    return Momentum::Zero(dimension);
}

namespace detail {

void require_dimension(Momentum const& v, int dimension, char const* what)
{
    if (v.size() != dimension) {
        std::ostringstream os;
        os << what << " has " << v.size() << " components, expected " << dimension;
        throw InputError(os.str());
    }
}

void require_dimension(FourMomentum const& v, int dimension, char const* what)
{
    require_dimension(v.spatial, dimension, what);
}

void require_unit(Momentum const& omega, PhysicsConfig const& cfg)
{
    require_dimension(omega, cfg.dimension, "omega");
    double const norm = omega.norm();
    if (!(std::abs(norm - 1.0) <= cfg.tol_algebra)) {
        std::ostringstream os;
        os << "omega must be a unit vector (|omega| = " << norm << ")";
        throw InputError(os.str());
    }
}

}  // namespace detail

FourMomentum lift(Momentum const& p, PhysicsConfig const& cfg)
{
    detail::require_dimension(p, cfg.dimension, "momentum");
    return {std::sqrt(cfg.c2() + p.squaredNorm()), p};
}

double lorentz_inner(FourMomentum const& a, FourMomentum const& b)
{
    if (a.spatial.size() != b.spatial.size()) {
        throw InputError("lorentz_inner: dimension mismatch");
    }
    return -a.energy * b.energy + a.spatial.dot(b.spatial);
}

double lorentz_inner(FourVector const& a, FourVector const& b)
{
    if (a.size() != b.size() || a.size() < 2) {
        throw InputError("lorentz_inner: dimension mismatch");
    }
    Eigen::Index const n = a.size() - 1;
    return -a(0) * b(0) + a.tail(n).dot(b.tail(n));
}

CollisionInvariants invariants(FourMomentum const& p, FourMomentum const& q,
                               PhysicsConfig const& cfg)
{
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");

    double const de = p.energy - q.energy;
    double radicand = (p.spatial - q.spatial).squaredNorm() - de * de;
    if (radicand < 0.0) {
        if (radicand < -cfg.tol_algebra) {
            std::ostringstream os;
            os << "relative momentum radicand " << radicand
               << " is negative beyond tolerance; inputs are off the mass shell";
            throw ConsistencyError(os.str());
        }
        radicand = 0.0;
    }
    double const se = p.energy + q.energy;
    double const s = se * se - (p.spatial + q.spatial).squaredNorm();

    CollisionInvariants out;
    out.rho = std::sqrt(radicand);
    out.s = s;
    out.moller = 0.25 * cfg.light_speed * out.rho * std::sqrt(s) / (p.energy * q.energy);
    return out;
}

double scattering_cosine(FourMomentum const& p, FourMomentum const& q,
                         FourMomentum const& p_post, FourMomentum const& q_post,
                         PhysicsConfig const& cfg)
{
    detail::require_dimension(p_post, cfg.dimension, "p'");
    detail::require_dimension(q_post, cfg.dimension, "q'");
    auto const inv = invariants(p, q, cfg);
    if (inv.rho <= cfg.tol_algebra) {
        throw DegenerateAngleError("scattering angle is undefined for rho = 0 (p = q)");
    }

    double const scale = std::max(1.0, p.energy + q.energy);
    double const energy_defect = p.energy + q.energy - p_post.energy - q_post.energy;
    double const momentum_defect =
        (p.spatial + q.spatial - p_post.spatial - q_post.spatial).cwiseAbs().maxCoeff();
    if (std::max(std::abs(energy_defect), momentum_defect) > cfg.tol_algebra * scale) {
        std::ostringstream os;
        os << "scattering_cosine: four-momentum not conserved (energy defect " << energy_defect
           << ", momentum defect " << momentum_defect << ")";
        throw ConsistencyError(os.str());
    }

    double const rho2 = inv.rho * inv.rho;
    double const numerator = -(p.energy - q.energy) * (p_post.energy - q_post.energy)
                             + (p.spatial - q.spatial).dot(p_post.spatial - q_post.spatial);
    double const cosine = numerator / rho2;
    // Round-off in the numerator is O(eps * scale^2); relative to rho^2 it
    // grows as rho shrinks.
    double const slack = cfg.tol_algebra * (1.0 + scale * scale / rho2);
    if (std::abs(cosine) > 1.0 + slack) {
        std::ostringstream os;
        os << "scattering_cosine: |cos(theta)| = " << std::abs(cosine) << " exceeds 1";
        throw ConsistencyError(os.str());
    }
    return std::clamp(cosine, -1.0, 1.0);
}

}  // namespace relcoll
