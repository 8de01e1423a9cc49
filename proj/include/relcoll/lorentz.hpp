#pragma once

#include <Eigen/Core>

#include "relcoll/kinematics.hpp"

namespace relcoll {

/// (1+n) x (1+n) real matrix acting on contravariant four-vectors.
/// Row and column 0 are the time component.
class SpacetimeMatrix {
  public:
    using Storage = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor,
                                  kMaxDimension + 1, kMaxDimension + 1>;

    /// Identity on (1+n)-dimensional spacetime.
    explicit SpacetimeMatrix(int dimension);
    explicit SpacetimeMatrix(Storage entries);

    static SpacetimeMatrix identity(int dimension) { return SpacetimeMatrix(dimension); }

    /// Minkowski metric diag(-1, 1, ..., 1).
    static SpacetimeMatrix metric(int dimension);

    [[nodiscard]] int dimension() const { return static_cast<int>(entries_.rows()) - 1; }
    [[nodiscard]] double operator()(int mu, int nu) const { return entries_(mu, nu); }
    double& operator()(int mu, int nu) { return entries_(mu, nu); }
    [[nodiscard]] Storage const& entries() const { return entries_; }

    friend SpacetimeMatrix operator*(SpacetimeMatrix const& a, SpacetimeMatrix const& b);

  private:
    Storage entries_;
};

/// det = 1 and Lambda^T g Lambda = g, both to tol_algebra.
bool is_proper_lorentz(SpacetimeMatrix const& lambda, PhysicsConfig const& cfg);

/// Largest entry of |Lambda^T g Lambda - g|.
double metric_defect(SpacetimeMatrix const& lambda);

/// Boost with velocity v = (p+q)/(p0+q0) taking p+q to (sqrt(s), 0, ..., 0).
/// Returns the identity when |p+q| <= tol_algebra (p0+q0).
SpacetimeMatrix boost_to_com(FourMomentum const& p, FourMomentum const& q,
                             PhysicsConfig const& cfg);

/// Inverse of a Lorentz transformation, g Lambda^T g.
/// Throws ContractViolation when lambda is not a proper Lorentz transformation.
SpacetimeMatrix invert(SpacetimeMatrix const& lambda, PhysicsConfig const& cfg);

FourVector apply(SpacetimeMatrix const& lambda, FourVector const& x);
FourMomentum apply(SpacetimeMatrix const& lambda, FourMomentum const& x);

/// Residuals of the centre-of-momentum conditions for lambda:
/// `total` is max |Lambda(p+q) - (sqrt s, 0...)|, `time_of_difference` is
/// |[Lambda(p-q)]^0|.
struct ComFrameResidual {
    double total = 0.0;
    double time_of_difference = 0.0;
};
ComFrameResidual com_frame_residual(SpacetimeMatrix const& lambda, FourMomentum const& p,
                                    FourMomentum const& q, PhysicsConfig const& cfg);

/// True iff lambda maps p+q to (sqrt s, 0, ..., 0) and annihilates the time
/// component of p-q, to tol_algebra max(1, p0+q0).
bool check_com_frame(SpacetimeMatrix const& lambda, FourMomentum const& p, FourMomentum const& q,
                     PhysicsConfig const& cfg);

}  // namespace relcoll
