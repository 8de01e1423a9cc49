#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace relcoll {

/// Largest supported spatial dimension. Vectors use inline storage up to
/// this size so that quadrature inner loops never touch the heap.
inline constexpr int kMaxDimension = 8;

using Momentum = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDimension, 1>;
using FourVector =
    Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDimension + 1, 1>;

//---------------------------------------------------------------------------//
// Errors
//---------------------------------------------------------------------------//

/// Malformed input: dimension mismatch, invalid parameter, non-unit direction.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The scattering angle is undefined because the relative momentum vanishes.
class DegenerateAngleError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A precondition stated by the caller's contract does not hold
/// (e.g. a matrix is not a Lorentz transformation).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Inputs are internally inconsistent beyond round-off (off mass shell,
/// four-momentum not conserved).
class ConsistencyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
// Configuration and momenta
//---------------------------------------------------------------------------//

struct PhysicsConfig {
    int dimension = 3;
    double light_speed = 1.0;
    double tol_algebra = 1e-10;
    double tol_quadrature = 1e-6;

    /// Throws InputError unless dimension >= 2, c > 0 and tolerances > 0.
    void validate() const;

    [[nodiscard]] double c2() const { return light_speed * light_speed; }
};

/// On-shell energy-momentum vector (p^0, p).
struct FourMomentum {
    double energy = 0.0;
    Momentum spatial;

    [[nodiscard]] int dimension() const { return static_cast<int>(spatial.size()); }

    /// Contravariant components (p^0, p^1, ..., p^n).
    [[nodiscard]] FourVector components() const;

    /// |energy^2 - |p|^2 - c^2| relative to energy^2.
    [[nodiscard]] double shell_residual(double light_speed) const;
};

/// Build a momentum from a list of components.
Momentum make_momentum(std::initializer_list<double> components);

/// Zero momentum of the given dimension.
Momentum zero_momentum(int dimension);

/// p -> (sqrt(c^2 + |p|^2), p).
FourMomentum lift(Momentum const& p, PhysicsConfig const& cfg);

/// Minkowski product -a^0 b^0 + a.b with metric diag(-1, 1, ..., 1).
double lorentz_inner(FourMomentum const& a, FourMomentum const& b);
double lorentz_inner(FourVector const& a, FourVector const& b);

//---------------------------------------------------------------------------//
// Collision invariants
//---------------------------------------------------------------------------//

/// Relative momentum rho, total energy squared s and the Moller velocity.
struct CollisionInvariants {
    double rho = 0.0;
    double s = 0.0;
    double moller = 0.0;
};

/// Lorentz scalars of the pair (p, q).
///
/// rho is evaluated as the Minkowski length of p - q, which is algebraically
/// 2(p0 q0 - p.q - c^2) but loses far fewer digits when p is close to q.
/// A radicand in [-tol_algebra, 0) is clamped to zero; anything more negative
/// means the inputs are off shell and raises ConsistencyError.
CollisionInvariants invariants(FourMomentum const& p, FourMomentum const& q,
                               PhysicsConfig const& cfg);

/// cos(theta) = (p - q)^mu (p' - q')_mu / rho^2 for an elastic collision.
///
/// Throws DegenerateAngleError when rho <= tol_algebra and ConsistencyError
/// when the quadruple does not conserve four-momentum. The result is clamped
/// to [-1, 1].
double scattering_cosine(FourMomentum const& p, FourMomentum const& q,
                         FourMomentum const& p_post, FourMomentum const& q_post,
                         PhysicsConfig const& cfg);

namespace detail {
void require_dimension(Momentum const& v, int dimension, char const* what);
void require_dimension(FourMomentum const& v, int dimension, char const* what);
void require_unit(Momentum const& omega, PhysicsConfig const& cfg);
}  // namespace detail

}  // namespace relcoll
