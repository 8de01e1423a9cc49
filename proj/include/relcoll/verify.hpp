#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "relcoll/kinematics.hpp"

namespace relcoll {

/// Uniform point in the ball |p| <= bound.
Momentum random_momentum(std::mt19937_64& engine, int dimension, double bound);

/// Uniform point on S^{n-1}.
Momentum random_unit(std::mt19937_64& engine, int dimension);

/// Haar-random rotation of R^n with determinant +1.
Eigen::MatrixXd random_rotation(std::mt19937_64& engine, int dimension);

struct SuiteResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      ///< worst residual seen
    double threshold = 0.0;  ///< pass iff worst <= threshold
    std::size_t trials = 0;
    std::string detail;
};

struct VerifyOptions {
    std::size_t trials = 10000;          ///< algebraic suites
    std::size_t equivalence_pairs = 50;
    std::size_t jacobian_trials = 100;
    int sphere_order = 32;               ///< equivalence, n >= 3
    int circle_order = 256;              ///< equivalence, n = 2
    double momentum_bound = 10.0;
    double equivalence_bound = 2.0;      ///< |p|, |q| for the quadrature suites
    double equivalence_tolerance = 1e-8;
    double jacobian_tolerance = 1e-6;
    std::uint64_t seed = 12345;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    [[nodiscard]] bool all_passed() const;
};

// Residual thresholds are multiples of cfg.tol_algebra (1x conservation,
// 10x for angles, boosts and kernels); quadrature suites use the fixed
// tolerances in VerifyOptions. Exceptions inside a suite fail that suite.

/// Boost properties over n in {2,3,4}, c in {0.5,1,3}; ignores cfg.dimension
/// and cfg.light_speed.
SuiteResult suite_lorentz(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_invariants(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_conservation_com(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_conservation_gs(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_angle_com(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_angle_gs(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_com_frames(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_kernel_symmetry(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_dimension_factor(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_jacobian(PhysicsConfig const& cfg, VerifyOptions const& opts);
SuiteResult suite_equivalence(PhysicsConfig const& cfg, VerifyOptions const& opts);
/// Fixed point n = 3, c = 1, p = (1,0,0), q = 0, omega = (1,0,0); ignores cfg
/// except for tolerances.
SuiteResult suite_worked_point(PhysicsConfig const& cfg, VerifyOptions const& opts);

/// All suites above, in order.
VerifyReport run_verification(PhysicsConfig const& cfg, VerifyOptions const& opts = {});

}  // namespace relcoll
