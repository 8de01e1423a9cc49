#pragma once

#include <functional>

#include "relcoll/kinematics.hpp"

namespace relcoll {

/// Differential cross-section sigma(rho, theta), evaluated from cos(theta).
struct CrossSection {
    enum class Model { constant, power_law };

    Model model = Model::constant;
    double amplitude = 1.0;       ///< C
    double rho_exponent = 0.0;    ///< a
    double angular_exponent = 0.0;  ///< b

    static CrossSection constant(double amplitude = 1.0);
    static CrossSection power_law(double amplitude, double rho_exponent, double angular_exponent);

    /// Same model with the amplitude multiplied by factor (which may be 0).
    [[nodiscard]] CrossSection scaled(double factor) const;

    /// Throws InputError on C < 0, b < 0 or non-finite parameters.
    void validate() const;
};

/// C rho^a (sin theta)^b, sin theta = sqrt(1 - cos^2 theta) clamped at 0.
/// The constant model returns C regardless of arguments.
/// Throws InputError for rho = 0 with a < 0.
double eval_sigma(CrossSection const& sigma, double rho, double cos_theta);

/// Scalar test function G(p, q, p', q').
using TestFunction = std::function<double(FourMomentum const& p, FourMomentum const& q,
                                          FourMomentum const& p_post, FourMomentum const& q_post)>;

namespace test_functions {
/// G = 1
TestFunction constant(double value = 1.0);
/// G = p'^0 - p^0
TestFunction energy_difference();
/// G = exp(-|p' - center|^2 / (2 width^2)), center = 0.
TestFunction gaussian_post(double width = 1.0);
/// G = exp(-beta p'^0)
TestFunction juttner_weighted(double beta = 1.0);
}  // namespace test_functions

/// Look up a built-in test function by CLI name: one, energy-difference,
/// gaussian, juttner. Throws InputError for unknown names.
TestFunction test_function_by_name(std::string const& name);

}  // namespace relcoll
