#include "relcoll/cross_section.hpp"

#include <cmath>

namespace relcoll {

CrossSection CrossSection::constant(double amplitude)
{
    CrossSection s;
    s.amplitude = amplitude;
    s.validate();
    return s;
}

CrossSection CrossSection::power_law(double amplitude, double rho_exponent, double angular_exponent)
{
    CrossSection s{Model::power_law, amplitude, rho_exponent, angular_exponent};
    s.validate();
    return s;
}

CrossSection CrossSection::scaled(double factor) const
{
    CrossSection s = *this;
    s.amplitude *= factor;
    return s;
}

void CrossSection::validate() const
{
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
        throw InputError("cross-section amplitude must be finite and non-negative");
    }
    if (!std::isfinite(rho_exponent) || !std::isfinite(angular_exponent)
        || angular_exponent < 0.0) {
        throw InputError("cross-section exponents must be finite with b >= 0");
    }
}

double eval_sigma(CrossSection const& sigma, double rho, double cos_theta)
{
    if (sigma.model == CrossSection::Model::constant) {
        return sigma.amplitude;
    }
    if (rho == 0.0 && sigma.rho_exponent < 0.0) {
        throw InputError("power-law cross-section with a < 0 is singular at rho = 0");
    }
    double value = sigma.amplitude;
    if (sigma.rho_exponent != 0.0) {
        value *= std::pow(rho, sigma.rho_exponent);
    }
    if (sigma.angular_exponent != 0.0) {
        double const sin2 = std::max(0.0, 1.0 - cos_theta * cos_theta);
        value *= std::pow(std::sqrt(sin2), sigma.angular_exponent);
    }
    return value;
}

namespace test_functions {

TestFunction constant(double value)
{
    return [value](FourMomentum const&, FourMomentum const&, FourMomentum const&,
                   FourMomentum const&) { return value; };
}

TestFunction energy_difference()
{
    return [](FourMomentum const& p, FourMomentum const&, FourMomentum const& p_post,
              FourMomentum const&) { return p_post.energy - p.energy; };
}

TestFunction gaussian_post(double width)
{
    double const inv = 1.0 / (2.0 * width * width);
    return [inv](FourMomentum const&, FourMomentum const&, FourMomentum const& p_post,
                 FourMomentum const&) { return std::exp(-p_post.spatial.squaredNorm() * inv); };
}

TestFunction juttner_weighted(double beta)
{
    return [beta](FourMomentum const&, FourMomentum const&, FourMomentum const& p_post,
                  FourMomentum const&) { return std::exp(-beta * p_post.energy); };
}

}  // namespace test_functions

TestFunction test_function_by_name(std::string const& name)
{
    if (name == "one") {
        return test_functions::constant(1.0);
    }
    if (name == "energy-difference") {
        return test_functions::energy_difference();
    }
    if (name == "gaussian") {
        return test_functions::gaussian_post();
    }
    if (name == "juttner") {
        return test_functions::juttner_weighted();
    }
    throw InputError("unknown test function '" + name
                     + "' (expected one, energy-difference, gaussian, juttner)");
}

}  // namespace relcoll
