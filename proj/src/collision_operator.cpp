#include "relcoll/collision_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relcoll/com.hpp"
#include "relcoll/gs.hpp"

namespace relcoll {

Representation representation_from_name(std::string const& name)
{
    if (name == "com") {
        return Representation::com;
    }
    if (name == "gs") {
        return Representation::gs;
    }
    throw InputError("unknown representation '" + name + "' (expected com or gs)");
}

std::string to_string(Representation rep)
{
    return rep == Representation::com ? "com" : "gs";
}

//---------------------------------------------------------------------------//
// Distribution
//---------------------------------------------------------------------------//

Distribution Distribution::juttner(double beta, double amplitude)
{
    Distribution d;
    d.kind = Kind::juttner;
    d.beta = beta;
    d.amplitude = amplitude;
    return d;
}

Distribution Distribution::gaussian_bump(Momentum center, double width, double amplitude)
{
    Distribution d;
    d.kind = Kind::gaussian_bump;
    d.center = std::move(center);
    d.width = width;
    d.amplitude = amplitude;
    return d;
}

Distribution Distribution::custom(std::function<double(FourMomentum const&)> fn)
{
    Distribution d;
    d.kind = Kind::user;
    d.user = std::move(fn);
    return d;
}

double Distribution::evaluate(FourMomentum const& p) const
{
    switch (kind) {
        case Kind::juttner:
            return amplitude * std::exp(-beta * p.energy);
        case Kind::gaussian_bump: {
            double const d2 = center.size() == 0 ? p.spatial.squaredNorm()
                                                 : (p.spatial - center).squaredNorm();
            return amplitude * std::exp(-0.5 * d2 / (width * width));
        }
        case Kind::user:
            return amplitude * user(p);
    }
    return 0.0;
}

Distribution Distribution::scaled(double factor) const
{
    Distribution d = *this;
    d.amplitude *= factor;
    return d;
}

void Distribution::validate(int dimension) const
{
    if (!std::isfinite(amplitude)) {
        throw InputError("distribution amplitude must be finite");
    }
    switch (kind) {
        case Kind::juttner:
            if (!(beta > 0.0)) {
                throw InputError("juttner distribution needs beta > 0");
            }
            break;
        case Kind::gaussian_bump:
            if (!(width > 0.0)) {
                throw InputError("gaussian bump needs width > 0");
            }
            if (center.size() != 0) {
                detail::require_dimension(center, dimension, "bump centre");
            }
            break;
        case Kind::user:
            if (!user) {
                throw InputError("user distribution has no function");
            }
            break;
    }
}

Distribution distribution_by_name(std::string const& name, int dimension)
{
    if (name == "juttner") {
        return Distribution::juttner(1.0);
    }
    if (name == "gaussian-bump" || name == "bump") {
        Momentum center = zero_momentum(dimension);
        center(0) = 0.5;
        return Distribution::gaussian_bump(center, 0.8);
    }
    throw InputError("unknown distribution '" + name + "' (expected juttner or gaussian-bump)");
}

//---------------------------------------------------------------------------//
// Representation dispatch
//---------------------------------------------------------------------------//

namespace {

/// Per-(p, q) state shared by every omega node.
struct PairState {
    Representation rep;
    FourMomentum const& p;
    FourMomentum const& q;
    CollisionInvariants inv;
    detail::ComFrame frame;
    Reflection reflect;

    PairState(Representation r, FourMomentum const& pp, FourMomentum const& qq, bool split,
              PhysicsConfig const& cfg)
        : rep(r), p(pp), q(qq), inv(invariants(pp, qq, cfg))
    {
        if (rep == Representation::com) {
            frame = detail::com_frame(p, q, inv, cfg);
        }
        if (split) {
            reflect = reflection_to(kink_axis(p, q));
        }
    }

    [[nodiscard]] detail::ReducedPoint at(Momentum const& omega, CrossSection const& sigma,
                                          PhysicsConfig const& cfg) const
    {
        return rep == Representation::com ? detail::com_point(p, q, frame, omega, sigma)
                                          : detail::gs_point(p, q, inv, omega, sigma, cfg);
    }
};

void require_rule(SphereRule const& rule, PhysicsConfig const& cfg)
{
    if (rule.dimension != cfg.dimension) {
        throw InputError("sphere rule dimension does not match configuration");
    }
}

}  // namespace

double representation_integrand(Representation rep, FourMomentum const& p, FourMomentum const& q,
                                Momentum const& omega, CrossSection const& sigma,
                                TestFunction const& g, PhysicsConfig const& cfg)
{
    return rep == Representation::com ? com_integrand(p, q, omega, sigma, g, cfg)
                                      : gs_integrand(p, q, omega, sigma, g, cfg);
}

double sphere_integral(Representation rep, FourMomentum const& p, FourMomentum const& q,
                       CrossSection const& sigma, TestFunction const& g, SphereRule const& rule,
                       PhysicsConfig const& cfg, Execution exec)
{
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
    require_rule(rule, cfg);
    PairState const pair(rep, p, q, rule.split, cfg);
    return integrate_sphere(
        rule,
        [&](Momentum const& node) {
            auto const point = pair.at(pair.reflect(node), sigma, cfg);
            if (point.weight == 0.0) {
                return 0.0;
            }
            return point.weight * g(p, q, point.post.p_post, point.post.q_post);
        },
        exec);
}

//---------------------------------------------------------------------------//
// Q(f, h)
//---------------------------------------------------------------------------//

namespace {

/// Inner sphere sums for one q node.
struct NodeSums {
    double gain = 0.0;
    double loss = 0.0;
    double imbalance = 0.0;
};

NodeSums sphere_sums(Distribution const& f, Distribution const& h, FourMomentum const& p,
                     double fp, FourMomentum const& q, CrossSection const& sigma,
                     Representation rep, SphereRule const& sphere, PhysicsConfig const& cfg,
                     std::size_t q_index)
{
    PairState const pair(rep, p, q, sphere.split, cfg);
    double const loss_product = fp * h.evaluate(q);
    SphereRule const& rule = sphere;
    std::size_t const m = rule.size();
    std::vector<double> gain_terms(m, 0.0);
    std::vector<double> loss_terms(m, 0.0);
    NodeSums sums;
    for (std::size_t j = 0; j < m; ++j) {
        Momentum const omega = pair.reflect(rule.nodes[j]);
        auto const point = pair.at(omega, sigma, cfg);
        if (point.weight == 0.0) {
            continue;
        }
        double const gain_product = f.evaluate(point.post.p_post) * h.evaluate(point.post.q_post);
        gain_terms[j] = point.weight * gain_product;
        loss_terms[j] = point.weight * loss_product;
        if (!std::isfinite(gain_terms[j]) || !std::isfinite(loss_terms[j])) {
            std::ostringstream os;
            os << "non-finite integrand at q node " << q_index << " (q = " << q.spatial.transpose()
               << "), omega node " << j << " (omega = " << omega.transpose()
               << "): gain " << gain_terms[j] << ", loss " << loss_terms[j];
            throw EvaluationError(os.str());
        }
        double const scale = std::max(std::abs(gain_product), std::abs(loss_product));
        if (scale > 0.0) {
            sums.imbalance =
                std::max(sums.imbalance, std::abs(gain_product - loss_product) / scale);
        }
    }
    sums.gain = pairwise_dot(rule.weights, gain_terms);
    sums.loss = pairwise_dot(rule.weights, loss_terms);
    return sums;
}

OperatorResult evaluate_operator(Distribution const& f, Distribution const& h, Momentum const& p,
                                 CrossSection const& sigma, Representation rep,
                                 SphereRule const& sphere, BallRule const& ball,
                                 PhysicsConfig const& cfg, Execution exec)
{
    FourMomentum const pm = lift(p, cfg);
    double const fp = f.evaluate(pm);
    std::size_t const count = ball.size();
    std::vector<double> gains(count);
    std::vector<double> losses(count);
    std::vector<double> imbalance(count);
    for_each_index(count, exec, [&](std::size_t i) {
        auto const sums =
            sphere_sums(f, h, pm, fp, lift(ball.nodes[i], cfg), sigma, rep, sphere, cfg, i);
        gains[i] = sums.gain;
        losses[i] = sums.loss;
        imbalance[i] = sums.imbalance;
    });

    OperatorResult out;
    out.gain = pairwise_dot(ball.weights, gains);
    out.loss = pairwise_dot(ball.weights, losses);
    out.value = out.gain - out.loss;
    out.sphere_order = sphere.order;
    out.radial_order = ball.radial_order;
    out.radial_panels = ball.panels;
    out.sphere_nodes = sphere.size();
    out.ball_nodes = ball.size();
    out.ball_radius = ball.radius;
    out.max_pointwise_imbalance =
        imbalance.empty() ? 0.0 : *std::max_element(imbalance.begin(), imbalance.end());
    return out;
}

void check_operator_inputs(Distribution const& f, Distribution const& h, CrossSection const& sigma,
                           SphereRule const& sphere, BallRule const& ball,
                           PhysicsConfig const& cfg)
{
    cfg.validate();
    f.validate(cfg.dimension);
    h.validate(cfg.dimension);
    sigma.validate();
    require_rule(sphere, cfg);
    if (ball.dimension != cfg.dimension) {
        throw InputError("ball rule dimension does not match configuration");
    }
}

}  // namespace

OperatorResult collision_operator(Distribution const& f, Distribution const& h, Momentum const& p,
                                  CrossSection const& sigma, Representation rep,
                                  SphereRule const& sphere, BallRule const& ball,
                                  PhysicsConfig const& cfg, Execution exec)
{
    check_operator_inputs(f, h, sigma, sphere, ball, cfg);
    detail::require_dimension(p, cfg.dimension, "p");
    return evaluate_operator(f, h, p, sigma, rep, sphere, ball, cfg, exec);
}

BallRule default_operator_ball(Momentum const& p, PhysicsConfig const& cfg, int radial_order,
                               int sphere_order)
{
    return ball_rule(cfg.dimension, 8.0 * cfg.light_speed + p.norm(), radial_order, sphere_order);
}

double MomentResult::max_relative() const
{
    double worst = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        double const scale = loss_scale[k] > 0.0 ? loss_scale[k] : 1.0;
        worst = std::max(worst, std::abs(values[k]) / scale);
    }
    return worst;
}

MomentResult conservation_moments(Distribution const& f, Distribution const& h,
                                  CrossSection const& sigma, Representation rep,
                                  BallRule const& grid, SphereRule const& sphere,
                                  PhysicsConfig const& cfg, Execution exec)
{
    check_operator_inputs(f, h, sigma, sphere, grid, cfg);
    int const n = cfg.dimension;
    std::size_t const count = grid.size();
    std::vector<double> q_values(count);
    std::vector<double> loss_values(count);
    for_each_index(count, exec, [&](std::size_t i) {
        auto const r =
            evaluate_operator(f, h, grid.nodes[i], sigma, rep, sphere, grid, cfg, Execution::serial);
        q_values[i] = r.value;
        loss_values[i] = r.loss;
    });

    MomentResult out;
    std::vector<double> terms(count);
    std::vector<double> scale_terms(count);
    for (int k = 0; k < n + 2; ++k) {
        for (std::size_t i = 0; i < count; ++i) {
            double phi = 1.0;
            if (k >= 1 && k <= n) {
                phi = grid.nodes[i](k - 1);
            } else if (k == n + 1) {
                phi = std::sqrt(cfg.c2() + grid.nodes[i].squaredNorm());
            }
            terms[i] = q_values[i] * phi;
            scale_terms[i] = std::abs(loss_values[i] * phi);
        }
        out.values.push_back(pairwise_dot(grid.weights, terms));
        out.loss_scale.push_back(pairwise_dot(grid.weights, scale_terms));
    }
    return out;
}

}  // namespace relcoll
