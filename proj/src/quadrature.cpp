#include "relcoll/quadrature.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include <gsl/gsl_integration.h>

namespace relcoll {

namespace {

struct GslFixedDeleter {
    void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

/// Gauss-Jacobi rule for (1-t)^alpha (1+t)^beta on [-1, 1].
LineRule gauss_jacobi(int order, double alpha, double beta)
{
    std::unique_ptr<gsl_integration_fixed_workspace, GslFixedDeleter> w(
        gsl_integration_fixed_alloc(gsl_integration_fixed_jacobi, static_cast<std::size_t>(order),
                                    -1.0, 1.0, alpha, beta));
    if (!w) {
        throw InputError("gauss_jacobi: rule construction failed");
    }
    double const* x = gsl_integration_fixed_nodes(w.get());
    double const* wt = gsl_integration_fixed_weights(w.get());
    LineRule rule{{x, x + order}, {wt, wt + order}};
    // symmetrise so antipodal node pairs cancel exactly on odd integrands
    for (int i = 0; i < order / 2; ++i) {
        int const j = order - 1 - i;
        double const node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        double const weight = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -node;
        rule.nodes[j] = node;
        rule.weights[i] = weight;
        rule.weights[j] = weight;
    }
    if (order % 2 == 1) {
        rule.nodes[order / 2] = 0.0;
    }
    return rule;
}

/// Circle rule with `count` equally spaced angles.
SphereRule circle_rule(int count)
{
    SphereRule rule;
    rule.dimension = 2;
    double const step = 2.0 * std::numbers::pi / count;
    for (int i = 0; i < count; ++i) {
        double const angle = step * i;
        rule.nodes.push_back(make_momentum({std::cos(angle), std::sin(angle)}));
        rule.weights.push_back(step);
    }
    // exact values at quarter turns keep antipodal pairs symmetric
    for (auto& node : rule.nodes) {
        for (Eigen::Index k = 0; k < node.size(); ++k) {
            if (std::abs(node(k)) < 1e-15) {
                node(k) = 0.0;
            }
        }
    }
    return rule;
}

SphereRule product_rule(int dimension, int order)
{
    if (dimension == 2) {
        return circle_rule(2 * order);
    }
    SphereRule const inner = product_rule(dimension - 1, order);
    double const exponent = 0.5 * (dimension - 3);
    LineRule const polar = gauss_jacobi(order, exponent, exponent);

    SphereRule rule;
    rule.dimension = dimension;
    for (std::size_t a = 0; a < polar.nodes.size(); ++a) {
        double const t = polar.nodes[a];
        double const sin_phi = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (std::size_t b = 0; b < inner.size(); ++b) {
            Momentum node(dimension);
            node(0) = t;
            node.tail(dimension - 1) = sin_phi * inner.nodes[b];
            rule.nodes.push_back(node);
            rule.weights.push_back(polar.weights[a] * inner.weights[b]);
        }
    }
    return rule;
}

/// Gauss-Jacobi on [0, 1] for (1 - t)^alpha (1 + t)^alpha.
LineRule half_polar(int order, double alpha)
{
    std::unique_ptr<gsl_integration_fixed_workspace, GslFixedDeleter> w(
        gsl_integration_fixed_alloc(gsl_integration_fixed_jacobi, static_cast<std::size_t>(order),
                                    0.0, 1.0, alpha, 0.0));
    if (!w) {
        throw InputError("half_polar: rule construction failed");
    }
    double const* x = gsl_integration_fixed_nodes(w.get());
    double const* wt = gsl_integration_fixed_weights(w.get());
    LineRule rule;
    for (int i = 0; i < order; ++i) {
        rule.nodes.push_back(x[i]);
        rule.weights.push_back(wt[i] * std::pow(1.0 + x[i], alpha));
    }
    return rule;
}

SphereRule split_circle(int order)
{
    SphereRule rule;
    rule.dimension = 2;
    auto const arc = gauss_legendre(2 * order, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    for (double sign : {1.0, -1.0}) {
        for (std::size_t i = 0; i < arc.nodes.size(); ++i) {
            double const angle = arc.nodes[i];
            rule.nodes.push_back(make_momentum({sign * std::cos(angle), sign * std::sin(angle)}));
            rule.weights.push_back(arc.weights[i]);
        }
    }
    return rule;
}

SphereRule split_product(int dimension, int order)
{
    SphereRule const inner = product_rule(dimension - 1, order);
    LineRule const half = half_polar((order + 1) / 2, 0.5 * (dimension - 3));
    SphereRule rule;
    rule.dimension = dimension;
    for (double sign : {1.0, -1.0}) {
        for (std::size_t a = 0; a < half.nodes.size(); ++a) {
            double const t = sign * half.nodes[a];
            double const sin_phi = std::sqrt(std::max(0.0, 1.0 - t * t));
            for (std::size_t b = 0; b < inner.size(); ++b) {
                Momentum node(dimension);
                node(0) = t;
                node.tail(dimension - 1) = sin_phi * inner.nodes[b];
                rule.nodes.push_back(node);
                rule.weights.push_back(half.weights[a] * inner.weights[b]);
            }
        }
    }
    return rule;
}

void require_order(int order, char const* what)
{
    if (order < 1) {
        throw InputError(std::string(what) + " must be >= 1");
    }
}

}  // namespace

double sphere_area(int dimension)
{
    double const half = 0.5 * dimension;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double ball_volume(int dimension, double radius)
{
    return sphere_area(dimension) * std::pow(radius, dimension) / dimension;
}

LineRule gauss_legendre(int order, double a, double b)
{
    require_order(order, "Gauss-Legendre order");
    gsl_integration_glfixed_table* table =
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
    if (table == nullptr) {
        throw InputError("gauss_legendre: table allocation failed");
    }
    LineRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &rule.nodes[i],
                                      &rule.weights[i], table);
    }
    gsl_integration_glfixed_table_free(table);
    return rule;
}

SphereRule sphere_rule(int dimension, int order)
{
    if (dimension < 2 || dimension > kMaxDimension) {
        throw InputError("sphere_rule: dimension must be in [2, " + std::to_string(kMaxDimension)
                         + "]");
    }
    require_order(order, "sphere order");
    SphereRule rule = dimension == 2 ? circle_rule(4 * order) : product_rule(dimension, order);
    rule.order = order;
    return rule;
}

SphereRule sphere_rule_split(int dimension, int order)
{
    if (dimension < 2 || dimension > kMaxDimension) {
        throw InputError("sphere_rule_split: dimension must be in [2, "
                         + std::to_string(kMaxDimension) + "]");
    }
    require_order(order, "sphere order");
    SphereRule rule = dimension == 2 ? split_circle(order) : split_product(dimension, order);
    rule.order = order;
    rule.split = true;
    return rule;
}

Reflection reflection_to(Momentum const& axis)
{
    Reflection r;
    double const norm = axis.norm();
    if (norm == 0.0) {
        return r;
    }
    r.u = -axis / norm;
    r.u(0) += 1.0;
    double const u2 = r.u.squaredNorm();
    if (u2 >= 1e-30) {
        r.scale = 2.0 / u2;
    }
    return r;
}

SphereRule oriented(SphereRule rule, Momentum const& axis)
{
    detail::require_dimension(axis, rule.dimension, "axis");
    auto const reflect = reflection_to(axis);
    if (reflect.scale == 0.0) {
        return rule;
    }
    for (auto& node : rule.nodes) {
        node = reflect(node);
    }
    return rule;
}

SphereRule mc_sample(int dimension, std::size_t count, std::uint64_t seed)
{
    if (dimension < 2 || dimension > kMaxDimension) {
        throw InputError("mc_sample: unsupported dimension");
    }
    if (count < 1) {
        throw InputError("mc_sample: count must be >= 1");
    }
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal;
    SphereRule rule;
    rule.dimension = dimension;
    rule.nodes.reserve(count);
    double const weight = sphere_area(dimension) / static_cast<double>(count);
    while (rule.nodes.size() < count) {
        Momentum x(dimension);
        for (int i = 0; i < dimension; ++i) {
            x(i) = normal(engine);
        }
        double const norm = x.norm();
        if (norm < 1e-300) {
            continue;
        }
        rule.nodes.push_back(x / norm);
    }
    rule.weights.assign(count, weight);
    return rule;
}

BallRule ball_rule(int dimension, double radius, int radial_order, int sphere_order, int panels)
{
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InputError("ball_rule: radius must be positive");
    }
    require_order(radial_order, "radial order");
    require_order(panels, "panel count");

    BallRule rule;
    rule.dimension = dimension;
    rule.radius = radius;
    rule.radial_order = radial_order;
    rule.panels = panels;
    rule.center = zero_momentum(dimension);
    rule.directions = sphere_rule(dimension, sphere_order);

    double const width = radius / panels;
    for (int k = 0; k < panels; ++k) {
        auto const line = gauss_legendre(radial_order, k * width, (k + 1) * width);
        rule.radial_nodes.insert(rule.radial_nodes.end(), line.nodes.begin(), line.nodes.end());
        rule.radial_weights.insert(rule.radial_weights.end(), line.weights.begin(),
                                   line.weights.end());
    }

    std::size_t const m = rule.directions.size();
    rule.nodes.reserve(rule.radial_nodes.size() * m);
    rule.weights.reserve(rule.radial_nodes.size() * m);
    for (std::size_t a = 0; a < rule.radial_nodes.size(); ++a) {
        double const r = rule.radial_nodes[a];
        double const radial = rule.radial_weights[a] * std::pow(r, dimension - 1);
        for (std::size_t b = 0; b < m; ++b) {
            rule.nodes.push_back(r * rule.directions.nodes[b]);
            rule.weights.push_back(radial * rule.directions.weights[b]);
        }
    }
    return rule;
}

BallRule translated(BallRule rule, Momentum const& center)
{
    detail::require_dimension(center, rule.dimension, "ball centre");
    Momentum const shift = center - rule.center;
    for (auto& node : rule.nodes) {
        node += shift;
    }
    rule.center = center;
    return rule;
}

double integrate_sphere(SphereRule const& rule, SphereFunction const& f, Execution exec)
{
    std::vector<double> values(rule.size());
    for_each_index(rule.size(), exec, [&](std::size_t i) { values[i] = f(rule.nodes[i]); });
    return pairwise_dot(rule.weights, values);
}

double integrate_ball(BallRule const& rule, SphereFunction const& f, Execution exec)
{
    std::vector<double> values(rule.size());
    for_each_index(rule.size(), exec, [&](std::size_t i) { values[i] = f(rule.nodes[i]); });
    return pairwise_dot(rule.weights, values);
}

}  // namespace relcoll
