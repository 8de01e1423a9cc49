#include "relcoll/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/QR>

#include "relcoll/com.hpp"
#include "relcoll/gs.hpp"

namespace relcoll {

namespace {

double gaussian(double x, double eps)
{
    double const z = x / eps;
    return std::exp(-0.5 * z * z) / (eps * std::sqrt(2.0 * std::numbers::pi));
}

/// Total energy of (p', p + q - p').
struct ShellPoint {
    FourMomentum p_post;
    FourMomentum q_post;
    double energy;
};

ShellPoint shell_point(Momentum const& x, Momentum const& total, PhysicsConfig const& cfg)
{
    FourMomentum pp = lift(x, cfg);
    FourMomentum qq = lift(total - x, cfg);
    double const e = pp.energy + qq.energy;
    return {std::move(pp), std::move(qq), e};
}

void check_coverage(FourMomentum const& p, FourMomentum const& q, double eps_max,
                    BallRule const& inner, PhysicsConfig const& cfg)
{
    Momentum const total = p.spatial + q.spatial;
    double const e0 = p.energy + q.energy;
    double worst = std::numeric_limits<double>::infinity();
    for (auto const& u : inner.directions.nodes) {
        auto const edge = shell_point(inner.center + inner.radius * u, total, cfg);
        worst = std::min(worst, edge.energy - e0);
    }
    if (worst < 8.0 * eps_max) {
        std::ostringstream os;
        os << "inner ball of radius " << inner.radius << " reaches only " << worst
           << " above the energy shell; need at least " << 8.0 * eps_max;
        throw CoverageError(os.str());
    }
}

/// Minkowski cosine on an arbitrary quadruple; no conservation check.
double defining_cosine(FourMomentum const& p, FourMomentum const& q, FourMomentum const& pp,
                       FourMomentum const& qq, double rho2)
{
    double const num = -(p.energy - q.energy) * (pp.energy - qq.energy)
                       + (p.spatial - q.spatial).dot(pp.spatial - qq.spatial);
    return std::clamp(num / rho2, -1.0, 1.0);
}

}  // namespace

std::vector<double> mollified_series(FourMomentum const& p, FourMomentum const& q,
                                     CrossSection const& sigma, TestFunction const& g,
                                     std::span<double const> eps, BallRule const& inner,
                                     PhysicsConfig const& cfg, Execution exec)
{
    detail::require_dimension(p, cfg.dimension, "p");
    detail::require_dimension(q, cfg.dimension, "q");
    if (inner.dimension != cfg.dimension) {
        throw InputError("mollified_I: inner rule dimension mismatch");
    }
    if (eps.empty()) {
        return {};
    }
    for (double e : eps) {
        if (!(e > 0.0)) {
            throw InputError("mollified_I: eps must be positive");
        }
    }
    double const eps_max = *std::max_element(eps.begin(), eps.end());
    check_coverage(p, q, eps_max, inner, cfg);

    auto const inv = invariants(p, q, cfg);
    double const rho2 = inv.rho * inv.rho;
    Momentum const total = p.spatial + q.spatial;
    double const e0 = p.energy + q.energy;
    double const cutoff = 40.0 * eps_max;
    std::size_t const k = eps.size();

    // per node: (s sigma G / (p'0 q'0)) and the energy defect
    std::vector<double> base(inner.size(), 0.0);
    std::vector<double> defect(inner.size(), 0.0);
    for_each_index(inner.size(), exec, [&](std::size_t i) {
        auto const pt = shell_point(inner.nodes[i], total, cfg);
        defect[i] = pt.energy - e0;
        if (std::abs(defect[i]) > cutoff || rho2 == 0.0) {
            return;
        }
        double const cosine = defining_cosine(p, q, pt.p_post, pt.q_post, rho2);
        double const value = inv.s * eval_sigma(sigma, inv.rho, cosine)
                             * g(p, q, pt.p_post, pt.q_post)
                             / (pt.p_post.energy * pt.q_post.energy);
        if (!std::isfinite(value)) {
            std::ostringstream os;
            os << "mollified_I: non-finite integrand at inner node " << i;
            throw ConsistencyError(os.str());
        }
        base[i] = value;
    });

    std::vector<double> out(k);
    std::vector<double> terms(inner.size());
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < inner.size(); ++i) {
            terms[i] = base[i] == 0.0 ? 0.0 : base[i] * gaussian(defect[i], eps[j]);
        }
        out[j] = pairwise_dot(inner.weights, terms);
    }
    return out;
}

double mollified_I(FourMomentum const& p, FourMomentum const& q, CrossSection const& sigma,
                   TestFunction const& g, double eps, BallRule const& inner,
                   PhysicsConfig const& cfg, Execution exec)
{
    double const widths[] = {eps};
    return mollified_series(p, q, sigma, g, widths, inner, cfg, exec).front();
}

double mollifier_mass_defect(FourMomentum const& p, FourMomentum const& q, double eps,
                             BallRule const& inner, PhysicsConfig const& cfg)
{
    Momentum const total = p.spatial + q.spatial;
    double const e0 = p.energy + q.energy;
    double worst = 0.0;
    std::vector<double> terms(inner.radial_nodes.size());
    for (auto const& u : inner.directions.nodes) {
        for (std::size_t a = 0; a < inner.radial_nodes.size(); ++a) {
            auto const pt = shell_point(inner.center + inner.radial_nodes[a] * u, total, cfg);
            double const slope = u.dot(pt.p_post.spatial / pt.p_post.energy
                                       - pt.q_post.spatial / pt.q_post.energy);
            terms[a] = gaussian(pt.energy - e0, eps) * slope;
        }
        double const mass = pairwise_dot(inner.radial_weights, terms);
        worst = std::max(worst, std::abs(mass - 1.0));
    }
    return worst;
}

double extrapolate(std::span<std::pair<double, double> const> estimates)
{
    if (estimates.size() < 3) {
        throw InputError("extrapolate: need at least three (eps, value) points");
    }
    for (std::size_t i = 1; i < estimates.size(); ++i) {
        if (!(estimates[i].first < estimates[i - 1].first)) {
            throw InputError("extrapolate: eps must be strictly decreasing");
        }
    }
    Eigen::MatrixXd design(estimates.size(), 2);
    Eigen::VectorXd rhs(estimates.size());
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        double const e = estimates[i].first;
        design(static_cast<Eigen::Index>(i), 0) = 1.0;
        design(static_cast<Eigen::Index>(i), 1) = e * e;
        rhs(static_cast<Eigen::Index>(i)) = estimates[i].second;
    }
    Eigen::VectorXd const coeffs = design.colPivHouseholderQr().solve(rhs);
    return coeffs(0);
}

double reduced_com_value(FourMomentum const& p, FourMomentum const& q, CrossSection const& sigma,
                         TestFunction const& g, SphereRule const& rule, PhysicsConfig const& cfg)
{
    int const n = cfg.dimension;
    auto const inv = invariants(p, q, cfg);
    if (inv.rho <= cfg.tol_algebra) {
        return 0.0;
    }
    Momentum const k = k_vector_boost(p, q, cfg);
    double const k_norm = k.norm();
    double const integral = integrate_sphere(rule, [&](Momentum const& omega) {
        double const cosine = std::clamp(k.dot(omega) / k_norm, -1.0, 1.0);
        auto const post = post_collision_boost(p, q, omega, cfg);
        return eval_sigma(sigma, inv.rho, cosine) * g(p, q, post.p_post, post.q_post);
    });
    return std::pow(2.0, 2 - n) * std::pow(inv.rho, n - 2) * std::sqrt(inv.s) * integral;
}

double reduced_gs_value(FourMomentum const& p, FourMomentum const& q, CrossSection const& sigma,
                        TestFunction const& g, SphereRule const& rule, PhysicsConfig const& cfg)
{
    int const n = cfg.dimension;
    auto const inv = invariants(p, q, cfg);
    if (inv.rho <= cfg.tol_algebra) {
        return 0.0;
    }
    SphereRule const aligned = rule.split ? oriented(rule, kink_axis(p, q)) : rule;
    double const integral = integrate_sphere(aligned, [&](Momentum const& omega) {
        auto const geo = post_collision_gs(p, q, omega, cfg);
        if (geo.kernel_bn == 0.0) {
            return 0.0;
        }
        return inv.s * eval_sigma(sigma, inv.rho, *geo.cos_theta) * geo.kernel_bn
               * g(p, q, geo.p_post, geo.q_post);
    });
    return 2.0 / cfg.light_speed * std::pow(0.5 * inv.rho, n - 3) * integral;
}

OracleReport compare_reductions(FourMomentum const& p, FourMomentum const& q,
                                CrossSection const& sigma, TestFunction const& g,
                                PhysicsConfig const& cfg, OracleOptions const& options)
{
    cfg.validate();
    sigma.validate();
    int const n = cfg.dimension;
    if (n > 3 && !options.allow_high_dimension) {
        throw InputError("oracle runs are limited to n <= 3 (cost grows steeply); pass --force to "
                         "run at n = " + std::to_string(n));
    }
    if (options.eps_factors.size() < 3) {
        throw InputError("oracle needs at least three eps factors");
    }
    detail::require_dimension(p, n, "p");
    detail::require_dimension(q, n, "q");

    OracleReport report;
    auto const inv = invariants(p, q, cfg);
    if (inv.rho <= cfg.tol_algebra) {
        for (double f : options.eps_factors) {
            report.raw_estimates.emplace_back(f * cfg.light_speed, 0.0);
        }
        return report;
    }

    int const reduced_order =
        options.reduced_sphere_order > 0 ? options.reduced_sphere_order : (n == 2 ? 64 : 32);
    int const inner_order =
        options.inner_sphere_order > 0 ? options.inner_sphere_order : (n == 2 ? 128 : 24);
    SphereRule const reduced_rule = sphere_rule_split(n, reduced_order);
    report.com_value = reduced_com_value(p, q, sigma, g, reduced_rule, cfg);
    report.gs_value = reduced_gs_value(p, q, sigma, g, reduced_rule, cfg);

    Momentum const total = p.spatial + q.spatial;
    double const e0 = p.energy + q.energy;
    double const e_min = std::sqrt(4.0 * cfg.c2() + total.squaredNorm());
    report.threshold_gap = inv.rho * inv.rho / (e0 + e_min);
    double const largest =
        *std::max_element(options.eps_factors.begin(), options.eps_factors.end());
    double const smallest =
        *std::min_element(options.eps_factors.begin(), options.eps_factors.end());
    report.eps_scale = std::min(cfg.light_speed, report.threshold_gap / (6.0 * largest));

    std::vector<double> eps;
    for (double f : options.eps_factors) {
        eps.push_back(f * report.eps_scale);
    }
    double const eps_min = smallest * report.eps_scale;
    double const eps_max = largest * report.eps_scale;

    // centre on the shell's centre (p+q)/2; grow until the shell is covered
    Momentum const center = 0.5 * total;
    double radius = p.spatial.norm() + q.spatial.norm() + inv.rho;
    BallRule inner;
    for (int attempt = 0;; ++attempt) {
        int const panels = std::clamp(static_cast<int>(std::ceil(radius / eps_min)), 1,
                                      options.max_panels);
        inner = translated(ball_rule(n, radius, options.panel_order, inner_order, panels), center);
        try {
            check_coverage(p, q, eps_max, inner, cfg);
            break;
        } catch (CoverageError const&) {
            if (attempt >= 8) {
                throw;
            }
            radius *= 1.5;
        }
    }
    report.inner_radius = radius;
    report.inner_nodes = inner.size();

    report.mollifier_mass_defect = std::max(mollifier_mass_defect(p, q, eps_min, inner, cfg),
                                            mollifier_mass_defect(p, q, eps_max, inner, cfg));
    if (report.mollifier_mass_defect > options.mass_tolerance) {
        std::ostringstream os;
        os << "discretised mollifier mass deviates from 1 by " << report.mollifier_mass_defect
           << " (tolerance " << options.mass_tolerance << "); refine the inner rule";
        throw CoverageError(os.str());
    }

    auto const values = mollified_series(p, q, sigma, g, eps, inner, cfg, options.exec);
    std::vector<std::pair<double, double>> estimates;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        estimates.emplace_back(eps[i], values[i]);
    }
    std::sort(estimates.begin(), estimates.end(),
              [](auto const& a, auto const& b) { return a.first > b.first; });
    report.raw_estimates = estimates;
    report.extrapolated = extrapolate(estimates);

    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-12); };
    report.rel_err_com = rel(report.extrapolated, report.com_value);
    report.rel_err_gs = rel(report.extrapolated, report.gs_value);
    return report;
}

}  // namespace relcoll
