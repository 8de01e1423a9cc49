#include "relcoll/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/QR>

#include "relcoll/collision_operator.hpp"
#include "relcoll/com.hpp"
#include "relcoll/gs.hpp"
#include "relcoll/lorentz.hpp"
#include "relcoll/quadrature.hpp"

namespace relcoll {

Momentum random_unit(std::mt19937_64& engine, int dimension)
{
    std::normal_distribution<double> normal;
    for (;;) {
        Momentum x(dimension);
        for (int i = 0; i < dimension; ++i) {
            x(i) = normal(engine);
        }
        double const norm = x.norm();
        if (norm > 1e-12) {
            return x / norm;
        }
    }
}

Momentum random_momentum(std::mt19937_64& engine, int dimension, double bound)
{
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Momentum const u = random_unit(engine, dimension);
    double const r = bound * std::pow(uniform(engine), 1.0 / dimension);
    return r * u;
}

Eigen::MatrixXd random_rotation(std::mt19937_64& engine, int dimension)
{
    std::normal_distribution<double> normal;
    Eigen::MatrixXd a(dimension, dimension);
    for (int i = 0; i < dimension; ++i) {
        for (int j = 0; j < dimension; ++j) {
            a(i, j) = normal(engine);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd qm = qr.householderQ();
    Eigen::MatrixXd const r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dimension; ++j) {
        if (r(j, j) < 0.0) {
            qm.col(j) *= -1.0;
        }
    }
    if (qm.determinant() < 0.0) {
        qm.col(0) *= -1.0;
    }
    return qm;
}

bool VerifyReport::all_passed() const
{
    return std::all_of(suites.begin(), suites.end(), [](auto const& s) { return s.passed; });
}

namespace {

/// Running worst residual; NaN counts as infinitely bad.
struct Worst {
    double value = 0.0;
    void add(double r)
    {
        if (std::isnan(r)) {
            value = std::numeric_limits<double>::infinity();
        } else {
            value = std::max(value, r);
        }
    }
};

double max_abs(FourVector const& v)
{
    return v.cwiseAbs().maxCoeff();
}

double pair_defect(CollisionPair const& a, CollisionPair const& b)
{
    return std::max(max_abs(a.p_post.components() - b.p_post.components()),
                    max_abs(a.q_post.components() - b.q_post.components()));
}

double shell_defect(FourMomentum const& p, PhysicsConfig const& cfg)
{
    return std::abs(p.energy - std::sqrt(cfg.c2() + p.spatial.squaredNorm()));
}

template <class Body>
SuiteResult run_suite(std::string name, double threshold, Body&& body)
{
    SuiteResult result;
    result.name = std::move(name);
    result.threshold = threshold;
    try {
        Worst worst;
        result.trials = body(worst, result.detail);
        result.worst = worst.value;
        result.passed = worst.value <= threshold;
    } catch (std::exception const& e) {
        result.passed = false;
        result.worst = std::numeric_limits<double>::infinity();
        result.detail = std::string("exception: ") + e.what();
    }
    return result;
}

struct Sample {
    FourMomentum p;
    FourMomentum q;
    Momentum omega;
};

Sample draw(std::mt19937_64& engine, PhysicsConfig const& cfg, double bound)
{
    int const n = cfg.dimension;
    Sample s;
    s.p = lift(random_momentum(engine, n, bound), cfg);
    s.q = lift(random_momentum(engine, n, bound), cfg);
    s.omega = random_unit(engine, n);
    return s;
}

/// Conservation, mass shell, rho and s for one post-collision pair.
double collision_defect(FourMomentum const& p, FourMomentum const& q, CollisionPair const& post,
                        PhysicsConfig const& cfg)
{
    double d = max_abs(post.p_post.components() + post.q_post.components() - p.components()
                       - q.components());
    d = std::max(d, shell_defect(post.p_post, cfg));
    d = std::max(d, shell_defect(post.q_post, cfg));
    auto const before = invariants(p, q, cfg);
    auto const after = invariants(post.p_post, post.q_post, cfg);
    d = std::max(d, std::abs(before.rho - after.rho));
    d = std::max(d, std::abs(before.s - after.s));
    return d;
}

}  // namespace

SuiteResult suite_lorentz(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("lorentz", 10.0 * cfg.tol_algebra, [&](Worst& worst, std::string& detail) {
        std::mt19937_64 engine(opts.seed + 1);
        int const dims[] = {2, 3, 4};
        double const speeds[] = {0.5, 1.0, 3.0};
        std::size_t proper_failures = 0;
        for (std::size_t t = 0; t < opts.trials; ++t) {
            PhysicsConfig local = cfg;
            local.dimension = dims[t % 3];
            local.light_speed = speeds[(t / 3) % 3];
            auto const s = draw(engine, local, opts.momentum_bound);
            auto const boost = boost_to_com(s.p, s.q, local);
            worst.add(metric_defect(boost));
            worst.add(std::abs(boost.entries().determinant() - 1.0));
            auto const r = com_frame_residual(boost, s.p, s.q, local);
            worst.add(r.total / std::max(1.0, s.p.energy + s.q.energy));
            worst.add(r.time_of_difference / std::max(1.0, s.p.energy + s.q.energy));
            auto const inverse = invert(boost, local);
            worst.add(((inverse * boost).entries()
                       - SpacetimeMatrix::identity(local.dimension).entries())
                          .cwiseAbs()
                          .maxCoeff());
            if (!is_proper_lorentz(boost, local)) {
                ++proper_failures;
            }
        }
        if (proper_failures > 0) {
            worst.add(std::numeric_limits<double>::infinity());
            detail = std::to_string(proper_failures) + " boosts rejected by is_proper_lorentz";
        } else {
            detail = "n in {2,3,4}, c in {0.5,1,3}";
        }
        return opts.trials;
    });
}

SuiteResult suite_invariants(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("invariants", cfg.tol_algebra, [&](Worst& worst, std::string&) {
        std::mt19937_64 engine(opts.seed + 2);
        double const c2 = cfg.c2();
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s = draw(engine, cfg, opts.momentum_bound);
            worst.add(std::abs(s.p.energy * s.p.energy - s.p.spatial.squaredNorm() - c2)
                      / (s.p.energy * s.p.energy));
            worst.add(std::abs(lorentz_inner(s.p, s.p) + c2) / (s.p.energy * s.p.energy));
            auto const a = invariants(s.p, s.q, cfg);
            auto const b = invariants(s.q, s.p, cfg);
            worst.add(std::abs(a.s - a.rho * a.rho - 4.0 * c2) / a.s);
            worst.add(std::max({std::abs(a.rho - b.rho), std::abs(a.s - b.s),
                                std::abs(a.moller - b.moller)}));
        }
        return opts.trials;
    });
}

SuiteResult suite_conservation_com(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("conservation-com", cfg.tol_algebra, [&](Worst& worst, std::string&) {
        std::mt19937_64 engine(opts.seed + 3);
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s = draw(engine, cfg, opts.momentum_bound);
            auto const boost = boost_to_com(s.p, s.q, cfg);
            auto const generic = post_collision_com(boost, s.p, s.q, s.omega, cfg);
            auto const closed = post_collision_boost(s.p, s.q, s.omega, cfg);
            worst.add(collision_defect(s.p, s.q, generic, cfg));
            worst.add(collision_defect(s.p, s.q, closed, cfg));
            worst.add(pair_defect(generic, closed));
            auto const k = k_vector(boost, s.p, s.q, cfg);
            worst.add(std::abs(k.norm() - invariants(s.p, s.q, cfg).rho));
        }
        return opts.trials;
    });
}

SuiteResult suite_conservation_gs(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("conservation-gs", cfg.tol_algebra, [&](Worst& worst, std::string& detail) {
        std::mt19937_64 engine(opts.seed + 4);
        double min_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s = draw(engine, cfg, opts.momentum_bound);
            auto const geo = post_collision_gs(s.p, s.q, s.omega, cfg);
            worst.add(collision_defect(s.p, s.q, {geo.p_post, geo.q_post}, cfg));
            worst.add(std::abs(geo.p_post.energy - (s.p.energy + geo.n0)));
            worst.add(std::abs(geo.q_post.energy - (s.q.energy - geo.n0)));
            if (!(geo.d1 > 0.0)) {
                worst.add(std::numeric_limits<double>::infinity());
            }
            min_ratio = std::min(min_ratio, geo.d1 / (4.0 * cfg.c2()));
        }
        std::ostringstream os;
        os << "min D1/(4c^2) = " << min_ratio;
        detail = os.str();
        return opts.trials;
    });
}

SuiteResult suite_angle_com(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("angle-com", 10.0 * cfg.tol_algebra, [&](Worst& worst, std::string&) {
        std::mt19937_64 engine(opts.seed + 5);
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s = draw(engine, cfg, opts.momentum_bound);
            auto const geo = com_geometry(s.p, s.q, s.omega, cfg);
            double const defined = scattering_cosine(s.p, s.q, geo.p_post, geo.q_post, cfg);
            worst.add(std::abs(defined - geo.cos_theta));
        }
        return opts.trials;
    });
}

SuiteResult suite_angle_gs(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("angle-gs", 10.0 * cfg.tol_algebra, [&](Worst& worst, std::string&) {
        std::mt19937_64 engine(opts.seed + 6);
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s = draw(engine, cfg, opts.momentum_bound);
            auto const geo = post_collision_gs(s.p, s.q, s.omega, cfg);
            double const defined = scattering_cosine(s.p, s.q, geo.p_post, geo.q_post, cfg);
            worst.add(std::abs(defined - gs_cosine(s.p, s.q, s.omega, cfg)));
        }
        return opts.trials;
    });
}

SuiteResult suite_com_frames(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("com-frames", 10.0 * cfg.tol_algebra, [&](Worst& worst, std::string& detail) {
        std::mt19937_64 engine(opts.seed + 7);
        int const n = cfg.dimension;
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s = draw(engine, cfg, opts.momentum_bound);
            double const scale = std::max(1.0, s.p.energy + s.q.energy);
            auto const boost = boost_to_com(s.p, s.q, cfg);

            // a rotated COM map: outputs at omega equal boost outputs at R^T omega
            Eigen::MatrixXd const rot = random_rotation(engine, n);
            SpacetimeMatrix::Storage spin = SpacetimeMatrix::identity(n).entries();
            spin.bottomRightCorner(n, n) = rot;
            SpacetimeMatrix const rotated(SpacetimeMatrix::Storage(spin * boost.entries()));
            if (!check_com_frame(rotated, s.p, s.q, cfg)) {
                worst.add(std::numeric_limits<double>::infinity());
            }
            Momentum const back = rot.transpose() * s.omega;
            worst.add(pair_defect(post_collision_com(rotated, s.p, s.q, s.omega, cfg),
                                  post_collision_com(boost, s.p, s.q, back, cfg))
                      / scale);

            // antipode swaps the pair
            auto const fwd = post_collision_boost(s.p, s.q, s.omega, cfg);
            auto const rev = post_collision_boost(s.p, s.q, Momentum(-s.omega), cfg);
            worst.add(pair_defect(fwd, {rev.q_post, rev.p_post}) / scale);

            // omega = k/|k| is the identity collision
            Momentum const k = k_vector_boost(s.p, s.q, cfg);
            if (k.norm() > 1e-3) {
                auto const same = post_collision_boost(s.p, s.q, Momentum(k / k.norm()), cfg);
                worst.add(pair_defect(same, {s.p, s.q}) / scale);
            }
        }
        detail = "rotated COM maps, antipodes, identity collision";
        return opts.trials;
    });
}

SuiteResult suite_kernel_symmetry(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("kernel-symmetry", 10.0 * cfg.tol_algebra, [&](Worst& worst, std::string&) {
        std::mt19937_64 engine(opts.seed + 8);
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s = draw(engine, cfg, opts.momentum_bound);
            auto const geo = post_collision_gs(s.p, s.q, s.omega, cfg);
            Momentum const before = kink_axis(s.p, s.q);
            Momentum const after = kink_axis(geo.q_post, geo.p_post);
            double const scale = std::max(
                1.0, s.p.energy * s.q.spatial.norm() + s.q.energy * s.p.spatial.norm());
            worst.add(std::abs(s.omega.dot(before) - s.omega.dot(after)) / scale);

            auto const k0 = kernels(s.p, s.q, s.omega, cfg);
            auto const k1 = kernels(geo.p_post, geo.q_post, s.omega, cfg);
            worst.add(std::abs(k0.bn - k1.bn) / std::max(1.0, std::abs(k0.bn)));

            auto const back = post_collision_gs(geo.p_post, geo.q_post, s.omega, cfg);
            double const pscale = std::max(1.0, s.p.energy + s.q.energy);
            worst.add(pair_defect({back.p_post, back.q_post}, {s.p, s.q}) / pscale);
        }
        return opts.trials;
    });
}

SuiteResult suite_dimension_factor(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("dimension-factor", 10.0 * cfg.tol_algebra,
                     [&](Worst& worst, std::string& detail) {
        std::mt19937_64 engine(opts.seed + 9);
        PhysicsConfig three = cfg;
        three.dimension = 3;
        std::size_t mismatches = 0;
        for (std::size_t t = 0; t < opts.trials; ++t) {
            auto const s3 = draw(engine, three, opts.momentum_bound);
            auto const k3 = kernels(s3.p, s3.q, s3.omega, three);
            if (k3.bn != k3.b) {
                ++mismatches;
                worst.add(std::abs(k3.bn - k3.b) / std::max(1.0, std::abs(k3.b)));
            }
            auto const s = draw(engine, cfg, opts.momentum_bound);
            auto const k = kernels(s.p, s.q, s.omega, cfg);
            auto const inv = invariants(s.p, s.q, cfg);
            if (inv.rho > cfg.tol_algebra) {
                double const expected = k.b * std::pow(k.a, cfg.dimension - 3);
                worst.add(std::abs(k.bn - expected) / std::max(1.0, std::abs(expected)));
            }
        }
        detail = "n = 3 exact matches B_n == B; " + std::to_string(mismatches) + " mismatches";
        return opts.trials;
    });
}

SuiteResult suite_jacobian(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("jacobian", opts.jacobian_tolerance, [&](Worst& worst, std::string&) {
        std::mt19937_64 engine(opts.seed + 10);
        for (std::size_t t = 0; t < opts.jacobian_trials; ++t) {
            auto const s = draw(engine, cfg, opts.equivalence_bound);
            double const closed = jacobian_prepost(s.p, s.q, s.omega, cfg);
            double const fd = jacobian_prepost_fd(s.p.spatial, s.q.spatial, s.omega, cfg);
            worst.add(std::abs(closed - fd) / std::abs(closed));
        }
        return opts.jacobian_trials;
    });
}

SuiteResult suite_equivalence(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    return run_suite("equivalence", opts.equivalence_tolerance,
                     [&](Worst& worst, std::string& detail) {
        std::mt19937_64 engine(opts.seed + 11);
        int const order = cfg.dimension == 2 ? opts.circle_order : opts.sphere_order;
        SphereRule const rule = sphere_rule_split(cfg.dimension, order);
        CrossSection const sigmas[] = {CrossSection::constant(),
                                       CrossSection::power_law(1.0, 1.0, 0.0)};
        TestFunction const tests[] = {test_functions::constant(),
                                      test_functions::energy_difference(),
                                      test_functions::gaussian_post()};
        for (std::size_t t = 0; t < opts.equivalence_pairs; ++t) {
            auto const s = draw(engine, cfg, opts.equivalence_bound);
            for (auto const& sigma : sigmas) {
                for (auto const& g : tests) {
                    double const lhs = sphere_integral(Representation::com, s.p, s.q, sigma, g,
                                                       rule, cfg, Execution::parallel);
                    double const rhs = sphere_integral(Representation::gs, s.p, s.q, sigma, g,
                                                       rule, cfg, Execution::parallel);
                    double const scale = std::max(std::abs(lhs), std::abs(rhs));
                    worst.add(scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0);
                }
            }
        }
        std::ostringstream os;
        os << "sphere order " << order << " (" << rule.size() << " nodes), 2 sigma x 3 G";
        detail = os.str();
        return opts.equivalence_pairs;
    });
}

SuiteResult suite_worked_point(PhysicsConfig const& cfg, VerifyOptions const&)
{
    return run_suite("worked-point", 1e-7, [&](Worst& worst, std::string&) {
        PhysicsConfig local = cfg;
        local.dimension = 3;
        local.light_speed = 1.0;
        auto const p = lift(make_momentum({1.0, 0.0, 0.0}), local);
        auto const q = lift(make_momentum({0.0, 0.0, 0.0}), local);
        Momentum const omega = make_momentum({1.0, 0.0, 0.0});
        double const root2 = std::numbers::sqrt2;

        auto const inv = invariants(p, q, local);
        auto const geo = post_collision_gs(p, q, omega, local);
        worst.add(std::abs(inv.rho * std::sqrt(inv.s) - 2.0));
        worst.add(std::abs(inv.moller - root2 / 4.0));
        worst.add(std::abs(geo.a + 1.0));
        worst.add(std::abs(gs_cosine(p, q, omega, local) + 1.0));
        worst.add(std::abs(geo.n0 - (1.0 - root2)));
        worst.add(std::abs(geo.kernel_b - 0.25));
        worst.add(std::abs(geo.d1 - (2.0 + 2.0 * root2)));
        worst.add(std::abs(geo.d2 + (1.0 + root2)));
        return std::size_t{1};
    });
}

VerifyReport run_verification(PhysicsConfig const& cfg, VerifyOptions const& opts)
{
    cfg.validate();
    VerifyReport report;
    report.suites.push_back(suite_lorentz(cfg, opts));
    report.suites.push_back(suite_invariants(cfg, opts));
    report.suites.push_back(suite_conservation_com(cfg, opts));
    report.suites.push_back(suite_conservation_gs(cfg, opts));
    report.suites.push_back(suite_angle_com(cfg, opts));
    report.suites.push_back(suite_angle_gs(cfg, opts));
    report.suites.push_back(suite_com_frames(cfg, opts));
    report.suites.push_back(suite_kernel_symmetry(cfg, opts));
    report.suites.push_back(suite_dimension_factor(cfg, opts));
    report.suites.push_back(suite_jacobian(cfg, opts));
    report.suites.push_back(suite_equivalence(cfg, opts));
    report.suites.push_back(suite_worked_point(cfg, opts));
    return report;
}

}  // namespace relcoll
