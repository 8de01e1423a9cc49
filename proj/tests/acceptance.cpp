// One line per acceptance criterion; exit status 0 iff every line is PASS.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "relcoll/collision_operator.hpp"
#include "relcoll/com.hpp"
#include "relcoll/gs.hpp"
#include "relcoll/oracle.hpp"
#include "relcoll/verify.hpp"

using namespace relcoll;

namespace {

struct Outcome {
    bool passed = false;
    double worst = 0.0;      ///< worst residual over threshold
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;  ///< seconds, 0 for none
    std::function<Outcome()> run;
};

PhysicsConfig config(int n, double c = 1.0)
{
    PhysicsConfig cfg;
    cfg.dimension = n;
    cfg.light_speed = c;
    return cfg;
}

double rel_diff(double a, double b)
{
    double const scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

/// Several suites folded into one outcome; worst is reported relative to
/// each suite's own threshold.
Outcome from_suites(std::vector<SuiteResult> const& suites)
{
    Outcome out{true, 0.0, ""};
    for (auto const& s : suites) {
        out.passed = out.passed && s.passed;
        double const ratio = s.threshold > 0.0 ? s.worst / s.threshold : s.worst;
        out.worst = std::max(out.worst, std::isnan(ratio) ? INFINITY : ratio);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%s %.2e/%.0e", out.detail.empty() ? "" : ", ",
                      s.name.c_str(), s.worst, s.threshold);
        out.detail += buf;
    }
    return out;
}

VerifyOptions full_options()
{
    VerifyOptions o;
    o.trials = 10000;
    return o;
}

Outcome lorentz_suite()
{
    return from_suites({suite_lorentz(config(3), full_options())});
}

Outcome conservation()
{
    std::vector<SuiteResult> suites;
    for (int n : {2, 3, 4}) {
        for (auto* suite : {suite_conservation_com, suite_conservation_gs, suite_invariants}) {
            auto r = suite(config(n), full_options());
            r.name += "[n=" + std::to_string(n) + "]";
            suites.push_back(r);
        }
    }
    return from_suites(suites);
}

Outcome angles()
{
    std::vector<SuiteResult> suites;
    for (int n : {2, 3, 4}) {
        for (auto* suite : {suite_angle_com, suite_angle_gs}) {
            auto r = suite(config(n), full_options());
            r.name += "[n=" + std::to_string(n) + "]";
            suites.push_back(r);
        }
    }
    return from_suites(suites);
}

Outcome worked_point()
{
    return from_suites({suite_worked_point(config(3), full_options())});
}

Outcome equivalence_n3()
{
    VerifyOptions o = full_options();
    o.equivalence_pairs = 50;
    o.sphere_order = 32;
    o.equivalence_tolerance = 1e-8;
    return from_suites({suite_equivalence(config(3), o)});
}

Outcome jacobian()
{
    VerifyOptions o = full_options();
    o.jacobian_trials = 100;
    o.jacobian_tolerance = 1e-6;
    return from_suites({suite_jacobian(config(3), o)});
}

Outcome kernel_symmetry()
{
    double invariance = 0.0;
    double symmetry = 0.0;
    double involution = 0.0;
    for (int n : {2, 3, 4}) {
        auto const cfg = config(n);
        std::mt19937_64 engine(4242 + static_cast<std::uint64_t>(n));
        for (int t = 0; t < 10000; ++t) {
            auto const p = lift(random_momentum(engine, n, 10.0), cfg);
            auto const q = lift(random_momentum(engine, n, 10.0), cfg);
            Momentum const omega = random_unit(engine, n);
            auto const once = post_collision_gs(p, q, omega, cfg);

            double const scale = std::max(1.0, p.energy * q.spatial.norm() + q.energy * p.spatial.norm());
            double const pre = std::abs(omega.dot(kink_axis(p, q)));
            double const post = std::abs(omega.dot(kink_axis(once.p_post, once.q_post)));
            invariance = std::max(invariance, std::abs(pre - post) / scale);

            auto const k0 = kernels(p, q, omega, cfg);
            auto const k1 = kernels(once.p_post, once.q_post, omega, cfg);
            symmetry = std::max(symmetry, std::abs(k0.bn - k1.bn) / std::max(1.0, std::abs(k0.bn)));

            auto const back = post_collision_gs(once.p_post, once.q_post, omega, cfg);
            double const energy = std::max(1.0, p.energy + q.energy);
            double const defect = std::max(
                {std::abs(back.p_post.energy - p.energy), std::abs(back.q_post.energy - q.energy),
                 (back.p_post.spatial - p.spatial).cwiseAbs().maxCoeff(),
                 (back.q_post.spatial - q.spatial).cwiseAbs().maxCoeff()});
            involution = std::max(involution, defect / energy);
        }
    }
    Outcome out;
    out.passed = invariance <= 1e-10 && symmetry <= 1e-9 && involution <= 1e-9;
    out.worst = std::max({invariance / 1e-10, symmetry / 1e-9, involution / 1e-9});
    char buf[200];
    std::snprintf(buf, sizeof buf, "pre-post %.2e/1e-10, B_n %.2e/1e-09, involution %.2e/1e-09",
                  invariance, symmetry, involution);
    out.detail = buf;
    return out;
}

Outcome oracle()
{
    auto const cfg = config(2);
    std::mt19937_64 engine(8080);
    double worst = 0.0;
    std::string detail;
    for (int i = 0; i < 3; ++i) {
        auto const p = lift(random_momentum(engine, 2, 1.0), cfg);
        auto const q = lift(random_momentum(engine, 2, 1.0), cfg);
        for (auto const& [name, g] :
             {std::pair{"one", test_functions::constant()},
              std::pair{"juttner", test_functions::juttner_weighted()}}) {
            auto const r = compare_reductions(p, q, CrossSection::constant(), g, cfg);
            double const err = std::max(r.rel_err_com, r.rel_err_gs);
            worst = std::max(worst, err);
            char buf[80];
            std::snprintf(buf, sizeof buf, "%spair %d %s %.1e", detail.empty() ? "" : ", ", i, name, err);
            detail += buf;
        }
    }
    return {worst <= 0.01, worst / 0.01, detail};
}

std::vector<Momentum> operator_points()
{
    std::mt19937_64 engine(2020);
    std::vector<Momentum> points;
    for (int i = 0; i < 20; ++i) {
        points.push_back(random_momentum(engine, 3, 2.0));
    }
    return points;
}

Outcome operator_checks()
{
    auto const cfg = config(3);
    auto const sigma = CrossSection::constant();
    auto const points = operator_points();

    double imbalance = 0.0;
    auto const juttner = Distribution::juttner(1.0);
    auto const coarse = sphere_rule_split(3, 8);
    for (auto const& p : points) {
        for (auto rep : {Representation::com, Representation::gs}) {
            auto const r = collision_operator(juttner, juttner, p, sigma, rep, coarse,
                                              default_operator_ball(p, cfg, 16, 8), cfg);
            imbalance = std::max(imbalance, r.max_pointwise_imbalance);
        }
    }

    double agreement = 0.0;
    auto const bump = distribution_by_name("gaussian-bump", 3);
    auto const inner = sphere_rule_split(3, 32);
    for (auto const& p : points) {
        auto const ball = default_operator_ball(p, cfg, 48, 16);
        auto const com = collision_operator(bump, bump, p, sigma, Representation::com, inner, ball, cfg);
        auto const gs = collision_operator(bump, bump, p, sigma, Representation::gs, inner, ball, cfg);
        agreement = std::max(agreement, rel_diff(com.value, gs.value));
    }

    PhysicsConfig const planar = config(2);
    auto const bump2 = distribution_by_name("gaussian-bump", 2);
    double coarse_moment = 0.0;
    double fine_moment = 0.0;
    for (auto rep : {Representation::com, Representation::gs}) {
        auto const m1 = conservation_moments(bump2, bump2, sigma, rep, ball_rule(2, 5.0, 6, 12),
                                             sphere_rule_split(2, 16), planar);
        auto const m2 = conservation_moments(bump2, bump2, sigma, rep, ball_rule(2, 5.0, 12, 24),
                                             sphere_rule_split(2, 32), planar);
        coarse_moment = std::max(coarse_moment, m1.max_relative());
        fine_moment = std::max(fine_moment, m2.max_relative());
    }

    Outcome out;
    out.passed = imbalance <= 1e-12 && agreement <= 1e-6 && fine_moment <= 1e-4
                 && fine_moment < coarse_moment;
    out.worst = std::max({imbalance / 1e-12, agreement / 1e-6, fine_moment / 1e-4});
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "juttner imbalance %.2e/1e-12, bump com vs gs %.2e/1e-06 at %zu points, "
                  "moments %.2e -> %.2e (<= 1e-04 and shrinking)",
                  imbalance, agreement, points.size(), coarse_moment, fine_moment);
    out.detail = buf;
    return out;
}

Outcome dimension_factor()
{
    auto const exact = suite_dimension_factor(config(3), full_options());
    Outcome out = from_suites({exact});
    bool const exact_three = exact.detail.find(" 0 mismatches") != std::string::npos;

    VerifyOptions o = full_options();
    o.equivalence_pairs = 50;
    o.circle_order = 256;
    o.sphere_order = 32;
    o.equivalence_tolerance = 1e-8;
    auto two = suite_equivalence(config(2), o);
    two.name += "[n=2]";
    auto four = suite_equivalence(config(4), o);
    four.name += "[n=4]";
    Outcome const eq = from_suites({two, four});

    out.passed = out.passed && exact_three && eq.passed;
    out.worst = std::max(out.worst, eq.worst);
    out.detail = exact.detail + "; " + eq.detail;
    return out;
}

}  // namespace

int main()
{
    std::vector<Criterion> const criteria{
        {1, "Lorentz suite", 5.0, lorentz_suite},
        {2, "conservation suite", 0.0, conservation},
        {3, "angle closed forms", 0.0, angles},
        {4, "worked point", 0.0, worked_point},
        {5, "representation equivalence", 60.0, equivalence_n3},
        {6, "Jacobian", 0.0, jacobian},
        {7, "kernel symmetry and invariance", 0.0, kernel_symmetry},
        {8, "oracle", 600.0, oracle},
        {9, "operator", 0.0, operator_checks},
        {10, "dimension factor", 0.0, dimension_factor},
    };

    int failures = 0;
    for (auto const& c : criteria) {
        auto const start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (std::exception const& e) {
            out = {false, std::numeric_limits<double>::infinity(), std::string("exception: ") + e.what()};
        }
        double const seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool const in_time = c.time_limit <= 0.0 || seconds < c.time_limit;
        bool const passed = out.passed && in_time;
        failures += passed ? 0 : 1;

        char limit[48] = "";
        if (c.time_limit > 0.0) {
            std::snprintf(limit, sizeof limit, " (limit %.0fs)", c.time_limit);
        }
        std::printf("criterion %2d %s: %s | worst/threshold %.2g | %.2fs%s | %s\n", c.id,
                    passed ? "PASS" : "FAIL", c.title.c_str(), out.worst, seconds, limit,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s: %d of %zu criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
