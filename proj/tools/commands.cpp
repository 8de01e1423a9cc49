#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "relcoll/collision_operator.hpp"
#include "relcoll/com.hpp"
#include "relcoll/gs.hpp"
#include "relcoll/lorentz.hpp"
#include "relcoll/oracle.hpp"
#include "relcoll/quadrature.hpp"
#include "relcoll/verify.hpp"

namespace relcoll::cli {

namespace {

nlohmann::json vec_json(Momentum const& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json four_json(FourMomentum const& v)
{
    nlohmann::json j = nlohmann::json::array({v.energy});
    for (Eigen::Index i = 0; i < v.spatial.size(); ++i) {
        j.push_back(v.spatial(i));
    }
    return j;
}

nlohmann::json optional_json(std::optional<double> v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void append(std::vector<std::string>& row, Momentum const& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        row.push_back(csv_number(v(i)));
    }
}

void append(std::vector<std::string>& row, FourMomentum const& v)
{
    row.push_back(csv_number(v.energy));
    append(row, v.spatial);
}

void indexed(std::vector<std::string>& header, std::string const& stem, int first, int last)
{
    for (int i = first; i <= last; ++i) {
        header.push_back(stem + std::to_string(i));
    }
}

std::string csv_field(std::string const& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    return quoted + "\"";
}

int sphere_order_or(RunConfig const& cfg, int fallback)
{
    return cfg.sphere_order > 0 ? cfg.sphere_order : fallback;
}

struct Pair {
    FourMomentum p;
    FourMomentum q;
};

Pair parse_pair(RunConfig const& cfg, PairArgs const& args)
{
    int const n = cfg.physics.dimension;
    return {lift(parse_vector(args.p, n, "p"), cfg.physics),
            lift(parse_vector(args.q, n, "q"), cfg.physics)};
}

Momentum parse_omega(RunConfig const& cfg, std::string const& text)
{
    Momentum omega = parse_vector(text, cfg.physics.dimension, "omega");
    try {
        detail::require_unit(omega, cfg.physics);
    } catch (InputError const& e) {
        throw ConfigError(e.what());
    }
    return omega;
}

TestFunction named_test(std::string const& name)
{
    try {
        return test_function_by_name(name);
    } catch (InputError const& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

std::string csv_number(std::optional<double> value)
{
    if (!value) {
        return "";
    }
    char buf[64];
    auto const end = std::to_chars(buf, buf + sizeof buf, *value).ptr;
    return std::string(buf, end);
}

void emit(RunConfig const& cfg, Output const& out)
{
    std::ostringstream text;
    if (cfg.format == Format::json) {
        nlohmann::json record = out.record;
        record["config"] = to_json(cfg);
        text << record.dump(2) << '\n';
    } else {
        text << "# config: " << to_json(cfg).dump() << '\n';
        for (std::size_t i = 0; i < out.header.size(); ++i) {
            text << (i ? "," : "") << csv_field(out.header[i]);
        }
        text << '\n';
        for (auto const& row : out.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                text << (i ? "," : "") << csv_field(row[i]);
            }
            text << '\n';
        }
    }
    if (cfg.out.empty()) {
        std::cout << text.str() << std::flush;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot write output file '" + cfg.out + "'");
    }
    file << text.str();
}

std::vector<Momentum> read_points(std::string const& path, int dimension)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open points file '" + path + "'");
    }
    std::vector<Momentum> points;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto const first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        auto const last = line.find_last_not_of(" \t\r");
        std::string const what = path + ":" + std::to_string(line_no);
        points.push_back(parse_vector(line.substr(first, last - first + 1), dimension, what.c_str()));
    }
    return points;
}

//---------------------------------------------------------------------------//

int cmd_verify(RunConfig const& cfg, VerifyArgs const& args)
{
    VerifyOptions opts;
    opts.trials = args.trials;
    opts.equivalence_pairs = args.pairs;
    opts.seed = cfg.seed;
    if (cfg.sphere_order > 0) {
        opts.sphere_order = cfg.sphere_order;
        opts.circle_order = cfg.sphere_order;
    }
    auto const report = run_verification(cfg.physics, opts);

    Output out;
    out.record["command"] = "verify";
    out.record["passed"] = report.all_passed();
    out.record["suites"] = nlohmann::json::array();
    out.header = {"suite", "passed", "worst", "threshold", "trials", "detail"};
    for (auto const& s : report.suites) {
        out.record["suites"].push_back({{"name", s.name},
                                        {"passed", s.passed},
                                        {"worst", std::isfinite(s.worst) ? nlohmann::json(s.worst)
                                                                         : nlohmann::json("inf")},
                                        {"threshold", s.threshold},
                                        {"trials", s.trials},
                                        {"detail", s.detail}});
        out.rows.push_back({s.name, s.passed ? "pass" : "fail", csv_number(s.worst),
                            csv_number(s.threshold), std::to_string(s.trials), s.detail});
    }
    emit(cfg, out);
    for (auto const& s : report.suites) {
        if (!s.passed) {
            std::cerr << "suite " << s.name << " failed: worst " << s.worst << " > "
                      << s.threshold << (s.detail.empty() ? "" : " (" + s.detail + ")") << '\n';
        }
    }
    return report.all_passed() ? exit_ok : exit_verification;
}

int cmd_kinematics(RunConfig const& cfg, PairArgs const& args)
{
    auto const& phys = cfg.physics;
    int const n = phys.dimension;
    auto const [p, q] = parse_pair(cfg, args);
    auto const inv = invariants(p, q, phys);
    auto const boost = boost_to_com(p, q, phys);
    Momentum const k = k_vector_boost(p, q, phys);

    Output out;
    auto& r = out.record;
    r["command"] = "kinematics";
    r["p"] = four_json(p);
    r["q"] = four_json(q);
    r["rho"] = inv.rho;
    r["s"] = inv.s;
    r["moller"] = inv.moller;
    r["lorentz_inner"] = lorentz_inner(p, q);
    r["k"] = vec_json(k);
    nlohmann::json rows = nlohmann::json::array();
    for (int mu = 0; mu <= n; ++mu) {
        nlohmann::json row = nlohmann::json::array();
        for (int nu = 0; nu <= n; ++nu) {
            row.push_back(boost(mu, nu));
        }
        rows.push_back(row);
    }
    r["boost"] = rows;
    r["boost_is_proper"] = is_proper_lorentz(boost, phys);
    r["boost_reaches_com"] = check_com_frame(boost, p, q, phys);

    out.header = {"p0", "q0", "rho", "s", "moller", "lorentz_inner"};
    indexed(out.header, "k_", 1, n);
    std::vector<std::string> row = {csv_number(p.energy),  csv_number(q.energy),
                                    csv_number(inv.rho),   csv_number(inv.s),
                                    csv_number(inv.moller), csv_number(lorentz_inner(p, q))};
    append(row, k);

    if (args.omega) {
        Momentum const omega = parse_omega(cfg, *args.omega);
        auto const com = com_geometry(p, q, omega, phys);
        auto const gs = post_collision_gs(p, q, omega, phys);
        r["omega"] = vec_json(omega);
        r["cos_theta_com"] = inv.rho > phys.tol_algebra ? nlohmann::json(com.cos_theta) : nullptr;
        r["cos_theta_gs"] = optional_json(gs.cos_theta);
        r["kernels"] = {{"B", gs.kernel_b}, {"A", gs.kernel_a}, {"B_n", gs.kernel_bn}};
        out.header.insert(out.header.end(), {"cos_theta_com", "cos_theta_gs", "B", "A", "B_n"});
        row.push_back(csv_number(inv.rho > phys.tol_algebra ? std::optional(com.cos_theta)
                                                            : std::nullopt));
        row.push_back(csv_number(gs.cos_theta));
        row.push_back(csv_number(gs.kernel_b));
        row.push_back(csv_number(gs.kernel_a));
        row.push_back(csv_number(gs.kernel_bn));
    }
    out.rows.push_back(row);

    if (args.kernel_table) {
        int const order = sphere_order_or(cfg, 4);
        SphereRule const rule = sphere_rule(n, order);
        r["kernel_table"] = nlohmann::json::array();
        r["kernel_table_order"] = order;
        out.header.clear();
        out.rows.clear();
        indexed(out.header, "omega_", 1, n);
        out.header.insert(out.header.end(), {"B", "A", "B_n", "cos_theta_gs"});
        for (auto const& omega : rule.nodes) {
            auto const gs = post_collision_gs(p, q, omega, phys);
            r["kernel_table"].push_back({{"omega", vec_json(omega)},
                                         {"B", gs.kernel_b},
                                         {"A", gs.kernel_a},
                                         {"B_n", gs.kernel_bn},
                                         {"cos_theta_gs", optional_json(gs.cos_theta)}});
            std::vector<std::string> trow;
            append(trow, omega);
            trow.push_back(csv_number(gs.kernel_b));
            trow.push_back(csv_number(gs.kernel_a));
            trow.push_back(csv_number(gs.kernel_bn));
            trow.push_back(csv_number(gs.cos_theta));
            out.rows.push_back(trow);
        }
    }
    emit(cfg, out);
    return exit_ok;
}

int cmd_postcollision(RunConfig const& cfg, PairArgs const& args)
{
    auto const& phys = cfg.physics;
    int const n = phys.dimension;
    auto const [p, q] = parse_pair(cfg, args);
    if (!args.omega) {
        throw ConfigError("postcollision needs --omega");
    }
    Momentum const omega = parse_omega(cfg, *args.omega);

    Output out;
    auto& r = out.record;
    r["command"] = "postcollision";
    r["p"] = four_json(p);
    r["q"] = four_json(q);
    r["omega"] = vec_json(omega);
    r["note"] = "com and gs parameterise omega differently: at the same omega their (p', q') "
                "generally differ, while the omega-integrated families coincide";

    out.header = {"representation"};
    indexed(out.header, "p_post_", 0, n);
    indexed(out.header, "q_post_", 0, n);
    out.header.push_back("cos_theta");
    indexed(out.header, "k_", 1, n);
    out.header.insert(out.header.end(), {"a", "N0", "D1", "D2", "B", "A", "B_n", "reason"});

    // COM: boost map
    auto const com = com_geometry(p, q, omega, phys);
    std::optional<std::string> reason;
    try {
        (void)scattering_cosine(p, q, com.p_post, com.q_post, phys);
    } catch (DegenerateAngleError const& e) {
        reason = e.what();
    }
    std::vector<std::string> com_row = {"com"};
    if (reason) {
        r["com"] = nullptr;
        r["com_reason"] = *reason;
        com_row.resize(out.header.size() - 1);
        com_row.push_back(*reason);
    } else {
        r["com"] = {{"p_post", four_json(com.p_post)},
                    {"q_post", four_json(com.q_post)},
                    {"cos_theta", com.cos_theta},
                    {"k", vec_json(com.k)}};
        append(com_row, com.p_post);
        append(com_row, com.q_post);
        com_row.push_back(csv_number(com.cos_theta));
        append(com_row, com.k);
        com_row.resize(out.header.size());
    }
    out.rows.push_back(com_row);

    auto const gs = post_collision_gs(p, q, omega, phys);
    r["gs"] = {{"p_post", four_json(gs.p_post)},
               {"q_post", four_json(gs.q_post)},
               {"cos_theta", optional_json(gs.cos_theta)},
               {"a", gs.a},
               {"N0", gs.n0},
               {"D1", gs.d1},
               {"D2", gs.d2},
               {"B", gs.kernel_b},
               {"A", gs.kernel_a},
               {"B_n", gs.kernel_bn}};
    if (!gs.cos_theta) {
        r["gs_cos_theta_reason"] = "scattering angle undefined for rho = 0 (p = q)";
    }
    std::vector<std::string> gs_row = {"gs"};
    append(gs_row, gs.p_post);
    append(gs_row, gs.q_post);
    gs_row.push_back(csv_number(gs.cos_theta));
    for (int i = 0; i < n; ++i) {
        gs_row.emplace_back();
    }
    for (double v : {gs.a, gs.n0, gs.d1, gs.d2, gs.kernel_b, gs.kernel_a, gs.kernel_bn}) {
        gs_row.push_back(csv_number(v));
    }
    gs_row.push_back(gs.cos_theta ? "" : "scattering angle undefined for rho = 0");
    out.rows.push_back(gs_row);

    emit(cfg, out);
    return exit_ok;
}

int cmd_equivalence(RunConfig const& cfg, PairArgs const& args)
{
    auto const& phys = cfg.physics;
    auto const [p, q] = parse_pair(cfg, args);
    TestFunction const g = named_test(args.g);
    int const order = sphere_order_or(cfg, phys.dimension == 2 ? 256 : 32);
    SphereRule const rule = sphere_rule_split(phys.dimension, order);
    double const lhs =
        sphere_integral(Representation::com, p, q, cfg.sigma, g, rule, phys, Execution::parallel);
    double const rhs =
        sphere_integral(Representation::gs, p, q, cfg.sigma, g, rule, phys, Execution::parallel);
    double const diff = std::abs(lhs - rhs);
    double const scale = std::max(std::abs(lhs), std::abs(rhs));
    double const rel = scale > 0.0 ? diff / scale : 0.0;

    Output out;
    out.record = {{"command", "equivalence"},
                  {"p", four_json(p)},
                  {"q", four_json(q)},
                  {"g", args.g},
                  {"lhs_com", lhs},
                  {"rhs_gs", rhs},
                  {"abs_diff", diff},
                  {"rel_diff", rel},
                  {"sphere_order", order},
                  {"sphere_nodes", rule.size()}};
    out.header = {"g", "lhs_com", "rhs_gs", "abs_diff", "rel_diff", "sphere_order", "sphere_nodes"};
    out.rows.push_back({args.g, csv_number(lhs), csv_number(rhs), csv_number(diff),
                        csv_number(rel), std::to_string(order), std::to_string(rule.size())});
    emit(cfg, out);
    return exit_ok;
}

int cmd_operator(RunConfig const& cfg, OperatorArgs const& args)
{
    auto const& phys = cfg.physics;
    int const n = phys.dimension;
    Distribution f;
    Distribution h;
    try {
        f = distribution_by_name(args.f, n);
        h = distribution_by_name(args.h, n);
    } catch (InputError const& e) {
        throw ConfigError(e.what());
    }
    auto const points = read_points(args.points, n);
    int const order = sphere_order_or(cfg, n == 2 ? 64 : (n == 3 ? 24 : 8));
    int const ball_order = sphere_order_or(cfg, n == 2 ? 64 : (n == 3 ? 16 : 8));
    SphereRule const sphere = sphere_rule_split(n, order);

    Output out;
    out.record = {{"command", "operator"},
                  {"f", args.f},
                  {"h", args.h},
                  {"sphere_order", order},
                  {"ball_sphere_order", ball_order},
                  {"radial_order", cfg.radial_order},
                  {"rows", nlohmann::json::array()}};
    indexed(out.header, "p_", 1, n);
    out.header.insert(out.header.end(), {"Q_com", "Q_gs", "gain", "loss", "rel_diff"});
    for (auto const& p : points) {
        BallRule const ball =
            cfg.ball_radius ? ball_rule(n, *cfg.ball_radius, cfg.radial_order, ball_order)
                            : default_operator_ball(p, phys, cfg.radial_order, ball_order);
        auto const com = collision_operator(f, h, p, cfg.sigma, Representation::com, sphere, ball,
                                            phys, Execution::parallel);
        auto const gs = collision_operator(f, h, p, cfg.sigma, Representation::gs, sphere, ball,
                                           phys, Execution::parallel);
        double const scale = std::max(std::abs(com.value), std::abs(gs.value));
        double const rel = scale > 0.0 ? std::abs(com.value - gs.value) / scale : 0.0;
        out.record["rows"].push_back({{"p", vec_json(p)},
                                      {"Q_com", com.value},
                                      {"Q_gs", gs.value},
                                      {"gain", com.gain},
                                      {"loss", com.loss},
                                      {"gain_gs", gs.gain},
                                      {"loss_gs", gs.loss},
                                      {"rel_diff", rel},
                                      {"ball_radius", ball.radius},
                                      {"max_pointwise_imbalance",
                                       std::max(com.max_pointwise_imbalance,
                                                gs.max_pointwise_imbalance)}});
        std::vector<std::string> row;
        append(row, p);
        for (double v : {com.value, gs.value, com.gain, com.loss, rel}) {
            row.push_back(csv_number(v));
        }
        out.rows.push_back(row);
    }
    emit(cfg, out);
    return exit_ok;
}

int cmd_oracle(RunConfig const& cfg, PairArgs const& args)
{
    auto const& phys = cfg.physics;
    if (phys.dimension > 3 && !args.force) {
        throw ConfigError("oracle runs at n = " + std::to_string(phys.dimension)
                          + " are expensive (nested ball and sphere grids); pass --force to run");
    }
    auto const [p, q] = parse_pair(cfg, args);
    TestFunction const g = named_test(args.g);
    OracleOptions opts;
    opts.allow_high_dimension = args.force;
    opts.reduced_sphere_order = cfg.sphere_order;
    auto const report = compare_reductions(p, q, cfg.sigma, g, phys, opts);

    Output out;
    auto& r = out.record;
    r["command"] = "oracle";
    r["p"] = four_json(p);
    r["q"] = four_json(q);
    r["g"] = args.g;
    r["raw_estimates"] = nlohmann::json::array();
    out.header = {"eps", "value", "extrapolated", "com_value", "gs_value", "rel_err_com",
                  "rel_err_gs"};
    for (auto const& [eps, value] : report.raw_estimates) {
        r["raw_estimates"].push_back({{"eps", eps}, {"value", value}});
        out.rows.push_back({csv_number(eps), csv_number(value), csv_number(report.extrapolated),
                            csv_number(report.com_value), csv_number(report.gs_value),
                            csv_number(report.rel_err_com), csv_number(report.rel_err_gs)});
    }
    r["extrapolated"] = report.extrapolated;
    r["com_value"] = report.com_value;
    r["gs_value"] = report.gs_value;
    r["rel_err_com"] = report.rel_err_com;
    r["rel_err_gs"] = report.rel_err_gs;
    r["eps_scale"] = report.eps_scale;
    r["threshold_gap"] = report.threshold_gap;
    r["mollifier_mass_defect"] = report.mollifier_mass_defect;
    r["inner_radius"] = report.inner_radius;
    r["inner_nodes"] = report.inner_nodes;
    emit(cfg, out);
    return exit_ok;
}

}  // namespace relcoll::cli
