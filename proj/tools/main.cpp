#include <iostream>

#include <CLI11.hpp>

#include "cli_config.hpp"
#include "commands.hpp"

using namespace relcoll::cli;

namespace {

void add_shared_options(CLI::App& app, std::optional<std::string>& config_path, Overrides& o)
{
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("-n,--dimension", o.dimension, "spatial dimension n >= 2");
    app.add_option("-c,--light-speed", o.light_speed, "speed of light c");
    app.add_option("--tol-algebra", o.tol_algebra, "algebraic tolerance");
    app.add_option("--tol-quadrature", o.tol_quadrature, "quadrature tolerance");
    app.add_option("--sigma-model", o.sigma_model, "constant | power-law");
    app.add_option("--sigma-C", o.sigma_c, "cross-section amplitude C");
    app.add_option("--sigma-a", o.sigma_a, "power-law exponent of rho");
    app.add_option("--sigma-b", o.sigma_b, "power-law exponent of sin(theta)");
    app.add_option("--sphere-order", o.sphere_order, "sphere rule order (0: command default)");
    app.add_option("--radial-order", o.radial_order, "radial Gauss-Legendre order");
    app.add_option("--ball-radius", o.ball_radius, "operator ball radius or 'auto'");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--format", o.format, "json | csv");
    app.add_option("-o,--out", o.out, "output file (default stdout)");
}

void add_pair_options(CLI::App& cmd, PairArgs& args, bool need_omega)
{
    cmd.add_option("-p,--p", args.p, "momentum p, comma separated")->required();
    cmd.add_option("-q,--q", args.q, "momentum q, comma separated")->required();
    auto* omega = cmd.add_option("-w,--omega", args.omega, "unit vector omega, comma separated");
    if (need_omega) {
        omega->required();
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relativistic collision operator: center-of-momentum and Glassey-Strauss "
                 "reductions"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    Overrides overrides;
    add_shared_options(app, config_path, overrides);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run the invariant and property suites");
    verify->add_option("--trials", verify_args.trials, "random trials per algebraic suite");
    verify->add_option("--pairs", verify_args.pairs, "random (p, q) pairs for equivalence");

    PairArgs kin_args;
    auto* kinematics = app.add_subcommand("kinematics", "invariants, boost and kernels for (p, q)");
    add_pair_options(*kinematics, kin_args, false);
    kinematics->add_flag("--kernel-table", kin_args.kernel_table,
                         "tabulate B, A, B_n over the sphere rule nodes");

    PairArgs post_args;
    auto* postcollision =
        app.add_subcommand("postcollision", "post-collision momenta in both representations");
    add_pair_options(*postcollision, post_args, true);

    PairArgs eq_args;
    auto* equivalence =
        app.add_subcommand("equivalence", "compare the COM and GS sphere integrals");
    add_pair_options(*equivalence, eq_args, false);
    equivalence->add_option("-g,--test-function", eq_args.g,
                            "one | energy-difference | gaussian | juttner");

    OperatorArgs op_args;
    auto* op = app.add_subcommand("operator", "evaluate Q(f, h) at points from a CSV file");
    op->set_help_flag("--help", "print this help message and exit");
    op->add_option("-f,--f", op_args.f, "juttner | gaussian-bump");
    op->add_option("--h", op_args.h, "juttner | gaussian-bump");
    op->add_option("--points", op_args.points, "CSV file, one momentum per row")->required();

    PairArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "brute-force mollified integral vs reductions");
    add_pair_options(*oracle, oracle_args, false);
    oracle->add_option("-g,--test-function", oracle_args.g, "one | juttner | ...");
    oracle->add_flag("--force", oracle_args.force, "allow n >= 4");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        RunConfig const cfg = resolve(config_path, overrides);
        if (verify->parsed()) {
            return cmd_verify(cfg, verify_args);
        }
        if (kinematics->parsed()) {
            return cmd_kinematics(cfg, kin_args);
        }
        if (postcollision->parsed()) {
            return cmd_postcollision(cfg, post_args);
        }
        if (equivalence->parsed()) {
            return cmd_equivalence(cfg, eq_args);
        }
        if (op->parsed()) {
            return cmd_operator(cfg, op_args);
        }
        if (oracle->parsed()) {
            return cmd_oracle(cfg, oracle_args);
        }
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
