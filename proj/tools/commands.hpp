#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cli_config.hpp"

namespace relcoll::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_verification = 2 };

/// A command's result in both output formats.
struct Output {
    nlohmann::json record;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Writes to cfg.out (or stdout). JSON gets the effective config under
/// "config"; CSV gets it as a leading '#' comment line.
void emit(RunConfig const& cfg, Output const& out);

/// %.12g, or empty for a missing value.
std::string csv_number(std::optional<double> value);

struct VerifyArgs {
    std::size_t trials = 10000;
    std::size_t pairs = 50;
};

struct PairArgs {
    std::string p;
    std::string q;
    std::optional<std::string> omega;
    std::string g = "one";
    bool kernel_table = false;
    bool force = false;
};

struct OperatorArgs {
    std::string f = "juttner";
    std::string h = "juttner";
    std::string points;
};

int cmd_verify(RunConfig const& cfg, VerifyArgs const& args);
int cmd_kinematics(RunConfig const& cfg, PairArgs const& args);
int cmd_postcollision(RunConfig const& cfg, PairArgs const& args);
int cmd_equivalence(RunConfig const& cfg, PairArgs const& args);
int cmd_operator(RunConfig const& cfg, OperatorArgs const& args);
int cmd_oracle(RunConfig const& cfg, PairArgs const& args);

/// Momenta from a CSV file, one per row, `dimension` columns. Blank lines and
/// lines starting with '#' are skipped.
std::vector<Momentum> read_points(std::string const& path, int dimension);

}  // namespace relcoll::cli
