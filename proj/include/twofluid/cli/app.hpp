#pragma once

#include "twofluid/cli/format.hpp"
#include "twofluid/cli/input.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace twofluid::cli {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_input = 2,
    exit_not_weak_solution = 3,
    exit_newton_failure = 4,
    exit_invariant_failure = 5,
    exit_cfl_violation = 6,
};

struct Warning {
    std::string code;
    std::string message;
};

struct CommandResult {
    int exit_code = exit_ok;
    Json results = Json::object();
    std::vector<Warning> warnings;
    std::optional<Table> table;  ///< primary table for --format csv
    std::optional<Table> series; ///< time series written by --series
    std::string error;

    void warn(std::string code, std::string message) {
        for (const auto& w : warnings)
            if (w.code == code && w.message == message) return;
        warnings.push_back({std::move(code), std::move(message)});
    }
};

struct Options {
    std::optional<double> tol_rh, tol_j, tol_R, tol_H;
    std::optional<double> lambda;
    std::optional<double> lambda_rel;
    std::optional<double> compression;
    std::optional<std::string> sweep;
    int samples = 0;
    int jobs = 1;
    std::uint64_t seed = 1;
    std::string format; ///< empty: command default
    std::string out;
    std::string series;

    Tolerances<double> tolerances(Tolerances<double> base) const;
};

/// Seed from TWOFLUID_SEED (decimal or 0x-hex), else 1.
std::uint64_t seed_from_environment();

CommandResult cmd_speeds(const StateFile& file, const Options& opt);
CommandResult cmd_classify(const StateFile& file, const Options& opt);
CommandResult cmd_hugoniot(const StateFile& file, const Options& opt);
CommandResult cmd_cvs_map(const Json& config, const Options& opt);
CommandResult cmd_check_symmetry(const StateFile& file, const Options& opt);
CommandResult cmd_simulate(const Json& config, const Options& opt);

/// Full command line (argv[0] excluded); returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twofluid::cli
