#include "twofluid/cli/app.hpp"
#include "twofluid/linear_energy.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace twofluid::cli {

namespace {

struct Invocation {
    std::string file;
    Options opt;
    std::string format = "";
};

void add_common(CLI::App* sub, Invocation& inv, bool tolerances) {
    sub->add_option("file", inv.file, "input JSON file")->required();
    sub->add_option("--format", inv.opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", inv.opt.out, "write output to this path instead of stdout");
    sub->add_option("--jobs", inv.opt.jobs, "worker threads for sweeps (0 = all cores)")->check(CLI::Range(0, 1024));
    if (tolerances) {
        sub->add_option("--tol-rh", inv.opt.tol_rh, "relative Rankine-Hugoniot tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--tol-j", inv.opt.tol_j, "relative mass-flux tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--tol-R", inv.opt.tol_R, "relative density-jump tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--tol-H", inv.opt.tol_H, "relative normal-field tolerance")->check(CLI::PositiveNumber);
    }
}

Json build_report(const std::string& command, const std::vector<std::string>& args,
                  const InputDocument& doc, const CommandResult& res) {
    Json warnings = Json::array();
    for (const auto& w : res.warnings) warnings.push_back(Json{{"code", w.code}, {"message", w.message}});
    Json report{{"tool", "twofluid"},
                {"version", tool_version},
                {"command", Json{{"name", command}, {"args", args}}},
                {"input", Json{{"file", doc.name}, {"fnv1a64", hex64(fnv1a64(doc.bytes))}}},
                {"exit_code", res.exit_code},
                {"status", res.exit_code == exit_ok ? "ok" : "error"}};
    if (!res.error.empty()) report["error"] = res.error;
    report["results"] = res.results;
    report["warnings"] = std::move(warnings);
    return report;
}

void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError(path, "cannot open output file");
    write(f);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-fluid MHD discontinuity and energy-estimate toolkit", "twofluid"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);
    Invocation inv;

    auto* speeds = app.add_subcommand("speeds", "wave speeds and characteristic spectra of a state file");
    add_common(speeds, inv, false);
    auto* classify = app.add_subcommand("classify", "classify a two-sided discontinuity");
    add_common(classify, inv, true);
    auto* hugoniot = app.add_subcommand("hugoniot", "downstream shock states by Newton continuation");
    add_common(hugoniot, inv, true);
    hugoniot->add_option("--compression", inv.opt.compression, "compression ratio R(+) / R(-)");
    hugoniot->add_option("--sweep", inv.opt.sweep, "r1:r2:steps, inclusive");
    auto* cvs = app.add_subcommand("cvs-map", "grid of the current-vortex-sheet stability function");
    add_common(cvs, inv, false);
    auto* sym = app.add_subcommand("check-symmetry", "symmetrizer invariant suite");
    add_common(sym, inv, false);
    sym->add_option("--lambda", inv.opt.lambda, "secondary symmetrizer parameter");
    sym->add_option("--lambda-rel", inv.opt.lambda_rel, "lambda as a multiple of the bound");
    sym->add_option("--samples", inv.opt.samples, "random perturbations of the state")->check(CLI::NonNegativeNumber);
    auto* sim = app.add_subcommand("simulate", "linearized energy / entropy-layer verification runs");
    add_common(sim, inv, false);
    sim->add_option("--lambda", inv.opt.lambda, "lambda for I + 2 lambda J");
    sim->add_option("--lambda-rel", inv.opt.lambda_rel, "lambda as a multiple of the bound");
    sim->add_option("--series", inv.opt.series, "write the time series CSV to this path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "twofluid: " << e.what() << "\n";
        return exit_invalid_input;
    }

    const auto* active = app.get_subcommands().front();
    const std::string command = active->get_name();
    InputDocument doc;
    CommandResult res;
    try {
        inv.opt.seed = seed_from_environment();
        doc = read_document(inv.file);
        if (command == "speeds") res = cmd_speeds(parse_state_file(doc.json), inv.opt);
        else if (command == "classify") res = cmd_classify(parse_state_file(doc.json), inv.opt);
        else if (command == "hugoniot") res = cmd_hugoniot(parse_state_file(doc.json), inv.opt);
        else if (command == "cvs-map") res = cmd_cvs_map(doc.json, inv.opt);
        else if (command == "check-symmetry") res = cmd_check_symmetry(parse_state_file(doc.json), inv.opt);
        else res = cmd_simulate(doc.json, inv.opt);
    } catch (const InputError& e) {
        err << "twofluid: invalid input: " << (e.path().empty() || std::string(e.what()).rfind(inv.file, 0) == 0 ? "" : inv.file + ": ") << e.what() << "\n";
        return exit_invalid_input;
    } catch (const CflViolation& e) {
        err << "twofluid: " << e.what() << "\n";
        return exit_cfl_violation;
    } catch (const ConvergenceError& e) {
        err << "twofluid: " << e.what() << "\n";
        return exit_newton_failure;
    } catch (const std::exception& e) {
        err << "twofluid: invalid input: " << e.what() << "\n";
        return exit_invalid_input;
    }

    const bool table_default = command == "cvs-map" || (command == "hugoniot" && inv.opt.sweep);
    const std::string format = inv.opt.format.empty() ? (table_default ? "csv" : "json") : inv.opt.format;
    if (format == "csv" && !res.table) {
        err << "twofluid: --format csv is not available for " << command << "\n";
        return exit_invalid_input;
    }
    try {
        std::vector<std::string> echo = args;
        if (format == "csv")
            emit(inv.opt.out, out, [&](std::ostream& os) { write_csv(os, *res.table); });
        else
            emit(inv.opt.out, out, [&](std::ostream& os) { write_json(os, build_report(command, echo, doc, res)); });
        if (!inv.opt.series.empty() && res.series)
            emit(inv.opt.series, out, [&](std::ostream& os) { write_csv(os, *res.series); });
    } catch (const InputError& e) {
        err << "twofluid: " << e.what() << "\n";
        return exit_invalid_input;
    }
    if (!res.error.empty()) err << "twofluid: " << res.error << "\n";
    return res.exit_code;
}

} // namespace twofluid::cli
