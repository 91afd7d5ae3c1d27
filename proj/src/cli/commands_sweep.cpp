#include "report_json.hpp"
#include "twofluid/cli/app.hpp"
#include "twofluid/cli/parallel.hpp"

#include <charconv>
#include <cmath>

namespace twofluid::cli {

namespace {

struct SweepSpec {
    double from = 0, to = 0;
    int steps = 0;

    double at(int i) const { return steps == 1 ? from : from + (to - from) * i / (steps - 1); }
};

double parse_double(const std::string& s, const std::string& what) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw InputError(what, "cannot parse number \"" + s + "\"");
    return v;
}

SweepSpec parse_sweep(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos || text.find(':', b + 1) != std::string::npos)
        throw InputError("--sweep", "expected r1:r2:steps");
    SweepSpec s;
    s.from = parse_double(text.substr(0, a), "--sweep");
    s.to = parse_double(text.substr(a + 1, b - a - 1), "--sweep");
    const double steps = parse_double(text.substr(b + 1), "--sweep");
    if (steps < 1 || steps != std::floor(steps) || steps > 1e6)
        throw InputError("--sweep", "steps must be a positive integer");
    s.steps = static_cast<int>(steps);
    return s;
}

struct HugoniotRow {
    double r = 0;
    bool converged = false;
    bool rejected = false; ///< r <= 1
    std::string error;
    HugoniotSolution<double> sol;
    std::optional<LaxReport<double>> lax;
    std::optional<ShockInequalities<double>> fast, slow;
    double jump_S = 0;
    double jump_uN = 0;
    double coplanarity = 0;
};

// (H+ tangential) x (H- tangential) relative to their magnitudes.
double coplanarity_defect(const State<double>& up, const State<double>& down) {
    const Vector2<double> a = up.H.tail<2>();
    const Vector2<double> b = down.H.tail<2>();
    const double scale = std::max(a.norm() * b.norm(), std::numeric_limits<double>::min());
    return std::abs(a(0) * b(1) - a(1) * b(0)) / scale;
}

HugoniotRow solve_row(const StateFile& f, double r, const Tolerances<double>& tol) {
    HugoniotRow row;
    row.r = r;
    const State<double>& up = *f.state;
    try {
        row.sol = solve_downstream(up, f.front, r, f.params, f.solver);
        row.converged = true;
    } catch (const ConvergenceError& e) {
        row.error = e.what();
        return row;
    } catch (const DomainError& e) {
        row.error = e.what();
        row.rejected = true;
        return row;
    }
    FrontSlopes<double> front = f.front;
    front.phi_t = row.sol.shock_speed;
    const DiscontinuityData<double> d{row.sol.downstream, up, front, f.params};
    row.lax = lax_check(d, tol);
    row.fast = fast_shock_check(d);
    row.slow = slow_shock_check(d);
    row.jump_S = row.sol.downstream.entropy() - up.entropy();
    row.jump_uN = row.sol.downstream.u(0) - up.u(0);
    row.coplanarity = up.H.tail<2>().norm() > 0 && row.sol.downstream.H.tail<2>().norm() > 0
                          ? coplanarity_defect(up, row.sol.downstream)
                          : 0.0;
    return row;
}

Json row_json(const HugoniotRow& row, const EosParams<double>& p) {
    Json j{{"compression", row.r}, {"converged", row.converged}};
    if (!row.converged) {
        j["error"] = row.error;
        return j;
    }
    const double R_up = row.sol.downstream.total_density() / row.r;
    j["downstream"] = to_json(row.sol.downstream, p);
    j["shock_speed"] = row.sol.shock_speed;
    j["upstream_density"] = R_up;
    j["residual"] = row.sol.residual;
    j["continuation_steps"] = row.sol.continuation_steps;
    j["newton_iterations"] = row.sol.newton_iterations;
    j["jump_S"] = row.jump_S;
    j["jump_u_N"] = row.jump_uN;
    j["tangential_field_coplanarity"] = row.coplanarity;
    j["lax"] = to_json(*row.lax);
    j["fast_shock_check"] = to_json(*row.fast);
    j["slow_shock_check"] = to_json(*row.slow);
    return j;
}

std::vector<std::string> hugoniot_header() {
    return {"r",          "converged", "sigma",      "n",         "rho",        "R",
            "S",          "u1",        "u2",         "u3",        "H1",         "H2",
            "H3",         "residual",  "lax_k",      "is_lax",    "family",     "margin1",
            "margin2",    "margin3",   "margin4",    "fast_check", "slow_check", "jump_S",
            "jump_u_N",   "coplanarity", "newton_iterations", "error"};
}

std::vector<std::string> hugoniot_cells(const HugoniotRow& row) {
    std::vector<std::string> c{cell(row.r), cell(row.converged)};
    if (!row.converged) {
        c.resize(hugoniot_header().size() - 1);
        c.push_back(row.error);
        return c;
    }
    const auto& s = row.sol.downstream;
    for (double v : {row.sol.shock_speed, s.n, s.rho, s.total_density(), s.entropy(), s.u(0), s.u(1),
                     s.u(2), s.H(0), s.H(1), s.H(2), row.sol.residual})
        c.push_back(cell(v));
    c.push_back(row.lax->k ? cell(*row.lax->k) : "");
    c.push_back(cell(row.lax->is_lax));
    c.push_back(to_string(row.lax->family));
    for (double m : row.lax->margins) c.push_back(cell(m));
    c.push_back(cell(row.fast->holds));
    c.push_back(cell(row.slow->holds));
    c.push_back(cell(row.jump_S));
    c.push_back(cell(row.jump_uN));
    c.push_back(cell(row.coplanarity));
    c.push_back(cell(row.sol.newton_iterations));
    c.push_back("");
    return c;
}

} // namespace

CommandResult cmd_hugoniot(const StateFile& file, const Options& opt) {
    if (!file.state) throw InputError("state", "hugoniot needs the upstream \"state\"");
    if (opt.compression.has_value() == opt.sweep.has_value())
        throw InputError("", "give exactly one of --compression or --sweep");
    if (!file.front.planar()) throw InputError("front", "hugoniot requires a planar front (phi_2 = phi_3 = 0)");
    const auto tol = opt.tolerances(file.tolerances);

    CommandResult r;
    r.results["eos"] = to_json(file.params);
    r.results["upstream"] = to_json(*file.state, file.params);
    r.results["family"] = file.solver.family == WaveFamily::fast ? "fast" : "slow";
    if (!file.params.strictly_convex())
        r.warn("gamma_one", "gamma = 1: pressure is not strictly convex in R at fixed S");

    if (opt.compression) {
        const auto row = solve_row(file, *opt.compression, tol);
        r.results["solution"] = row_json(row, file.params);
        if (!row.converged) {
            r.exit_code = exit_newton_failure;
            r.error = row.error;
        }
        Table t{hugoniot_header(), {hugoniot_cells(row)}};
        r.table = std::move(t);
        return r;
    }

    const SweepSpec range = parse_sweep(*opt.sweep);
    const auto rows = parallel_map<HugoniotRow>(static_cast<std::size_t>(range.steps), opt.jobs,
                                                [&](std::size_t i) { return solve_row(file, range.at(static_cast<int>(i)), tol); });
    Table t{hugoniot_header(), {}};
    Json arr = Json::array();
    int failed = 0, lax_fast = 0;
    for (const auto& row : rows) {
        t.rows.push_back(hugoniot_cells(row));
        arr.push_back(row_json(row, file.params));
        if (!row.converged) ++failed;
        else if (row.lax->family == LaxFamily::fast) ++lax_fast;
    }
    r.results["sweep"] = Json{{"from", range.from}, {"to", range.to}, {"steps", range.steps}};
    r.results["rows"] = std::move(arr);
    r.results["failed_rows"] = failed;
    r.results["fast_lax_rows"] = lax_fast;
    r.table = std::move(t);
    if (failed) {
        r.exit_code = exit_newton_failure;
        r.error = std::to_string(failed) + " of " + std::to_string(range.steps) + " sweep rows failed";
    }
    return r;
}

namespace {

struct Range {
    double from = 0, to = 0;
    int steps = 1;
    double at(int i) const { return steps == 1 ? from : from + (to - from) * i / (steps - 1); }
};

Range parse_range(const Node& root, const std::string& key, double fallback) {
    Range r;
    if (!root.has(key)) {
        r.from = r.to = fallback;
        return r;
    }
    const Node n = root.child(key);
    if (n.json().is_number()) {
        r.from = r.to = n.number();
        return r;
    }
    if (!n.json().is_object()) n.fail("expected a number or {from, to, steps}");
    r.from = n.number("from");
    r.to = n.number_or("to", r.from);
    r.steps = n.integer_or("steps", 1);
    if (r.steps < 1 || r.steps > 100000) n.fail("steps", "must be in [1, 100000]");
    return r;
}

} // namespace

CommandResult cmd_cvs_map(const Json& config, const Options&) {
    const Node root(config, "");
    const auto cp = root.numbers("c_plus");
    const auto ap = root.numbers("cA_plus");
    const auto cm = root.numbers("c_minus");
    const auto am = root.numbers("cA_minus");
    for (const auto* list : {&cp, &ap, &cm, &am})
        for (double v : *list)
            if (v < 0) throw InputError("", "speeds must be >= 0 (invalid grid)");
    const Range du = parse_range(root, "du", 0.0);
    const Range theta = parse_range(root, "theta_H", 0.0);
    const Range angle = parse_range(root, "du_angle", 0.0);
    if (du.from < 0 || du.to < 0) throw InputError("du", "|[u']| must be >= 0 (invalid grid)");

    Table t{{"c_plus", "cA_plus", "c_minus", "cA_minus", "beta_plus", "beta_minus", "theta_H",
             "du_angle", "du", "G", "psi_plus", "psi_minus", "sin_theta_H", "collinear", "degenerate",
             "sufficient"},
            {}};
    int collinear_rows = 0, satisfied = 0;
    for (double c1 : cp)
        for (double a1 : ap)
            for (double c2 : cm)
                for (double a2 : am) {
                    const double bp = beta_speed(c1, a1);
                    const double bm = beta_speed(c2, a2);
                    for (int it = 0; it < theta.steps; ++it) {
                        const double th = theta.at(it);
                        const Vector2<double> Hp(1.0, 0.0);
                        const Vector2<double> Hm(std::cos(th), std::sin(th));
                        for (int ia = 0; ia < angle.steps; ++ia) {
                            const double ang = angle.at(ia);
                            for (int iu = 0; iu < du.steps; ++iu) {
                                const double v = du.at(iu);
                                const Vector2<double> jump(v * std::cos(ang), v * std::sin(ang));
                                const auto g = cvs_stability_function(Hp, Hm, jump, bp, bm);
                                if (g.collinear) ++collinear_rows;
                                if (g.sufficient_condition_holds()) ++satisfied;
                                t.rows.push_back({cell(c1), cell(a1), cell(c2), cell(a2), cell(bp), cell(bm),
                                                  cell(th), cell(ang), cell(v), cell(g.G), cell(g.psi_plus),
                                                  cell(g.psi_minus), cell(g.sin_theta_H), cell(g.collinear),
                                                  cell(g.degenerate), cell(g.sufficient_condition_holds())});
                            }
                        }
                    }
                }
    CommandResult r;
    r.results["rows"] = static_cast<int>(t.rows.size());
    r.results["rows_sufficient"] = satisfied;
    r.results["rows_collinear"] = collinear_rows;
    r.results["field_convention"] = "H'+ = (1, 0), H'- = (cos theta_H, sin theta_H), [u'] = du (cos du_angle, sin du_angle)";
    if (collinear_rows) r.warn("collinear_fields", "rows with collinear tangential fields: G = -|[u']|");
    r.table = std::move(t);
    return r;
}

} // namespace twofluid::cli
