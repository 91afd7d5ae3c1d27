#include "report_json.hpp"
#include "twofluid/cli/app.hpp"
#include "twofluid/cli/parallel.hpp"
#include "twofluid/linear_energy.hpp"

#include <cmath>

namespace twofluid::cli {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

TimeIntegrator parse_integrator(const Node& root) {
    const std::string name = root.string_or("integrator", "low_dissipation_rk4");
    if (name == "low_dissipation_rk4") return TimeIntegrator::low_dissipation_rk4;
    if (name == "classical_rk4") return TimeIntegrator::classical_rk4;
    root.fail("integrator", "expected \"low_dissipation_rk4\" or \"classical_rk4\"");
}

struct TorusRun {
    ConservationReport rep;
    double requested_dt = 0;
};

CommandResult simulate_torus(const Node& root, const Options& opt) {
    Background bg;
    bg.params = parse_eos(root.child("eos"));
    bg.state = parse_state(root.child("background"), bg.params);
    const int M = root.integer_or("M", 16);
    if (M < 8 || M % 2 != 0 || M > 128) root.fail("M", "must be even and in [8, 128]");
    const double T = root.number_or("T", 10.0);
    if (!(T > 0)) root.fail("T", "must be > 0");
    const int kmax = root.integer_or("kmax", 3);
    if (kmax < 1 || 2 * kmax >= M) root.fail("kmax", "must satisfy 1 <= kmax < M / 2");
    const double decay = root.number_or("decay", 0.5);
    if (!(decay >= 0)) root.fail("decay", "must be >= 0");
    const int refine = root.integer_or("refine", 0);
    if (refine < 0 || refine > 4) root.fail("refine", "must be in [0, 4]");
    const std::uint64_t seed = root.has("seed") ? static_cast<std::uint64_t>(root.integer("seed")) : opt.seed;

    const double bound = lambda_bound(bg.state, bg.params);
    double lambda = 0.5 * bound;
    if (opt.lambda_rel) lambda = *opt.lambda_rel * bound;
    else if (opt.lambda) lambda = *opt.lambda;
    else if (root.has("lambda")) lambda = root.number("lambda");
    else if (root.has("lambda_rel")) lambda = root.number("lambda_rel") * bound;

    const LinearMhdOperator op(bg, M);
    const double dx = two_pi / M;
    double dt = 0;
    if (root.has("dt")) {
        dt = root.number("dt");
        if (!(dt > 0)) root.fail("dt", "must be > 0");
    } else {
        const double cfl = root.number_or("cfl", 0.4);
        if (!(cfl > 0)) root.fail("cfl", "must be > 0");
        dt = cfl * dx / op.max_speed();
    }

    ConservationOptions co;
    co.integrator = parse_integrator(root);
    co.project_initial = root.boolean_or("project_divergence", true);
    co.sample_every = root.integer_or("sample_every", 1);
    if (co.sample_every < 1) root.fail("sample_every", "must be >= 1");

    const PeriodicField initial = random_smooth_field(M, kmax, decay, seed);
    PeriodicField projected = initial;
    if (co.project_initial) project_divergence_free(projected);
    const double I = integral_I(projected, bg);
    const double J = integral_J(projected, bg);
    const double QF = quadratic_integral(projected, assemble_B0(bg.state, lambda, bg.params));

    std::vector<double> dts{dt};
    for (int i = 0; i < refine; ++i) dts.push_back(dts.back() / 2);
    const auto runs = parallel_map<ConservationReport>(dts.size(), opt.jobs, [&](std::size_t i) {
        return verify_conservation(bg, initial, lambda, dts[i], T, co);
    });

    CommandResult r;
    const auto& rep = runs.front();
    r.results["mode"] = "torus";
    r.results["eos"] = to_json(bg.params);
    r.results["background"] = to_json(bg.state, bg.params);
    r.results["grid"] = M;
    r.results["T"] = T;
    r.results["seed"] = seed;
    r.results["kmax"] = kmax;
    r.results["decay"] = decay;
    r.results["integrator"] = co.integrator == TimeIntegrator::classical_rk4 ? "classical_rk4" : "low_dissipation_rk4";
    r.results["divergence_projection"] = co.project_initial;
    r.results["lambda"] = lambda;
    r.results["lambda_bound"] = bound;
    r.results["max_speed"] = op.max_speed();
    r.results["quadratic_form_identity"] =
        Json{{"I_plus_2_lambda_J", I + 2 * lambda * J}, {"B0_quadratic_form", QF},
             {"relative_difference", std::abs(I + 2 * lambda * J - QF) / std::abs(QF)}};
    Json levels = Json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& x = runs[i];
        Json e{{"dt", x.dt},         {"cfl", x.cfl},         {"steps", x.steps},
               {"drift_I", x.drift_I}, {"drift_J", x.drift_J}, {"drift_I_plus_2_lambda_J", x.drift_IJ},
               {"I0", x.I0},         {"J0", x.J0},           {"initial_divergence", x.initial_divergence}};
        if (i > 0) {
            const auto order = [](double a, double b) { return b > 0 && a > 0 ? std::log2(a / b) : 0.0; };
            e["order_I"] = order(runs[i - 1].drift_I, x.drift_I);
            e["order_J"] = order(runs[i - 1].drift_J, x.drift_J);
            e["order_I_plus_2_lambda_J"] = order(runs[i - 1].drift_IJ, x.drift_IJ);
        }
        levels.push_back(std::move(e));
    }
    r.results["runs"] = std::move(levels);
    if (!co.project_initial)
        r.warn("no_divergence_projection", "initial H not projected; J conservation is not expected");

    Table s{{"t", "I", "J", "I_plus_2_lambda_J"}, {}};
    for (const auto& x : rep.series) s.rows.push_back({cell(x.t), cell(x.I), cell(x.J), cell(x.IJ)});
    r.series = s;
    r.table = std::move(s);
    return r;
}

std::function<double(double)> profile(const Node& root, const std::string& key) {
    if (!root.has(key)) return [](double) { return 0.0; };
    const Node n = root.child(key);
    const double a = n.number_or("amplitude", 1.0);
    const double c = n.number_or("center", 0.0);
    const double w = n.number("width");
    if (!(w > 0)) n.fail("width", "must be > 0");
    return [a, c, w](double x) { return a * std::exp(-((x - c) / w) * ((x - c) / w)); };
}

std::function<double(double, double)> source(const Node& root, const std::string& key) {
    if (!root.has(key)) return [](double, double) { return 0.0; };
    const Node n = root.child(key);
    const double a = n.number_or("amplitude", 1.0);
    const double xc = n.number_or("x_center", 0.0), xw = n.number("x_width");
    const double tc = n.number_or("t_center", 0.0), tw = n.number("t_width");
    if (!(xw > 0 && tw > 0)) n.fail("widths must be > 0");
    return [=](double t, double x) {
        const double ex = (x - xc) / xw, et = (t - tc) / tw;
        return a * std::exp(-ex * ex - et * et);
    };
}

CommandResult simulate_entropy(const Node& root, const Options& opt) {
    EntropyLayerProblem base;
    base.u_plus = root.number_or("u_plus", base.u_plus);
    base.u_minus = root.number_or("u_minus", base.u_minus);
    base.L = root.number_or("L", base.L);
    base.cfl = root.number_or("cfl", base.cfl);
    base.initial_minus = profile(root, "initial_minus");
    base.initial_plus = profile(root, "initial_plus");
    base.g = profile(root, "g");
    base.f_minus = source(root, "f_minus");
    base.f_plus = source(root, "f_plus");
    const double T = root.number_or("T", 2.0);
    const int every = root.integer_or("sample_every", 1);
    if (every < 1) root.fail("sample_every", "must be >= 1");
    const std::vector<double> dxs = root.has("dx") ? root.numbers("dx") : std::vector<double>{base.dx};
    for (double dx : dxs)
        if (!(dx > 0)) root.fail("dx", "must be > 0");
    if (base.u_plus * T >= base.L) root.fail("L", "too short: outflow would reach x = L before T");

    const auto reps = parallel_map<EntropyIdentityReport>(dxs.size(), opt.jobs, [&](std::size_t i) {
        EntropyLayerProblem p = base;
        p.dx = dxs[i];
        return verify_entropy_identity(p, T, every);
    });

    CommandResult r;
    r.results["mode"] = "entropy";
    r.results["u_plus"] = base.u_plus;
    r.results["u_minus"] = base.u_minus;
    r.results["jump_u1"] = base.u_plus - base.u_minus;
    r.results["L"] = base.L;
    r.results["T"] = T;
    r.results["cfl"] = base.cfl;
    Json rows = Json::array();
    double ratio_max = 0;
    Table refinement{{"dx", "dt", "steps", "I0", "IT", "boundary_integral", "source_integral",
                      "identity_residual", "max_identity_residual", "order", "estimate_ratio", "outflow_max"},
                     {}};
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& x = reps[i];
        ratio_max = std::max(ratio_max, x.estimate_ratio);
        double order = 0;
        if (i > 0 && x.max_identity_residual > 0 && reps[i - 1].max_identity_residual > 0)
            order = std::log(reps[i - 1].max_identity_residual / x.max_identity_residual) /
                    std::log(reps[i - 1].dx / x.dx);
        Json e{{"dx", x.dx},
               {"dt", x.dt},
               {"steps", x.steps},
               {"I0", x.I0},
               {"IT", x.IT},
               {"boundary_integral", x.boundary_integral},
               {"source_integral", x.source_integral},
               {"identity_residual", x.identity_residual},
               {"max_identity_residual", x.max_identity_residual},
               {"estimate_lhs", x.estimate_lhs},
               {"estimate_rhs", x.estimate_rhs},
               {"estimate_ratio", x.estimate_ratio},
               {"outflow_max", x.outflow_max}};
        if (i > 0) e["order"] = order;
        rows.push_back(std::move(e));
        refinement.rows.push_back({cell(x.dx), cell(x.dt), cell(x.steps), cell(x.I0), cell(x.IT),
                                   cell(x.boundary_integral), cell(x.source_integral),
                                   cell(x.identity_residual), cell(x.max_identity_residual),
                                   i > 0 ? cell(order) : "", cell(x.estimate_ratio), cell(x.outflow_max)});
        if (x.outflow_max > 0)
            r.warn("outflow_reached", "signal reached x = L; the identity omits the outflow flux");
    }
    r.results["refinement"] = std::move(rows);
    r.results["estimate_ratio_max"] = ratio_max;

    Table s{{"t", "I", "boundary", "source", "residual"}, {}};
    for (const auto& x : reps.back().series)
        s.rows.push_back({cell(x.t), cell(x.I), cell(x.boundary), cell(x.source), cell(x.residual)});
    r.series = std::move(s);
    r.table = reps.size() > 1 ? refinement : *r.series;
    return r;
}

} // namespace

CommandResult cmd_simulate(const Json& config, const Options& opt) {
    const Node root(config, "");
    const std::string mode = root.string_or("mode", "torus");
    try {
        if (mode == "torus") return simulate_torus(root, opt);
        if (mode == "entropy") return simulate_entropy(root, opt);
    } catch (const CflViolation& e) {
        CommandResult r;
        r.exit_code = exit_cfl_violation;
        r.error = e.what();
        r.results["mode"] = mode;
        r.results["cfl"] = e.cfl();
        return r;
    }
    root.fail("mode", "expected \"torus\" or \"entropy\"");
}

} // namespace twofluid::cli
