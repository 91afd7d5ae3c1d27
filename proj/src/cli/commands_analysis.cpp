#include "report_json.hpp"
#include "twofluid/cli/app.hpp"
#include "twofluid/symmetrizer.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

namespace twofluid::cli {

Tolerances<double> Options::tolerances(Tolerances<double> base) const {
    if (tol_rh) base.rh = *tol_rh;
    if (tol_j) base.j = *tol_j;
    if (tol_R) base.R = *tol_R;
    if (tol_H) base.H = *tol_H;
    return base;
}

std::uint64_t seed_from_environment() {
    const char* env = std::getenv("TWOFLUID_SEED");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 0);
    if (end == env || *end != '\0') throw InputError("TWOFLUID_SEED", "expected an unsigned integer");
    return v;
}

namespace {

void convexity_warning(const EosParams<double>& p, CommandResult& r) {
    if (!p.strictly_convex())
        r.warn("gamma_one", "gamma = 1: pressure is not strictly convex in R at fixed S");
}

void speed_warnings(const std::string& side, const State<double>& s, const WaveSpeeds<double>& w,
                    CommandResult& r) {
    const double tol = 1e-9 * std::max(w.c_f, std::numeric_limits<double>::min());
    if (s.H.norm() == 0) {
        r.warn("zero_field", side + ": H = 0, so c_a = c_s = 0 and six eigenvalues coincide with u_N");
        return;
    }
    if (std::abs(w.c_a) <= tol) {
        r.warn("normal_field_zero", side + ": H.N = 0, so c_a = c_s = 0 and six eigenvalues coincide with u_N");
        return;
    }
    if (std::abs(w.c_f - std::abs(w.c_a)) <= tol || std::abs(std::abs(w.c_a) - w.c_s) <= tol)
        r.warn("multiplicity_change", side + ": Alfven speed coincides with a magnetosonic speed");
}

Json speeds_for_side(const std::string& side, const State<double>& s, const FrontSlopes<double>& front,
                     const EosParams<double>& p, CommandResult& r) {
    const auto w = wave_speeds(s, front, p);
    const auto closed = eigenvalues_closed_form(s, front, p);
    const auto numeric = eigenvalues_numeric(s, front, p);
    const double diff = (closed.lambdas - numeric.lambdas).cwiseAbs().maxCoeff();
    const double radius = std::max(closed.spectral_radius(), std::numeric_limits<double>::min());
    speed_warnings(side, s, w, r);
    if (diff > 1e-10 * radius)
        r.warn("spectrum_mismatch", side + ": closed-form and numeric spectra differ by more than 1e-10 relative");
    return Json{{"side", side},
                {"state", to_json(s, p)},
                {"u_N", s.u.dot(front.normal())},
                {"wave_speeds", to_json(w)},
                {"eigenvalues_closed_form", to_json_array(closed.lambdas)},
                {"eigenvalues_numeric", to_json_array(numeric.lambdas)},
                {"max_discrepancy", diff},
                {"relative_discrepancy", diff / radius}};
}

} // namespace

CommandResult cmd_speeds(const StateFile& file, const Options&) {
    CommandResult r;
    r.results["eos"] = to_json(file.params);
    r.results["front"] = to_json(file.front);
    Json sides = Json::array();
    if (file.state) sides.push_back(speeds_for_side("state", *file.state, file.front, file.params, r));
    if (file.two_sided()) {
        sides.push_back(speeds_for_side("minus", *file.minus, file.front, file.params, r));
        sides.push_back(speeds_for_side("plus", *file.plus, file.front, file.params, r));
    }
    r.results["sides"] = std::move(sides);
    convexity_warning(file.params, r);
    return r;
}

CommandResult cmd_classify(const StateFile& file, const Options& opt) {
    if (!file.two_sided()) throw InputError("", "classify needs a two-sided file (\"minus\" and \"plus\")");
    const DiscontinuityData<double> d{*file.plus, *file.minus, file.front, file.params};
    const auto tol = opt.tolerances(file.tolerances);
    const auto c = classify(d, tol);

    CommandResult r;
    r.results["eos"] = to_json(file.params);
    r.results["front"] = to_json(file.front);
    r.results["tolerances"] = to_json(tol);
    r.results["kind"] = to_string(c.kind);
    r.results["residual"] = to_json_array(c.residual);
    r.results["residual_norm"] = c.residual_norm;
    r.results["j_plus"] = c.j_plus;
    r.results["j_minus"] = c.j_minus;
    r.results["jump_R"] = c.jump_R;
    r.results["H_N"] = c.HN;
    Json checks = Json::object();
    for (const auto& [name, ok] : c.checks) checks[name] = ok;
    r.results["checks"] = std::move(checks);
    convexity_warning(file.params, r);

    switch (c.kind) {
    case DiscontinuityKind::FastLaxShock:
    case DiscontinuityKind::SlowLaxShock:
    case DiscontinuityKind::NonLaxShock:
        r.results["lax"] = to_json(*c.lax);
        r.results["fast_shock_check"] = to_json(fast_shock_check(d));
        r.results["slow_shock_check"] = to_json(slow_shock_check(d));
        if (c.kind == DiscontinuityKind::NonLaxShock)
            r.warn("non_lax_shock", "shock speed does not separate the characteristic families");
        break;
    case DiscontinuityKind::CurrentVortexSheet: {
        if (d.front.planar()) {
            const auto g = cvs_stability(d);
            r.results["cvs_stability"] = to_json(g);
            if (g.collinear) r.warn("collinear_fields", "tangential fields are collinear; the stability condition is inapplicable");
            if (g.degenerate) r.warn("zero_tangential_jump", "tangential velocity jump vanishes");
            if (!g.sufficient_condition_holds()) r.warn("stability_inconclusive", "G <= 0: the sufficient condition is inconclusive");
        } else {
            r.results["cvs_stability"] = nullptr;
            r.warn("nonplanar_sheet", "stability function evaluated only for planar sheets");
        }
        break;
    }
    case DiscontinuityKind::ContactDiscontinuity: {
        const auto rp = contact_rp_check(d);
        r.results["contact_rp"] = Json{{"holds", rp.holds}, {"automatic", rp.automatic}, {"jump_R_P_R", rp.jump}};
        if (file.rt)
            r.results["rayleigh_taylor"] = Json{{"dPdN_plus", file.rt->dPdN_plus},
                                                {"dPdN_minus", file.rt->dPdN_minus},
                                                {"holds", rayleigh_taylor_check(file.rt->dPdN_plus, file.rt->dPdN_minus)}};
        else
            r.results["rayleigh_taylor"] = nullptr;
        break;
    }
    case DiscontinuityKind::AlfvenDiscontinuity: {
        const double sqrtR = std::sqrt(d.plus.total_density());
        r.results["alfven"] = Json{{"sign", *c.alfven_sign}, {"j", c.j_plus}, {"H_N_sqrt_R", c.HN * sqrtR}};
        break;
    }
    case DiscontinuityKind::NoDiscontinuity: break;
    case DiscontinuityKind::NotAWeakSolution:
        r.exit_code = exit_not_weak_solution;
        r.error = "not a weak solution: jump conditions or type conditions violated";
        break;
    }
    return r;
}

namespace {

struct SymmetryCheck {
    double lambda = 0;
    double bound = 0;
    double asym_A = 0;  ///< max over A0..A3 of max |M - M^T|
    double asym_B0 = 0;
    double asym_Bj = 0; ///< relative to max(1, max |Bj|)
    double S_defect = 0;
    double A0_min_eig = 0;
    double B0_min_eig = 0;
    bool A0_positive = false;
    bool B0_positive = false;
};

SymmetryCheck run_symmetry(const State<double>& s, const EosParams<double>& p, double lambda) {
    SymmetryCheck c;
    c.lambda = lambda;
    c.bound = lambda_bound(s, p);
    const auto A0 = assemble_A0(s, p);
    c.asym_A = max_asymmetry(A0);
    for (int j = 1; j <= 3; ++j) c.asym_A = std::max(c.asym_A, max_asymmetry(assemble_A(s, p, j)));
    const auto B0 = assemble_B0(s, lambda, p);
    c.asym_B0 = max_asymmetry(B0);
    const auto sb = assemble_S_and_Bj(s, lambda, p);
    for (const auto& B : sb.B)
        c.asym_Bj = std::max(c.asym_Bj, max_asymmetry(B) / std::max(1.0, B.cwiseAbs().maxCoeff()));
    c.S_defect = (sb.S * A0 - B0).cwiseAbs().maxCoeff() / std::max(1.0, B0.cwiseAbs().maxCoeff());
    const auto a = positive_definite(A0);
    const auto b = positive_definite(B0);
    c.A0_min_eig = a.min_eigenvalue;
    c.A0_positive = a.positive;
    c.B0_min_eig = b.min_eigenvalue;
    c.B0_positive = b.positive;
    return c;
}

Json to_json(const SymmetryCheck& c) {
    return Json{{"lambda", c.lambda},           {"lambda_bound", c.bound},
                {"max_asymmetry_A", c.asym_A},  {"max_asymmetry_B0", c.asym_B0},
                {"max_asymmetry_Bj", c.asym_Bj}, {"S_A0_minus_B0", c.S_defect},
                {"A0_positive", c.A0_positive}, {"A0_min_eigenvalue", c.A0_min_eig},
                {"B0_positive", c.B0_positive}, {"B0_min_eigenvalue", c.B0_min_eig}};
}

} // namespace

CommandResult cmd_check_symmetry(const StateFile& file, const Options& opt) {
    if (!file.state) throw InputError("state", "check-symmetry needs a single \"state\"");
    if (opt.samples < 0) throw InputError("--samples", "must be >= 0");
    const auto& p = file.params;
    const State<double> base = *file.state;
    const double bound = lambda_bound(base, p);
    double rel = 0.5;
    if (opt.lambda_rel)
        rel = *opt.lambda_rel;
    else if (opt.lambda)
        rel = *opt.lambda / bound;
    else if (file.lambda)
        rel = *file.lambda / bound;
    if (!std::isfinite(rel) || rel < 0) throw InputError("--lambda", "must be finite and >= 0");

    CommandResult r;
    r.results["eos"] = to_json(p);
    r.results["lambda"] = rel * bound;
    r.results["lambda_relative_to_bound"] = rel;
    r.results["samples"] = opt.samples;
    r.results["seed"] = opt.seed;
    convexity_warning(p, r);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<State<double>> states{base};
    for (int i = 0; i < opt.samples; ++i) {
        State<double> s = base;
        const double R = base.total_density() * std::exp(0.5 * z(rng));
        const double S = base.entropy() * std::exp(0.5 * z(rng));
        for (int k = 0; k < 3; ++k) s.u(k) += 0.5 * std::max(1.0, base.u.norm()) * z(rng);
        for (int k = 0; k < 3; ++k) s.H(k) += 0.5 * std::max(1.0, base.H.norm()) * z(rng);
        states.push_back(State<double>::from_RS(R, S, s.u, s.H));
    }

    // Each state is tested at the same fraction of its own bound.
    const bool expect_positive = rel < 1 - 1e-9;
    const bool expect_indefinite = rel > 1 + 1e-9;
    Json failures = Json::array();
    SymmetryCheck worst;
    worst.A0_min_eig = std::numeric_limits<double>::infinity();
    worst.A0_positive = true;
    int b0_positive = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        const auto c = run_symmetry(s, p, rel * lambda_bound(s, p));
        if (i == 0) r.results["state"] = Json{{"input", to_json(s, p)}, {"checks", to_json(c)}};
        worst.asym_A = std::max(worst.asym_A, c.asym_A);
        worst.asym_B0 = std::max(worst.asym_B0, c.asym_B0);
        worst.asym_Bj = std::max(worst.asym_Bj, c.asym_Bj);
        worst.S_defect = std::max(worst.S_defect, c.S_defect);
        worst.A0_min_eig = std::min(worst.A0_min_eig, c.A0_min_eig);
        if (c.B0_positive) ++b0_positive;

        std::vector<std::string> failed;
        if (c.asym_A != 0) failed.push_back("A_symmetric");
        if (c.asym_B0 != 0) failed.push_back("B0_symmetric");
        if (!(c.asym_Bj < 1e-12)) failed.push_back("Bj_symmetric");
        if (!(c.S_defect < 1e-12)) failed.push_back("S_A0_equals_B0");
        if (!c.A0_positive) failed.push_back("A0_positive");
        if (expect_positive && !c.B0_positive) failed.push_back("B0_positive_below_bound");
        if (expect_indefinite && c.B0_positive) failed.push_back("B0_indefinite_above_bound");
        for (const auto& f : failed)
            failures.push_back(Json{{"sample", static_cast<int>(i)}, {"invariant", f},
                                    {"state", to_json(s, p)}, {"checks", to_json(c)}});
    }

    r.results["summary"] = Json{{"states_checked", static_cast<int>(states.size())},
                                {"max_asymmetry_A", worst.asym_A},
                                {"max_asymmetry_B0", worst.asym_B0},
                                {"max_asymmetry_Bj", worst.asym_Bj},
                                {"max_S_A0_minus_B0", worst.S_defect},
                                {"min_A0_eigenvalue", worst.A0_min_eig},
                                {"B0_positive_count", b0_positive}};
    r.results["passed"] = failures.empty();
    r.results["failures"] = std::move(failures);
    if (expect_indefinite)
        r.warn("lambda_above_bound", "lambda exceeds the bound; B0 is expected to be indefinite");
    if (!r.results["passed"].get<bool>()) {
        r.exit_code = exit_invariant_failure;
        r.error = "symmetrizer invariant failed; see results.failures";
    }
    return r;
}

} // namespace twofluid::cli
