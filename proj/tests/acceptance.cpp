// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include "oracles.hpp"
#include "twofluid/classification.hpp"
#include "twofluid/linear_energy.hpp"
#include "twofluid/symmetrizer.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace twofluid;

namespace {

State<double> state_of(const oracle::RandomDraw& d) { return State<double>::from_RS(d.R, d.S, d.u, d.H); }
EosParams<double> params_of(const oracle::RandomDraw& d) { return {d.alpha, d.gamma, d.A}; }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < limit_s, "runtime limit");
    failures += !o.pass;
    std::printf("%s criterion %d: %s;%s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.str().c_str(), secs, limit_s);
    std::fflush(stdout);
}

double max_asym(const Matrix8<double>& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

void symmetrizer_suite(Outcome& o) {
    std::mt19937_64 rng(1001);
    int bad_sym = 0, bad_A0 = 0, bad_below = 0, bad_above = 0;
    double worst_Bj = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto d = oracle::random_draw(rng);
        const auto s = state_of(d);
        const auto p = params_of(d);
        const double b = lambda_bound(s, p);
        for (int j = 1; j <= 3; ++j) bad_sym += max_asym(assemble_A(s, p, j)) != 0.0;
        bad_sym += max_asym(assemble_B0(s, 0.99 * b, p)) != 0.0;
        bad_A0 += !(oracle::min_symmetric_eigenvalue(assemble_A0(s, p)) > 0);
        bad_below += !(oracle::min_symmetric_eigenvalue(assemble_B0(s, 0.99 * b, p)) > 0);
        bad_above += !(oracle::min_symmetric_eigenvalue(assemble_B0(s, 1.01 * b, p)) < 0);
        const auto sb = assemble_S_and_Bj(s, 0.99 * b, p);
        for (const auto& B : sb.B) worst_Bj = std::max(worst_Bj, max_asym(B) / (1 + B.cwiseAbs().maxCoeff()));
    }
    o.detail << " 1000 states, asymmetric=" << bad_sym << ", A0 not SPD=" << bad_A0
             << ", B0(0.99 bound) not SPD=" << bad_below << ", B0(1.01 bound) definite=" << bad_above
             << ", max rel Bj asymmetry=" << worst_Bj;
    o.require(bad_sym == 0 && bad_A0 == 0 && bad_below == 0 && bad_above == 0, "definiteness/symmetry");
    o.require(worst_Bj < 1e-12, "Bj symmetry");
}

void eigen_equivalence(Outcome& o) {
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> slope(-2.0, 2.0);
    double worst = 0;
    int degenerate = 0;
    for (int i = 0; i < 1000; ++i) {
        auto d = oracle::random_draw(rng);
        const FrontSlopes<double> f{slope(rng), slope(rng), slope(rng)};
        const Vector3<double> N = f.normal();
        if (i % 5 == 0) {
            d.H -= (d.H.dot(N) / N.squaredNorm()) * N;
            d.H += 1e-9 * N;
            ++degenerate;
        }
        const auto s = state_of(d);
        const double R = s.total_density();
        const double PR = oracle::dP_dR(s.rho, s.n, d.alpha, d.gamma, d.A);
        const oracle::Mat8 AN = oracle::printed_A1(R, PR, s.u, s.H) - f.phi_2 * oracle::printed_A2(R, PR, s.u, s.H) -
                                f.phi_3 * oracle::printed_A3(R, PR, s.u, s.H);
        Eigen::GeneralizedSelfAdjointEigenSolver<oracle::Mat8> es(AN, oracle::printed_A0(R, PR), Eigen::EigenvaluesOnly);
        auto dense = es.eigenvalues();
        std::sort(dense.data(), dense.data() + 8);
        const auto closed = eigenvalues_closed_form(s, f, params_of(d));
        worst = std::max(worst, (closed.lambdas - dense).cwiseAbs().maxCoeff() / dense.cwiseAbs().maxCoeff());
    }
    o.detail << " 1000 draws (" << degenerate << " with H.N ~ 0, |dphi| <= 2), max rel error=" << worst;
    o.require(worst < 1e-10, "spectrum mismatch");
}

void rankine_hugoniot(Outcome& o) {
    const EosParams<double> gas{2, 2, 1};
    const double sqrt6 = std::sqrt(6.0);
    const auto up = State<double>::from_RS(2.0, 1.0, Vector3<double>(sqrt6, 0, 0), Vector3<double>::Zero());
    const auto sol = solve_downstream(up, FrontSlopes<double>{}, 2.0, gas);
    const double eR = std::abs(sol.downstream.total_density() - 4.0);
    const double eu = std::abs(sol.downstream.u(0) - sqrt6 / 2);
    const auto c = classify(DiscontinuityData<double>{sol.downstream, up, FrontSlopes<double>{sol.shock_speed, 0, 0}, gas});
    o.detail << " gas shock |dR|=" << eR << ", |du|=" << eu << ", kind=" << to_string(c.kind)
             << ", k=" << (c.lax && c.lax->k ? *c.lax->k : 0);
    o.require(eR < 1e-10 && eu < 1e-10, "gas shock");
    o.require(c.kind == DiscontinuityKind::FastLaxShock && c.lax && c.lax->k == 1, "gas shock class");

    const Vector3<double> H = 1e-3 * Vector3<double>(0.6, 0.64, 0.48);
    const auto wup = State<double>::from_RS(2.0, 1.0, Vector3<double>(sqrt6, 0, 0), H);
    int converged = 0, fast = 0;
    double worst_S = 0, worst_cop = 0, max_duN = -1e300;
    for (int i = 1; i <= 50; ++i) {
        const double r = 1.0 + 2.0 * i / 50;
        HugoniotSolution<double> s;
        try {
            s = solve_downstream(wup, FrontSlopes<double>{}, r, gas);
        } catch (const std::exception&) {
            continue;
        }
        ++converged;
        const DiscontinuityData<double> d{s.downstream, wup, FrontSlopes<double>{s.shock_speed, 0, 0}, gas};
        const auto cl = classify(d);
        fast += cl.kind == DiscontinuityKind::FastLaxShock && cl.lax && cl.lax->k == 1 && fast_shock_check(d).holds;
        worst_S = std::max(worst_S, std::abs(d.plus.entropy() - d.minus.entropy()));
        max_duN = std::max(max_duN, d.plus.u(0) - d.minus.u(0));
        const Vector2<double> hp = d.plus.H.tail<2>(), hm = d.minus.H.tail<2>();
        worst_cop = std::max(worst_cop, std::abs(hp(0) * hm(1) - hp(1) * hm(0)) / (hp.norm() * hm.norm()));
    }
    o.detail << "; sweep r in (1,3] |H|=1e-3: converged " << converged << "/50, fast Lax " << fast
             << "/50, max|[S]|=" << worst_S << ", max [u_N]=" << max_duN << ", max coplanarity=" << worst_cop;
    o.require(converged == 50 && fast == 50, "sweep admissibility");
    o.require(worst_S < 1e-9 && max_duN < 0 && worst_cop < 1e-9, "sweep jump relations");
}

void classification_round_trip(Outcome& o) {
    const EosParams<double> gas{2, 2, 1};
    const double e = 1e-3;
    auto up = State<double>::from_RS(1.5, 0.5, Vector3<double>(0.3, 0.1, 0), Vector3<double>(0.4, 0.3, -0.2));
    const auto sol = solve_downstream(up, FrontSlopes<double>{}, 1.8, gas);
    const DiscontinuityData<double> shock{sol.downstream, up, FrontSlopes<double>{sol.shock_speed, 0, 0}, gas};
    const DiscontinuityData<double> cvs{
        State<double>{0.8, 0.4, Vector3<double>(0.2, 0.3, 0), Vector3<double>(0, 0, std::sqrt(0.4))},
        State<double>{0.5, 0.5, Vector3<double>(0.2, 0, -0.1), Vector3<double>(0, 1, 0)}, FrontSlopes<double>{0.2, 0, 0}, gas};
    const Vector3<double> cu(0.1, 0.2, 0.1), cH(1, 0.5, 0);
    const DiscontinuityData<double> contact{State<double>{1.0, 0.0, cu, cH}, State<double>{0.8, 0.6, cu, cH},
                                            FrontSlopes<double>{0.1, 0, 0}, gas};
    const DiscontinuityData<double> alfven{
        State<double>::from_RS(1.0, 1.0, Vector3<double>(1, 1, -1), Vector3<double>(1, 1, 0)),
        State<double>::from_RS(1.0, 1.0, Vector3<double>(1, 0, 0), Vector3<double>(1, 0, 1)), FrontSlopes<double>{}, gas};

    struct Case {
        const char* name;
        DiscontinuityData<double> base;
        bool (*expected)(DiscontinuityKind);
        std::vector<std::function<void(DiscontinuityData<double>&)>> mutations;
    };
    const std::vector<Case> cases = {
        {"shock", shock, [](DiscontinuityKind k) { return is_shock(k); },
         {[&](auto& d) { d.plus.u(0) += e; }, [&](auto& d) { d.front.phi_t += e; },
          [&](auto& d) { d.plus = State<double>::from_RS(d.plus.total_density(), d.plus.entropy() + e, d.plus.u, d.plus.H); }}},
        {"cvs", cvs, [](DiscontinuityKind k) { return k == DiscontinuityKind::CurrentVortexSheet; },
         {[&](auto& d) { d.plus.H(0) += e; }, [&](auto& d) { d.plus.n += e; }, [&](auto& d) { d.front.phi_t += e; }}},
        {"contact", contact, [](DiscontinuityKind k) { return k == DiscontinuityKind::ContactDiscontinuity; },
         {[&](auto& d) { d.plus.n += e; }, [&](auto& d) { d.plus.u(1) += e; }, [&](auto& d) { d.plus.H(2) += e; }}},
        {"alfven", alfven, [](DiscontinuityKind k) { return k == DiscontinuityKind::AlfvenDiscontinuity; },
         {[&](auto& d) { d.plus.H(0) += e; }, [&](auto& d) { d.plus.u(1) += e; }, [&](auto& d) { d.front.phi_t += e; }}},
    };
    int mutated = 0, left = 0;
    for (const auto& c : cases) {
        const auto k = classify(c.base).kind;
        o.detail << " " << c.name << "->" << to_string(k);
        o.require(c.expected(k), std::string(c.name) + " fixture");
        for (const auto& m : c.mutations) {
            auto d = c.base;
            m(d);
            ++mutated;
            const auto mk = classify(d).kind;
            left += !c.expected(mk) || mk == DiscontinuityKind::NotAWeakSolution;
        }
    }
    const auto a = classify(alfven);
    o.require(a.alfven_sign && *a.alfven_sign == 1 && std::abs(a.j_plus - a.HN * std::sqrt(1.0)) < 1e-12, "alfven j = H_N sqrt(R)");
    o.detail << "; mutations leaving the class " << left << "/" << mutated;
    o.require(left == mutated, "mutations");
}

void cvs_function(Outcome& o) {
    const auto col = cvs_stability_function<double>(Vector2<double>(1.3, 0), Vector2<double>(-2.6, 0), Vector2<double>(0.3, 0.4), 0.5, 0.7);
    o.detail << " collinear G=" << col.G;
    o.require(col.G == -0.5, "collinear");

    const EosParams<double> gas{2, 2, 1};
    const auto minus = State<double>::from_RS(1.0, 1.0, Vector3<double>::Zero(), Vector3<double>(0, 0, 1));
    double worst_orth = 0, worst_inv = 0;
    for (double v : {0.1, 0.25, 0.5, 1.0}) {
        const auto plus = State<double>::from_RS(1.0, 1.0, Vector3<double>(0, v, 0), Vector3<double>(0, 1, 0));
        const DiscontinuityData<double> d{plus, minus, FrontSlopes<double>{}, gas};
        const double G = cvs_stability(d).G;
        worst_orth = std::max(worst_orth, std::abs(G - (1 / std::sqrt(2.0) - v)));
        for (double a : {0.3, 1.1, 2.9, -1.7}) {
            Eigen::Matrix3d Q = Eigen::Matrix3d::Identity();
            Q.block<2, 2>(1, 1) << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
            auto r = d;
            for (auto* s : {&r.plus, &r.minus}) {
                s->u = Q * s->u;
                s->H = Q * s->H;
            }
            worst_inv = std::max(worst_inv, std::abs(cvs_stability(r).G - G));
            const Vector3<double> w(0, 0.7 * a, -0.4);
            r.plus.u += w;
            r.minus.u += w;
            worst_inv = std::max(worst_inv, std::abs(cvs_stability(r).G - G));
        }
    }
    o.detail << ", orthogonal |G - (1/sqrt2 - v)|=" << worst_orth << ", rotation/boost variation=" << worst_inv;
    o.require(worst_orth < 1e-12 && worst_inv < 1e-12, "identities");
}

void conserved_integrals(Outcome& o) {
    const Background bg{State<double>::from_RS(1.5, 0.5, Vector3<double>(0.3, -0.2, 0.1), Vector3<double>(0.5, 0.4, -0.3)),
                        EosParams<double>{2, 1.5, 1}};
    const int M = 16;
    const auto f = random_smooth_field(M, 3, 0.5, 42);
    const LinearMhdOperator op(bg, M);
    const double lambda = 0.5 * lambda_bound(bg.state, bg.params);
    const double dt = 0.4 * f.spacing() / op.max_speed();
    const auto a = verify_conservation(bg, f, lambda, dt, 10.0);
    const auto b = verify_conservation(bg, f, lambda, dt / 2, 10.0);
    const double oI = std::log2(a.drift_I / b.drift_I);
    const double oJ = std::log2(a.drift_J / b.drift_J);
    const double oE = std::log2(a.drift_IJ / b.drift_IJ);
    o.detail << " 16^3, T=10, CFL " << a.cfl << ": drift I=" << a.drift_I << " J=" << a.drift_J
             << " I+2lJ=" << a.drift_IJ << "; orders under dt/2: " << oI << ", " << oJ << ", " << oE;
    o.require(a.drift_I < 1e-6 && a.drift_J < 1e-6 && a.drift_IJ < 1e-6, "drift");
    o.require(oI >= 3.7 && oJ >= 3.7 && oE >= 3.7, "order");

    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        const auto g = random_smooth_field(M, 4, 0.2, 500 + i);
        const double l = (i / 4.5 - 1.0) * 0.95 * lambda_bound(bg.state, bg.params);
        const double lhs = integral_I(g, bg) + 2 * l * integral_J(g, bg);
        const double rhs = quadratic_integral(g, assemble_B0(bg.state, l, bg.params));
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    o.detail << "; quadratic-form identity rel error " << worst;
    o.require(worst < 1e-12, "quadratic form identity");
}

void entropy_layer(Outcome& o) {
    EntropyLayerProblem p;
    p.u_minus = 1.0;
    p.u_plus = 0.5;
    p.L = 4.0;
    p.cfl = 0.8;
    p.initial_minus = [](double x) { return std::exp(-((x + 1.5) / 0.5) * ((x + 1.5) / 0.5)); };
    p.g = [](double t) { return std::exp(-((t - 1) / 0.5) * ((t - 1) / 0.5)); };
    std::vector<double> res, ratio;
    for (double dx : {0.02, 0.01, 0.005, 0.0025}) {
        p.dx = dx;
        const auto r = verify_entropy_identity(p, 2.0);
        res.push_back(r.max_identity_residual);
        ratio.push_back(r.estimate_ratio);
    }
    o.detail << " [u1] = -0.5; residuals";
    for (double r : res) o.detail << " " << r;
    o.detail << "; orders";
    double min_order = 1e300;
    for (std::size_t i = 1; i < res.size(); ++i) {
        const double q = std::log2(res[i - 1] / res[i]);
        min_order = std::min(min_order, q);
        o.detail << " " << q;
    }
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    o.detail << "; estimate ratio in [" << *lo << ", " << *hi << "]";
    o.require(min_order >= 0.8, "order");
    o.require(std::isfinite(*hi) && *hi <= 1.1 * *lo, "estimate ratio drifts with dx");
}

void gas_reduction(Outcome& o) {
    double worst = 0;
    int count = 0;
    for (double gamma : {1.4, 2.0}) {
        const EosParams<double> p{gamma, gamma, 1.3};
        const double S = 0.7, R = 1.2, u = 0.4;
        const double K = (std::pow(S, gamma) + p.bigA) / std::pow(S + 1, gamma);
        const auto up = State<double>::from_RS(R, S, Vector3<double>(u, 0, 0), Vector3<double>::Zero());
        for (int i = 1; i <= 10; ++i) {
            const double r = 1.0 + 0.3 * i;
            const auto sol = solve_downstream(up, FrontSlopes<double>{}, r, p);
            const auto ref = oracle::isentropic_shock_bisection(R, u, r, K, gamma);
            worst = std::max({worst, std::abs(sol.shock_speed - ref.sigma), std::abs(sol.downstream.u(0) - ref.u_down)});
            ++count;
        }
    }
    o.detail << " " << count << " ratios (alpha = gamma in {1.4, 2}), max |difference|=" << worst;
    o.require(count == 20 && worst < 1e-8, "bisection agreement");
}

} // namespace

int main() {
    criterion(1, "symmetrizer suite", 10, symmetrizer_suite);
    criterion(2, "closed-form spectrum vs dense generalized eigensolve", 30, eigen_equivalence);
    criterion(3, "Rankine-Hugoniot solver and fast-shock sweep", 60, rankine_hugoniot);
    criterion(4, "classification round-trip", 10, classification_round_trip);
    criterion(5, "current-vortex-sheet stability function", 5, cvs_function);
    criterion(6, "conserved integrals on the torus", 300, conserved_integrals);
    criterion(7, "entropy-layer identity", 60, entropy_layer);
    criterion(8, "gas-dynamic reduction", 10, gas_reduction);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
