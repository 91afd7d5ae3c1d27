#include "support.hpp"
#include "twofluid/admissibility.hpp"

using namespace twofluid;

namespace {
const EosParams<double> gas{2, 2, 1};
const double sqrt6 = std::sqrt(6.0);

DiscontinuityData<double> gas_shock() {
    return {State<double>::from_RS(4.0, 1.0, Vector3<double>(sqrt6 / 2, 0, 0), Vector3<double>::Zero()),
            State<double>::from_RS(2.0, 1.0, Vector3<double>(sqrt6, 0, 0), Vector3<double>::Zero()),
            FrontSlopes<double>{}, gas};
}
} // namespace

TEST_CASE("Lax 1-shock for the gas-dynamic example") {
    const auto rep = lax_check(gas_shock());
    REQUIRE(rep.k.has_value());
    CHECK(*rep.k == 1);
    CHECK(rep.is_lax);
    CHECK(rep.family == LaxFamily::fast);
    // c_f(-) = sqrt2 < sqrt6 = u_N(-), and u_N(+) = sqrt6 / 2 in (0, 2)
    CHECK(rep.margins[1] == doctest::Approx(sqrt6 - std::sqrt(2.0)));
    CHECK(fast_shock_check(gas_shock()).holds);
    CHECK_FALSE(slow_shock_check(gas_shock()).holds);
}

TEST_CASE("expansive mirror and boundary cases are not Lax") {
    auto d = gas_shock();
    std::swap(d.plus, d.minus);
    CHECK_FALSE(lax_check(d).is_lax);
    CHECK_FALSE(fast_shock_check(d).holds);

    auto e = gas_shock();
    e.front.phi_t = eigenvalues_closed_form(e.minus, e.front, gas).lambdas(0);
    CHECK_FALSE(lax_check(e).is_lax);

    auto f = gas_shock();
    f.plus.u(0) = 2.0 + 1.0; // u_N(+) - phi_t > c_f(+) = 2
    CHECK_FALSE(fast_shock_check(f).holds);

    auto z = gas_shock();
    z.front.phi_t = z.plus.u(0);
    z.minus.u(0) = z.plus.u(0);
    CHECK_THROWS_AS(lax_check(z), DomainError);
}

TEST_CASE("slow inequalities need a field") {
    CHECK_FALSE(slow_shock_check(gas_shock()).holds);
    const auto up = State<double>::from_RS(1.0, 1.0, Vector3<double>::Zero(), Vector3<double>(0.5, 2, 0));
    HugoniotOptions<double> opt;
    opt.family = WaveFamily::slow;
    for (double r : {1.1, 1.5, 2.0}) {
        const auto sol = solve_downstream(up, FrontSlopes<double>{}, r, gas, opt);
        const DiscontinuityData<double> d{sol.downstream, up, FrontSlopes<double>{sol.shock_speed, 0, 0}, gas};
        CHECK(slow_shock_check(d).holds);
        CHECK_FALSE(fast_shock_check(d).holds);
        const auto lax = lax_check(d);
        REQUIRE(lax.k.has_value());
        CHECK(*lax.k == 3);
        CHECK(lax.family == LaxFamily::slow);
    }
}

TEST_CASE("weak-field fast shocks stay admissible") {
    const auto up = State<double>::from_RS(2.0, 1.0, Vector3<double>(sqrt6, 0, 0), Vector3<double>(6e-4, 8e-4, 0));
    for (int i = 0; i < 20; ++i) {
        const double r = 1.01 + (3.0 - 1.01) * i / 19;
        const auto sol = solve_downstream(up, FrontSlopes<double>{}, r, gas);
        const DiscontinuityData<double> d{sol.downstream, up, FrontSlopes<double>{sol.shock_speed, 0, 0}, gas};
        CHECK(fast_shock_check(d).holds);
        CHECK(lax_check(d).family == LaxFamily::fast);
    }
}

TEST_CASE("inequality checks agree with the Lax chain on solver output") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(0, 1);
    int fast = 0, slow = 0;
    for (int i = 0; i < 400; ++i) {
        auto draw = oracle::random_draw(rng);
        const auto up = testing_support::state_of(draw);
        const auto p = testing_support::params_of(draw);
        HugoniotOptions<double> opt;
        opt.family = (i % 2) ? WaveFamily::slow : WaveFamily::fast;
        HugoniotSolution<double> sol;
        try {
            sol = solve_downstream(up, FrontSlopes<double>{}, 1.02 + 0.8 * uni(rng), p, opt);
        } catch (const std::exception&) {
            continue;
        }
        const DiscontinuityData<double> d{sol.downstream, up, FrontSlopes<double>{sol.shock_speed, 0, 0}, p};
        const auto lax = lax_check(d);
        const auto fc = fast_shock_check(d);
        const auto sc = slow_shock_check(d);
        const double tie = 1e-8 * natural_scales(d).speed;
        auto near_tie = [&](const std::vector<double>& m) {
            for (double x : m)
                if (std::abs(x) < tie) return true;
            return false;
        };
        const std::vector<double> lm(lax.margins.begin(), lax.margins.end());
        if (near_tie(fc.margins) || near_tie(sc.margins) || near_tie(lm)) continue;
        CHECK(fc.holds == (lax.k && *lax.k == 1));
        CHECK(sc.holds == (lax.k && *lax.k == 3));
        fast += fc.holds;
        slow += sc.holds;
    }
    CHECK(fast > 50);
    CHECK(slow > 20);
}

TEST_CASE("current-vortex sheet stability function") {
    const Vector2<double> Hp(1.3, 0), Hm(-2.6, 0);
    const auto col = cvs_stability_function<double>(Hp, Hm, Vector2<double>(0.3, 0.4), 0.5, 0.7);
    CHECK(col.collinear);
    CHECK(col.G == -0.5);

    const double b = 1 / std::sqrt(2.0);
    CHECK(beta_speed(1.0, 1.0) == doctest::Approx(b).epsilon(1e-15));
    for (double v : {0.1, 0.5, 0.8, 2.0}) {
        const auto g = cvs_stability_function<double>(Vector2<double>(1, 0), Vector2<double>(0, 1), Vector2<double>(v, 0), b, b);
        CHECK(std::abs(g.G - (b - v)) < 1e-12);
        CHECK(g.sufficient_condition_holds() == (v < b));
        CHECK(g.verdict() == (v < b ? "sufficient stability condition satisfied" : "condition inconclusive"));
    }

    // doubling [u'] at fixed directions subtracts |[u']|
    const Vector2<double> du(0.2, 0.35);
    const auto g1 = cvs_stability_function<double>(Vector2<double>(1, 0.4), Vector2<double>(-0.3, 1), du, 0.6, 0.9);
    const auto g2 = cvs_stability_function<double>(Vector2<double>(1, 0.4), Vector2<double>(-0.3, 1), 2 * du, 0.6, 0.9);
    CHECK(std::abs((g2.G - g1.G) + du.norm()) < 1e-12);

    const auto zero = cvs_stability_function<double>(Vector2<double>(1, 0), Vector2<double>(0, 1), Vector2<double>::Zero(), 0.6, 0.9);
    CHECK(zero.degenerate);
    CHECK(zero.G == doctest::Approx(0.6));
}

TEST_CASE("stability function from states: rotation and boost invariance") {
    // c = c_A = 1 on both sides
    const State<double> minus = State<double>::from_RS(1.0, 1.0, Vector3<double>::Zero(), Vector3<double>(0, 0, 1));
    const double v = 0.25;
    const State<double> plus = State<double>::from_RS(1.0, 1.0, Vector3<double>(0, v, 0), Vector3<double>(0, 1, 0));
    const DiscontinuityData<double> d{plus, minus, FrontSlopes<double>{}, gas};
    const auto base = cvs_stability(d);
    CHECK(std::abs(base.G - (1 / std::sqrt(2.0) - v)) < 1e-12);

    for (double a : {0.3, 1.1, 2.9, -1.7}) {
        Eigen::Matrix3d Q = Eigen::Matrix3d::Identity();
        Q.block<2, 2>(1, 1) << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        auto r = d;
        r.plus.u = Q * d.plus.u;
        r.plus.H = Q * d.plus.H;
        r.minus.u = Q * d.minus.u;
        r.minus.H = Q * d.minus.H;
        CHECK(std::abs(cvs_stability(r).G - base.G) < 1e-12);
        auto boosted = r;
        const Vector3<double> w(0, 0.7 * a, -0.4);
        boosted.plus.u += w;
        boosted.minus.u += w;
        CHECK(std::abs(cvs_stability(boosted).G - base.G) < 1e-12);
    }
}

TEST_CASE("contact pressure-derivative condition") {
    const DiscontinuityData<double> same{State<double>{0.8, 0.6, Vector3<double>::Zero(), Vector3<double>(1, 0, 0)},
                                         State<double>{1.0, 0.0, Vector3<double>::Zero(), Vector3<double>(1, 0, 0)},
                                         FrontSlopes<double>{}, gas};
    const auto a = contact_rp_check(same);
    CHECK(a.holds);
    CHECK(a.automatic);
    CHECK(std::abs(a.jump) < 1e-15);

    const EosParams<double> p23{2, 3, 1};
    const DiscontinuityData<double> mixed{State<double>{std::cbrt(1.25), 0.0, Vector3<double>::Zero(), Vector3<double>(1, 0, 0)},
                                          State<double>{1.0, 0.5, Vector3<double>::Zero(), Vector3<double>(1, 0, 0)},
                                          FrontSlopes<double>{}, p23};
    const auto b = contact_rp_check(mixed);
    CHECK_FALSE(b.holds);
    CHECK(b.jump == doctest::Approx(0.25).epsilon(1e-12));

    auto c = mixed;
    c.plus = c.minus;
    CHECK(contact_rp_check(c).holds);
}

TEST_CASE("Rayleigh-Taylor sign") {
    CHECK(rayleigh_taylor_check(-1.0, 1.0));
    CHECK_FALSE(rayleigh_taylor_check(0.0, 0.0));
    CHECK_FALSE(rayleigh_taylor_check(1.0, -1.0));
}
