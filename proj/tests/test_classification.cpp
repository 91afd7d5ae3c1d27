#include "support.hpp"
#include "twofluid/classification.hpp"

using namespace twofluid;

namespace {
const EosParams<double> gas{2, 2, 1};

DiscontinuityData<double> shock_fixture() {
    const auto up = State<double>::from_RS(1.5, 0.5, Vector3<double>(0.3, 0.1, 0), Vector3<double>(0.4, 0.3, -0.2));
    const auto sol = solve_downstream(up, FrontSlopes<double>{}, 1.8, gas);
    return {sol.downstream, up, FrontSlopes<double>{sol.shock_speed, 0, 0}, gas};
}

// j = 0, H_N = 0, [q] = 0 with free tangential jumps
DiscontinuityData<double> cvs_fixture() {
    return {State<double>{0.8, 0.4, Vector3<double>(0.2, 0.3, 0), Vector3<double>(0, 0, std::sqrt(0.4))},
            State<double>{0.5, 0.5, Vector3<double>(0.2, 0, -0.1), Vector3<double>(0, 1, 0)},
            FrontSlopes<double>{0.2, 0, 0}, gas};
}

// j = 0, H_N != 0, [P] = [u] = [H] = 0, densities jump
DiscontinuityData<double> contact_fixture() {
    const Vector3<double> u(0.1, 0.2, 0.1), H(1, 0.5, 0);
    return {State<double>{1.0, 0.0, u, H}, State<double>{0.8, 0.6, u, H}, FrontSlopes<double>{0.1, 0, 0}, gas};
}

DiscontinuityData<double> alfven_fixture() {
    return {State<double>::from_RS(1.0, 1.0, Vector3<double>(1, 1, -1), Vector3<double>(1, 1, 0)),
            State<double>::from_RS(1.0, 1.0, Vector3<double>(1, 0, 0), Vector3<double>(1, 0, 1)),
            FrontSlopes<double>{}, gas};
}
} // namespace

TEST_CASE("fixtures classify as constructed") {
    const auto s = classify(shock_fixture());
    CHECK(s.kind == DiscontinuityKind::FastLaxShock);
    CHECK(s.residual_norm < 1e-10);
    CHECK(classify(cvs_fixture()).kind == DiscontinuityKind::CurrentVortexSheet);
    const auto c = classify(contact_fixture());
    CHECK(c.kind == DiscontinuityKind::ContactDiscontinuity);
    const auto a = classify(alfven_fixture());
    CHECK(a.kind == DiscontinuityKind::AlfvenDiscontinuity);
    REQUIRE(a.alfven_sign.has_value());
    CHECK(*a.alfven_sign == 1);
    CHECK(a.j_plus == doctest::Approx(1.0)); // j = H_N sqrt(R)
}

TEST_CASE("Alfven jump with the opposite orientation") {
    auto d = alfven_fixture();
    // [u] = -[H] / sqrt(R) keeps the datum a weak solution
    d.plus.H = Vector3<double>(-1, -1, 0);
    d.minus.H = Vector3<double>(-1, 0, -1);
    const auto a = classify(d);
    CHECK(a.kind == DiscontinuityKind::AlfvenDiscontinuity);
    CHECK(*a.alfven_sign == -1);
}

TEST_CASE("identical sides") {
    const auto s = State<double>::from_RS(1.3, 0.4, Vector3<double>(0.25, 0.1, 0), Vector3<double>(0.3, 0.2, 0.1));
    CHECK(classify(DiscontinuityData<double>{s, s, FrontSlopes<double>{0.25, 0, 0}, gas}).kind == DiscontinuityKind::NoDiscontinuity);
}

TEST_CASE("mutations by 1e-3 leave the class") {
    const double e = 1e-3;
    {
        const auto base = shock_fixture();
        auto a = base;
        a.plus.u(0) += e;
        CHECK(classify(a).kind == DiscontinuityKind::NotAWeakSolution);
        auto b = base;
        b.plus = State<double>::from_RS(b.plus.total_density(), b.plus.entropy() + e, b.plus.u, b.plus.H);
        CHECK(classify(b).kind == DiscontinuityKind::NotAWeakSolution);
        auto c = base;
        c.front.phi_t += e;
        CHECK(classify(c).kind == DiscontinuityKind::NotAWeakSolution);
    }
    {
        const auto base = cvs_fixture();
        auto a = base;
        a.plus.H(0) += e; // H_N != 0
        CHECK(classify(a).kind != DiscontinuityKind::CurrentVortexSheet);
        auto b = base;
        b.plus.n += e; // [q] != 0
        CHECK(classify(b).kind != DiscontinuityKind::CurrentVortexSheet);
        auto c = base;
        c.front.phi_t += e; // j != 0
        CHECK(classify(c).kind != DiscontinuityKind::CurrentVortexSheet);
    }
    {
        const auto base = contact_fixture();
        auto a = base;
        a.plus.n += e; // [P] != 0
        CHECK(classify(a).kind != DiscontinuityKind::ContactDiscontinuity);
        auto b = base;
        b.plus.u(1) += e;
        CHECK(classify(b).kind != DiscontinuityKind::ContactDiscontinuity);
        auto c = base;
        c.plus.H(2) += e;
        CHECK(classify(c).kind != DiscontinuityKind::ContactDiscontinuity);
    }
    {
        const auto base = alfven_fixture();
        auto a = base;
        a.plus.H(0) += e;
        CHECK(classify(a).kind != DiscontinuityKind::AlfvenDiscontinuity);
        auto b = base;
        b.plus.u(1) += e;
        CHECK(classify(b).kind != DiscontinuityKind::AlfvenDiscontinuity);
        auto c = base;
        c.front.phi_t += e; // breaks j = H_N sqrt(R)
        CHECK(classify(c).kind != DiscontinuityKind::AlfvenDiscontinuity);
    }
}

TEST_CASE("tolerance overrides") {
    auto a = contact_fixture();
    a.plus.n += 1e-6;
    CHECK(classify(a).kind == DiscontinuityKind::NotAWeakSolution);
    Tolerances<double> loose;
    loose.rh = 1e-4;
    CHECK(classify(a, loose).kind == DiscontinuityKind::ContactDiscontinuity);
}
