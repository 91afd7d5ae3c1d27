#pragma once

// JSON views of library results.

#include "twofluid/admissibility.hpp"
#include "twofluid/classification.hpp"
#include "twofluid/cli/format.hpp"
#include "twofluid/waves.hpp"

namespace twofluid::cli {

template <typename Derived> Json to_json_array(const Eigen::MatrixBase<Derived>& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(static_cast<double>(v(i)));
    return a;
}

inline Json to_json(const State<double>& s, const EosParams<double>& p) {
    const auto t = thermodynamics(s, p);
    return Json{{"n", s.n},       {"rho", s.rho}, {"R", t.R},      {"S", t.S},
                {"u", to_json_array(s.u)}, {"H", to_json_array(s.H)}, {"P", t.P},
                {"q", t.q},       {"P_R", t.P_R}, {"c", t.c}};
}

inline Json to_json(const FrontSlopes<double>& f) {
    return Json{{"phi_t", f.phi_t}, {"phi_2", f.phi_2}, {"phi_3", f.phi_3}};
}

inline Json to_json(const EosParams<double>& p) {
    return Json{{"alpha", p.alpha}, {"gamma", p.gamma}, {"A", p.bigA}};
}

inline Json to_json(const WaveSpeeds<double>& w) {
    return Json{{"c", w.c},     {"c_A", w.c_A}, {"c_a", w.c_a},
                {"c_s", w.c_s}, {"c_f", w.c_f}, {"normal_norm", w.normal_norm}};
}

inline Json to_json(const LaxReport<double>& r) {
    Json j{{"is_lax", r.is_lax},
           {"k", r.k ? Json(*r.k) : Json(nullptr)},
           {"family", to_string(r.family)},
           {"closest_k", r.closest_k},
           {"margins", Json::array()},
           {"minus_spectrum", to_json_array(r.minus_spectrum.lambdas)},
           {"plus_spectrum", to_json_array(r.plus_spectrum.lambdas)}};
    for (double m : r.margins) j["margins"].push_back(m);
    return j;
}

inline Json to_json(const ShockInequalities<double>& s) {
    Json j{{"holds", s.holds}, {"margins", Json::array()}};
    for (double m : s.margins) j["margins"].push_back(m);
    return j;
}

inline Json to_json(const CvsStabilityReport<double>& r) {
    return Json{{"G", r.G},
                {"verdict", r.verdict()},
                {"sufficient_condition_holds", r.sufficient_condition_holds()},
                {"psi_plus", r.psi_plus},
                {"psi_minus", r.psi_minus},
                {"beta_plus", r.beta_plus},
                {"beta_minus", r.beta_minus},
                {"sin_theta_H", r.sin_theta_H},
                {"jump_u_tangential", r.jump_u},
                {"collinear", r.collinear},
                {"degenerate", r.degenerate}};
}

inline Json to_json(const Tolerances<double>& t) {
    return Json{{"rh", t.rh}, {"j", t.j}, {"R", t.R}, {"H", t.H}};
}

} // namespace twofluid::cli
