#pragma once

#include "oracles.hpp"
#include "twofluid/eos.hpp"

#include <doctest.h>

namespace testing_support {

inline twofluid::State<double> state_of(const oracle::RandomDraw& d) {
    return twofluid::State<double>::from_RS(d.R, d.S, d.u, d.H);
}

inline twofluid::EosParams<double> params_of(const oracle::RandomDraw& d) {
    return {d.alpha, d.gamma, d.A};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace testing_support
