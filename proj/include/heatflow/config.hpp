#pragma once

#include <string>

#include "heatflow/evolve.hpp"
#include "heatflow/rootsys.hpp"

namespace heatflow {

// Parsed experiment config. Grammar: one `key = value` per line, '#' starts a
// comment. Keys:
//   n, family (rank1|a2|b2), multiplicities (a2: m; b2: m_short, m_long),
//   datum (repeatable): radial_bump radius=R | displaced_bump radius=R dist=D
//     | displaced_heat s=S dist=D, each with optional side=+1|-1 and weight=W,
//   p (comma list, "inf" allowed), t (comma list, increasing),
//   mass.<p> (comma list of mass choices for that p),
//   schedule.r_exp, schedule.eps_exp, schedule.R_scale,
//   tol.radial, tol.angular, bump_route (auto|1d|2d),
//   out (CSV report path), json (JSON report path), series (directory for (t, E) files).
// Unknown keys and repeated scalar keys are errors.
struct ExperimentConfig {
    int n = 3;
    FamilySpec family = FamilySpec::rank1(3);
    ExperimentSpec spec;
    std::string out, json, series;
};

ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

// "inf", "infinity" or a number.
double parse_real(const std::string &s);

} // namespace heatflow
