#pragma once

#include <vector>

#include "fpcert/problem.hpp"

namespace fpcert {

// The built-in worked example on R^2 with the Euclidean norm: the map sends
// everything to the origin except two marked points,
//   T(4,5) = (4,0),  T(5,4) = (0,4),  T x = (0,0) otherwise,
// checked as an enriched condition with b = 1, theta = 1 (so lambda = 1/2,
// r = 1/2).
MapSpec demo_map();
ConditionKind demo_condition();

// Problem-file form of the example. `restricted` samples only the two marked
// points exhaustively (the certifiable regime); otherwise pairs come from the
// integer grid on [-10,10]^2, where violation witnesses exist.
ProblemFile demo_problem(bool restricted);

// The annotated demo report as JSON lines: the reference computation's
// quantities with provenance notes, the known distance discrepancy, the
// restricted certificate, the solve trace to the origin, and the grid-search
// violation witness with its caveat.
std::vector<json> demo_report();

}  // namespace fpcert
