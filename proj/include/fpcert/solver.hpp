#pragma once

#include <optional>
#include <vector>

#include "fpcert/maps.hpp"

namespace fpcert {

struct SolveConfig {
  Vector x0;
  // Convergence threshold, applied in relative form tol*(1 + |u_n|).
  double tol = 1e-8;
  int max_iter = 1000;
  // When set, every step of the finished orbit is checked against geometric
  // decay with this ratio (see decay_violations).
  std::optional<double> decay_check;
};

// Orbit of the averaged operator T_lambda. `iterates` holds the computed
// points u_1..u_K; the starting point is kept separately in `start`, and the
// transient displacement |u_1 - start| in `initial_step`. `step_norms` are
// the K-1 displacements within the computed orbit — the quantities the
// geometric-decay diagnostics are about; the transient is deliberately not
// one of them.
struct IterationTrace {
  Vector start;
  std::vector<Vector> iterates;
  std::vector<double> step_norms;   // |u_{n+1} - u_n|, length K-1
  std::vector<double> residuals;    // fixed_point_residual(T, u_n), length K
  double initial_step = 0.0;
  bool converged = false;
  int iterations_used = 0;
  // Max of the trailing min(5, available) consecutive step ratios; absent
  // until the orbit has at least 3 nonzero steps.
  std::optional<double> estimated_ratio;
  // Indices n (into step_norms) where step_norms[n] exceeded
  // decay_check * step_norms[n-1] + eps.
  std::vector<int> decay_violations;
};

// Picard iteration u_{n+1} = T_lambda(u_n) with lambda = 1/(b+1), stopping on
// relative step norm or max_iter. A tabulated-domain miss names the iterate
// index; a non-finite iterate, or one whose step or residual norm overflows,
// raises divergence_error.
IterationTrace picard_solve(const MapSpec& T, double b, const SolveConfig& cfg,
                            NormKind kind);

// Multivalued variant: the successor is the point of averaged_set(T, lambda,
// u_n) nearest to u_n (ties broken by lexicographic coordinate order), and
// the stop rule is the fixed-point residual dist(u_n, Tu_n) <= tol*(1+|u_n|).
IterationTrace picard_solve_multi(const MultiMapSpec& T, double b,
                                  const SolveConfig& cfg, NormKind kind);

struct AprioriRecord {
  int n = 0;
  double bound = 0.0;
  double actual = 0.0;
};

// Steps violating the a-priori estimate step_norms[n] <= r^n * step_norms[0].
// An empty result certifies geometric decay along this one trajectory.
std::vector<AprioriRecord> apriori_bound(const IterationTrace& trace,
                                         double r);

}  // namespace fpcert
