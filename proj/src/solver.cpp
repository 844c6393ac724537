#include "fpcert/solver.hpp"

#include <algorithm>
#include <cmath>

namespace fpcert {
namespace {

void check_config(double b, const SolveConfig& cfg) {
  if (!std::isfinite(b) || b < 0.0)
    throw invalid_input_error("solver: b must be finite and >= 0, got " +
                              std::to_string(b));
  if (!std::isfinite(cfg.tol) || !(cfg.tol > 0.0))
    throw invalid_input_error("solver: tol must be positive");
  if (cfg.max_iter < 1)
    throw invalid_input_error("solver: max_iter must be >= 1");
  if (cfg.x0.size() == 0)
    throw invalid_input_error("solver: empty starting point");
  if (!cfg.x0.allFinite())
    throw invalid_input_error("solver: non-finite starting point");
  if (cfg.decay_check) {
    const double r = *cfg.decay_check;
    if (!std::isfinite(r) || r < 0.0 || r >= 1.0)
      throw invalid_input_error(
          "solver: decay_check ratio must lie in [0,1), got " +
          std::to_string(r));
  }
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Nearest candidate to ref; among candidates within kCmpTol of the minimum
// distance, the lexicographically smallest wins. Two passes keep the tie
// region anchored at the true minimum.
Vector nearest_point(const PointSet& candidates, const Vector& ref,
                     NormKind kind) {
  double dmin = dist_point_set(ref, candidates, kind);
  const Vector* pick = nullptr;
  for (const auto& c : candidates.points) {
    if (dist(c, ref, kind) > dmin + kCmpTol) continue;
    if (!pick || lex_less(c, *pick)) pick = &c;
  }
  return *pick;
}

// Ratio estimate and optional decay flags, once the orbit is complete.
void finish(IterationTrace& tr, const SolveConfig& cfg) {
  int nonzero = 0;
  for (double s : tr.step_norms)
    if (s > 0.0) ++nonzero;
  if (nonzero >= 3) {
    std::vector<double> ratios;
    ratios.reserve(tr.step_norms.size());
    for (std::size_t i = 0; i + 1 < tr.step_norms.size(); ++i)
      if (tr.step_norms[i] > 0.0)
        ratios.push_back(tr.step_norms[i + 1] / tr.step_norms[i]);
    if (!ratios.empty()) {
      const std::size_t window = std::min<std::size_t>(5, ratios.size());
      double worst = 0.0;
      for (std::size_t i = ratios.size() - window; i < ratios.size(); ++i)
        worst = std::max(worst, ratios[i]);
      tr.estimated_ratio = worst;
    }
  }
  if (cfg.decay_check) {
    const double r = *cfg.decay_check;
    for (std::size_t n = 1; n < tr.step_norms.size(); ++n)
      if (tr.step_norms[n] > r * tr.step_norms[n - 1] + kCmpTol)
        tr.decay_violations.push_back(static_cast<int>(n));
  }
}

}  // namespace

IterationTrace picard_solve(const MapSpec& T, double b, const SolveConfig& cfg,
                            NormKind kind) {
  check_config(b, cfg);
  const double lambda = 1.0 / (b + 1.0);
  IterationTrace tr;
  tr.start = cfg.x0;
  const Vector* prev = &tr.start;
  for (int n = 0; n < cfg.max_iter; ++n) {
    Vector v;
    try {
      v = averaged_apply(T, lambda, *prev, kind);
    } catch (const map_domain_error& e) {
      throw map_domain_error("iterate " + std::to_string(n + 1) + ": " +
                             e.what());
    }
    if (!v.allFinite())
      throw divergence_error("iterate " + std::to_string(n + 1) +
                             " is non-finite");
    const double step = dist(v, *prev, kind);
    const double scale = norm(*prev, kind);
    double res;
    try {
      res = fixed_point_residual(T, v, kind);
    } catch (const map_domain_error& e) {
      throw map_domain_error("iterate " + std::to_string(n + 1) + ": " +
                             e.what());
    }
    // An l2 norm can overflow while every coordinate is still finite; a stop
    // decision comparing infinities would declare a runaway orbit converged.
    if (!std::isfinite(step) || !std::isfinite(scale) || !std::isfinite(res))
      throw divergence_error("iterate " + std::to_string(n + 1) +
                             " has a non-finite step or residual norm");
    tr.iterates.push_back(std::move(v));
    tr.residuals.push_back(res);
    if (n == 0)
      tr.initial_step = step;
    else
      tr.step_norms.push_back(step);
    if (step <= cfg.tol * (1.0 + scale)) {
      tr.converged = true;
      tr.iterations_used = n;
      break;
    }
    prev = &tr.iterates.back();
  }
  if (!tr.converged) tr.iterations_used = cfg.max_iter;
  finish(tr, cfg);
  return tr;
}

IterationTrace picard_solve_multi(const MultiMapSpec& T, double b,
                                  const SolveConfig& cfg, NormKind kind) {
  check_config(b, cfg);
  const double lambda = 1.0 / (b + 1.0);
  IterationTrace tr;
  tr.start = cfg.x0;
  const Vector* prev = &tr.start;
  for (int n = 0; n < cfg.max_iter; ++n) {
    Vector v;
    double res;
    try {
      v = nearest_point(averaged_set(T, lambda, *prev, kind), *prev, kind);
      res = fixed_point_residual(T, v, kind);
    } catch (const map_domain_error& e) {
      throw map_domain_error("iterate " + std::to_string(n + 1) + ": " +
                             e.what());
    }
    if (!v.allFinite())
      throw divergence_error("iterate " + std::to_string(n + 1) +
                             " is non-finite");
    const double step = dist(v, *prev, kind);
    const double scale = norm(v, kind);
    // Same overflow guard as the single-valued orbit.
    if (!std::isfinite(step) || !std::isfinite(scale) || !std::isfinite(res))
      throw divergence_error("iterate " + std::to_string(n + 1) +
                             " has a non-finite step or residual norm");
    tr.iterates.push_back(std::move(v));
    tr.residuals.push_back(res);
    if (n == 0)
      tr.initial_step = step;
    else
      tr.step_norms.push_back(step);
    if (res <= cfg.tol * (1.0 + scale)) {
      tr.converged = true;
      tr.iterations_used = n;
      break;
    }
    prev = &tr.iterates.back();
  }
  if (!tr.converged) tr.iterations_used = cfg.max_iter;
  finish(tr, cfg);
  return tr;
}

std::vector<AprioriRecord> apriori_bound(const IterationTrace& trace,
                                         double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0)
    throw invalid_input_error("apriori_bound: r must lie in [0,1), got " +
                              std::to_string(r));
  if (trace.iterates.empty())
    throw invalid_input_error("apriori_bound: empty trace");
  std::vector<AprioriRecord> out;
  if (trace.step_norms.empty()) return out;
  double bound = trace.step_norms.front();
  for (std::size_t n = 0; n < trace.step_norms.size(); ++n) {
    if (n > 0) bound *= r;
    if (trace.step_norms[n] > bound + kCmpTol)
      out.push_back(
          {static_cast<int>(n), bound, trace.step_norms[n]});
  }
  return out;
}

}  // namespace fpcert
