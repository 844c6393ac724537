#include "fpcert/conditions.hpp"

#include <cmath>

#include "fpcert/rng.hpp"

namespace fpcert {
namespace {

// Materialized pair lists are bounded so a typo in grid steps fails fast
// instead of exhausting memory.
constexpr std::size_t kMaxPairs = 20'000'000;

void check_box(const std::vector<std::array<double, 2>>& bounds,
               const char* what) {
  if (bounds.empty())
    throw invalid_input_error(std::string(what) + ": no bounds");
  for (const auto& [lo, hi] : bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw invalid_input_error(std::string(what) + ": non-finite bound");
    if (lo > hi)
      throw invalid_input_error(std::string(what) + ": empty interval [" +
                                std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

std::string format_box(const std::vector<std::array<double, 2>>& bounds) {
  std::string out;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (i) out += "x";
    out += "[" + std::to_string(bounds[i][0]) + "," +
           std::to_string(bounds[i][1]) + "]";
  }
  return out;
}

ConditionKind tagged(ConditionTag tag, ContractionParams p) {
  ConditionKind c;
  c.tag = tag;
  c.params = std::move(p);
  return c;
}

// Forwards parameter-tuple range failures as condition errors, which is what
// they are when raised on behalf of a condition tag.
ContractionParams condition_params(double b, double theta,
                                   std::optional<double> s = std::nullopt,
                                   std::optional<double> gamma = std::nullopt) {
  try {
    return make_params(b, theta, s, gamma);
  } catch (const invalid_input_error& e) {
    throw invalid_condition_error(e.what());
  }
}

// One evaluated implication. `compliant` is vacuous truth or a satisfied
// consequent; everything else becomes a witness.
struct ImplicationCheck {
  double ant_lhs = 0, ant_rhs = 0;
  bool ant_holds = false;
  double cons_lhs = 0, cons_rhs = 0;
  bool compliant = true;
};

ImplicationCheck check_single(const ConditionKind& cond, const Vector& x,
                              const Vector& y, const Vector& tx,
                              const Vector& ty, double dx_tx, NormKind kind) {
  const ContractionParams& p = cond.params;
  const double d = dist(x, y, kind);
  ImplicationCheck out;
  bool strict = false;
  switch (cond.tag) {
    case ConditionTag::Banach:
      out.ant_lhs = 0.0;
      out.ant_rhs = 0.0;
      out.ant_holds = true;  // unconditional form
      out.cons_lhs = dist(tx, ty, kind);
      out.cons_rhs = p.r * d;
      break;
    case ConditionTag::Suzuki:
      out.ant_lhs = f_threshold(p.r) * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::nonstrict(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = dist(tx, ty, kind);
      out.cons_rhs = p.r * d;
      break;
    case ConditionTag::SuzukiStrict:
      out.ant_lhs = 0.5 * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::strict_antecedent(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = dist(tx, ty, kind);
      out.cons_rhs = d;
      strict = true;
      break;
    case ConditionTag::Edelstein:
      // Hypothesis is x != y; recorded as 0 < d with the usual margin.
      out.ant_lhs = 0.0;
      out.ant_rhs = d;
      out.ant_holds = cmp::strict_antecedent(0.0, d);
      out.cons_lhs = dist(tx, ty, kind);
      out.cons_rhs = d;
      strict = true;
      break;
    case ConditionTag::SuzukiBerinde:
      out.ant_lhs = psi_single(p.r, p.lambda) * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::nonstrict(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = norm(p.b * (x - y) + tx - ty, kind);
      out.cons_rhs = p.theta * d;
      break;
    case ConditionTag::GammaFamily:
      out.ant_lhs = p.s.value() * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::nonstrict(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = norm(p.b * (x - y) + tx - ty, kind);
      out.cons_rhs = p.theta * d;
      break;
    case ConditionTag::CompactBerinde:
      out.ant_lhs = 0.5 * p.lambda * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::strict_antecedent(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = norm(p.b * (x - y) + tx - ty, kind);
      out.cons_rhs = d;
      strict = true;
      break;
    default:
      throw invalid_condition_error("condition " + to_string(cond.tag) +
                                    " does not apply to single-valued maps");
  }
  if (out.ant_holds)
    out.compliant = strict ? cmp::strict_consequent(out.cons_lhs, out.cons_rhs)
                           : cmp::nonstrict(out.cons_lhs, out.cons_rhs);
  return out;
}

ImplicationCheck check_multi(const ConditionKind& cond, const Vector& x,
                             const Vector& y, const PointSet& tx,
                             const PointSet& ty, double dx_tx, NormKind kind) {
  const ContractionParams& p = cond.params;
  const double d = dist(x, y, kind);
  // The enriched set bx + Tx is the translate of Tx by b*x.
  const double big_h =
      hausdorff(translate(tx, p.b * x), translate(ty, p.b * y), kind);
  ImplicationCheck out;
  bool strict = false;
  switch (cond.tag) {
    case ConditionTag::MultiSuzukiBerinde:
      out.ant_lhs = psi_multi(p.r, p.lambda) * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::nonstrict(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = big_h;
      out.cons_rhs = p.theta * d;
      break;
    case ConditionTag::MultiGamma:
      out.ant_lhs = p.gamma.value() * p.lambda * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::nonstrict(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = big_h;
      out.cons_rhs = p.theta * d;
      break;
    case ConditionTag::MultiCompactGamma:
      out.ant_lhs = p.gamma.value() * p.lambda * dx_tx;
      out.ant_rhs = d;
      out.ant_holds = cmp::strict_antecedent(out.ant_lhs, out.ant_rhs);
      out.cons_lhs = big_h;
      out.cons_rhs = d;
      strict = true;
      break;
    default:
      throw invalid_condition_error("condition " + to_string(cond.tag) +
                                    " does not apply to multivalued maps");
  }
  if (out.ant_holds)
    out.compliant = strict ? cmp::strict_consequent(out.cons_lhs, out.cons_rhs)
                           : cmp::nonstrict(out.cons_lhs, out.cons_rhs);
  return out;
}

void record(CertificateReport& rep, const ImplicationCheck& c, std::size_t i,
            const Vector& x, const Vector& y) {
  ++rep.pairs_checked;
  if (!c.ant_holds) return;
  ++rep.antecedent_hits;
  if (c.compliant) return;
  Witness w;
  w.pair_index = i;
  w.x = x;
  w.y = y;
  w.antecedent_lhs = c.ant_lhs;
  w.antecedent_rhs = c.ant_rhs;
  w.consequent_lhs = c.cons_lhs;
  w.consequent_rhs = c.cons_rhs;
  rep.violations.push_back(std::move(w));
}

}  // namespace

double f_threshold(double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0)
    throw invalid_input_error("f_threshold: r must lie in [0,1), got " +
                              std::to_string(r));
  static const double kGoldenPoint = (std::sqrt(5.0) - 1.0) / 2.0;
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  if (r <= kGoldenPoint) return 1.0;
  if (r < kInvSqrt2) return (1.0 - r) / (r * r);
  return 1.0 / (1.0 + r);
}

static void check_lambda_range(double lambda, const char* what) {
  if (!std::isfinite(lambda) || !(lambda > 0.0) || lambda > 1.0)
    throw invalid_input_error(std::string(what) +
                              ": lambda must lie in (0,1], got " +
                              std::to_string(lambda));
}

double psi_single(double r, double lambda) {
  check_lambda_range(lambda, "psi_single");
  return lambda * f_threshold(r);
}

double psi_multi(double r, double lambda) {
  check_lambda_range(lambda, "psi_multi");
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0)
    throw invalid_input_error("psi_multi: r must lie in [0,1), got " +
                              std::to_string(r));
  return lambda / (1.0 + r);
}

std::string to_string(ConditionTag tag) {
  switch (tag) {
    case ConditionTag::Banach:
      return "banach";
    case ConditionTag::Suzuki:
      return "suzuki";
    case ConditionTag::SuzukiStrict:
      return "suzuki_strict";
    case ConditionTag::Edelstein:
      return "edelstein";
    case ConditionTag::SuzukiBerinde:
      return "suzuki_berinde";
    case ConditionTag::GammaFamily:
      return "gamma_family";
    case ConditionTag::CompactBerinde:
      return "compact_berinde";
    case ConditionTag::MultiSuzukiBerinde:
      return "multi_suzuki_berinde";
    case ConditionTag::MultiGamma:
      return "multi_gamma";
    case ConditionTag::MultiCompactGamma:
      return "multi_compact_gamma";
  }
  return "?";
}

ConditionTag parse_condition_tag(const std::string& name) {
  for (ConditionTag tag :
       {ConditionTag::Banach, ConditionTag::Suzuki, ConditionTag::SuzukiStrict,
        ConditionTag::Edelstein, ConditionTag::SuzukiBerinde,
        ConditionTag::GammaFamily, ConditionTag::CompactBerinde,
        ConditionTag::MultiSuzukiBerinde, ConditionTag::MultiGamma,
        ConditionTag::MultiCompactGamma})
    if (name == to_string(tag)) return tag;
  throw invalid_condition_error("unknown condition tag '" + name + "'");
}

ConditionKind banach_condition(double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0)
    throw invalid_condition_error("banach: r must lie in [0,1), got " +
                                  std::to_string(r));
  return tagged(ConditionTag::Banach, condition_params(0.0, r));
}

ConditionKind suzuki_condition(double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0)
    throw invalid_condition_error("suzuki: r must lie in [0,1), got " +
                                  std::to_string(r));
  return tagged(ConditionTag::Suzuki, condition_params(0.0, r));
}

ConditionKind suzuki_strict_condition() {
  return tagged(ConditionTag::SuzukiStrict, condition_params(0.0, 0.0));
}

ConditionKind edelstein_condition() {
  return tagged(ConditionTag::Edelstein, condition_params(0.0, 0.0));
}

ConditionKind suzuki_berinde_condition(double b, double theta) {
  return tagged(ConditionTag::SuzukiBerinde, condition_params(b, theta));
}

ConditionKind gamma_family_condition(double b, double theta, double s) {
  ContractionParams p = condition_params(b, theta, s);
  const double psi = psi_single(p.r, p.lambda);
  if (s > psi + kCmpTol)
    throw invalid_condition_error(
        "gamma_family: s must lie in (0, psi(r)] = (0, " +
        std::to_string(psi) + "], got " + std::to_string(s));
  return tagged(ConditionTag::GammaFamily, std::move(p));
}

ConditionKind compact_berinde_condition(double b) {
  return tagged(ConditionTag::CompactBerinde, condition_params(b, 0.0));
}

ConditionKind multi_suzuki_berinde_condition(double b, double theta) {
  return tagged(ConditionTag::MultiSuzukiBerinde, condition_params(b, theta));
}

ConditionKind multi_gamma_condition(double b, double theta, double gamma) {
  ContractionParams p = condition_params(b, theta, std::nullopt, gamma);
  const double budget = (p.theta * p.lambda + 1.0) * gamma;
  if (budget > 1.0 + kCmpTol)
    throw invalid_condition_error(
        "multi_gamma: (theta*lambda + 1)*gamma must be <= 1, got " +
        std::to_string(budget));
  return tagged(ConditionTag::MultiGamma, std::move(p));
}

ConditionKind multi_compact_gamma_condition(double b, double gamma) {
  ContractionParams p = condition_params(b, 0.0, std::nullopt, gamma);
  if (gamma > 0.5 + kCmpTol)
    throw invalid_condition_error(
        "multi_compact_gamma: gamma must lie in (0, 1/2], got " +
        std::to_string(gamma));
  return tagged(ConditionTag::MultiCompactGamma, std::move(p));
}

ConditionKind make_condition(ConditionTag tag, std::optional<double> b,
                             std::optional<double> theta,
                             std::optional<double> s,
                             std::optional<double> gamma,
                             std::optional<double> r) {
  auto need = [&](const std::optional<double>& v,
                  const char* field) -> double {
    if (!v)
      throw invalid_condition_error("condition " + to_string(tag) +
                                    " requires parameter '" + field + "'");
    return *v;
  };
  switch (tag) {
    case ConditionTag::Banach:
      return banach_condition(need(r, "r"));
    case ConditionTag::Suzuki:
      return suzuki_condition(need(r, "r"));
    case ConditionTag::SuzukiStrict:
      return suzuki_strict_condition();
    case ConditionTag::Edelstein:
      return edelstein_condition();
    case ConditionTag::SuzukiBerinde:
      return suzuki_berinde_condition(need(b, "b"), need(theta, "theta"));
    case ConditionTag::GammaFamily:
      return gamma_family_condition(need(b, "b"), need(theta, "theta"),
                                    need(s, "s"));
    case ConditionTag::CompactBerinde:
      return compact_berinde_condition(need(b, "b"));
    case ConditionTag::MultiSuzukiBerinde:
      return multi_suzuki_berinde_condition(need(b, "b"), need(theta, "theta"));
    case ConditionTag::MultiGamma:
      return multi_gamma_condition(need(b, "b"), need(theta, "theta"),
                                   need(gamma, "gamma"));
    case ConditionTag::MultiCompactGamma:
      return multi_compact_gamma_condition(need(b, "b"), need(gamma, "gamma"));
  }
  throw invalid_condition_error("unknown condition tag");
}

PairSample exhaustive_pairs(const std::vector<Vector>& points) {
  if (points.empty())
    throw invalid_input_error("exhaustive sample: empty domain");
  if (points.size() * points.size() > kMaxPairs)
    throw invalid_input_error("exhaustive sample: too many pairs");
  PairSample s;
  s.pairs.reserve(points.size() * points.size());
  for (const auto& x : points)
    for (const auto& y : points) s.pairs.emplace_back(x, y);
  s.provenance =
      "exhaustive-tabulated(" + std::to_string(points.size()) + " points)";
  return s;
}

PairSample grid_pairs(const std::vector<std::array<double, 2>>& bounds,
                      int steps_per_axis) {
  check_box(bounds, "grid sample");
  if (steps_per_axis < 1)
    throw invalid_input_error("grid sample: steps must be >= 1");
  std::size_t n_points = 1;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    n_points *= static_cast<std::size_t>(steps_per_axis);
    if (n_points * n_points > kMaxPairs)
      throw invalid_input_error("grid sample: too many pairs");
  }
  const auto dim = static_cast<Eigen::Index>(bounds.size());
  std::vector<Vector> points;
  points.reserve(n_points);
  std::vector<int> idx(bounds.size(), 0);
  for (;;) {
    Vector p(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      const auto [lo, hi] = bounds[static_cast<std::size_t>(a)];
      p[a] = steps_per_axis == 1
                 ? lo
                 : lo + idx[static_cast<std::size_t>(a)] * (hi - lo) /
                            (steps_per_axis - 1);
    }
    points.push_back(std::move(p));
    // odometer increment, last axis fastest
    Eigen::Index a = dim - 1;
    for (; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < steps_per_axis) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
    if (a < 0) break;
  }
  PairSample s = exhaustive_pairs(points);
  s.provenance = "grid(" + format_box(bounds) +
                 ", steps=" + std::to_string(steps_per_axis) + ")";
  return s;
}

PairSample random_pairs(const std::vector<std::array<double, 2>>& bounds,
                        int count, std::uint64_t seed) {
  check_box(bounds, "random sample");
  if (count < 1) throw invalid_input_error("random sample: count must be >= 1");
  if (static_cast<std::size_t>(count) > kMaxPairs)
    throw invalid_input_error("random sample: too many pairs");
  SeededRng rng(seed);
  const auto dim = static_cast<Eigen::Index>(bounds.size());
  auto draw = [&] {
    Vector p(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      const auto [lo, hi] = bounds[static_cast<std::size_t>(a)];
      p[a] = rng.uniform(lo, hi);
    }
    return p;
  };
  PairSample s;
  s.pairs.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vector x = draw();
    Vector y = draw();
    s.pairs.emplace_back(std::move(x), std::move(y));
  }
  s.provenance = "random(seed=" + std::to_string(seed) +
                 ", count=" + std::to_string(count) + ")";
  return s;
}

CertificateReport certify(const MapSpec& T, const ConditionKind& cond,
                          const PairSample& sample, NormKind kind) {
  if (cond.multivalued())
    throw invalid_condition_error(
        "condition " + to_string(cond.tag) +
        " is multivalued; the problem's map is single-valued");
  CertificateReport rep;
  // Grid/exhaustive samples repeat x across consecutive pairs; reuse Tx.
  Vector cached_x, cached_tx;
  double cached_dx_tx = 0.0;
  bool have_cache = false;
  for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
    const auto& [x, y] = sample.pairs[i];
    try {
      if (!have_cache || cached_x.size() != x.size() || cached_x != x) {
        cached_x = x;
        cached_tx = eval(T, x, kind);
        cached_dx_tx = dist(x, cached_tx, kind);
        have_cache = true;
      }
      const Vector ty = eval(T, y, kind);
      record(rep, check_single(cond, x, y, cached_tx, ty, cached_dx_tx, kind),
             i, x, y);
    } catch (const map_domain_error& e) {
      throw map_domain_error("pair " + std::to_string(i) + " (x=" +
                             format_point(x) + ", y=" + format_point(y) +
                             "): " + e.what());
    }
  }
  return rep;
}

CertificateReport certify(const MultiMapSpec& T, const ConditionKind& cond,
                          const PairSample& sample, NormKind kind) {
  if (!cond.multivalued())
    throw invalid_condition_error(
        "condition " + to_string(cond.tag) +
        " is single-valued; the problem's map is multivalued");
  CertificateReport rep;
  for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
    const auto& [x, y] = sample.pairs[i];
    try {
      const PointSet tx = eval_multi(T, x, kind);
      const PointSet ty = eval_multi(T, y, kind);
      const double dx_tx = dist_point_set(x, tx, kind);
      record(rep, check_multi(cond, x, y, tx, ty, dx_tx, kind), i, x, y);
    } catch (const map_domain_error& e) {
      throw map_domain_error("pair " + std::to_string(i) + " (x=" +
                             format_point(x) + ", y=" + format_point(y) +
                             "): " + e.what());
    }
  }
  return rep;
}

CertificateReport uniqueness_certify(const MapSpec& T, double lambda,
                                     const Vector& z, double r,
                                     const std::vector<Vector>& sample,
                                     NormKind kind, double fixed_point_tol) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0)
    throw invalid_input_error("uniqueness check: r must lie in [0,1), got " +
                              std::to_string(r));
  const double res = fixed_point_residual(T, z, kind);
  if (res > fixed_point_tol)
    throw precondition_error("uniqueness check: candidate z=" +
                             format_point(z) + " has residual " +
                             std::to_string(res) + " above tolerance " +
                             std::to_string(fixed_point_tol));
  CertificateReport rep;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Vector& x = sample[i];
    const double dxz = dist(x, z, kind);
    if (dxz <= kCmpTol) continue;  // the inequality quantifies over x != z
    ++rep.pairs_checked;
    ++rep.antecedent_hits;
    const double lhs = dist(averaged_apply(T, lambda, x, kind), z, kind);
    const double rhs = r * dxz;
    if (!cmp::nonstrict(lhs, rhs)) {
      Witness w;
      w.pair_index = i;
      w.x = x;
      w.y = z;
      w.antecedent_lhs = 0.0;
      w.antecedent_rhs = dxz;
      w.consequent_lhs = lhs;
      w.consequent_rhs = rhs;
      rep.violations.push_back(std::move(w));
    }
  }
  return rep;
}

}  // namespace fpcert
