#include "fpcert/maps.hpp"

#include <cmath>

namespace fpcert {
namespace {

void check_entries(const std::vector<std::pair<Vector, Vector>>& entries,
                   NormKind kind, const char* what) {
  if (entries.empty())
    throw invalid_input_error(std::string(what) + ": no entries");
  const auto dim = entries.front().first.size();
  if (dim == 0)
    throw invalid_input_error(std::string(what) + ": dimension-zero input");
  for (const auto& [x, y] : entries) {
    if (x.size() != dim || y.size() != dim)
      throw invalid_input_error(std::string(what) + ": mixed dimensions");
    if (!x.allFinite() || !y.allFinite())
      throw invalid_input_error(std::string(what) + ": non-finite entry");
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (dist(entries[i].first, entries[j].first, kind) <= kCmpTol)
        throw invalid_input_error(std::string(what) + ": inputs " +
                                  format_point(entries[i].first) + " and " +
                                  format_point(entries[j].first) +
                                  " coincide within tolerance");
}

void check_affine(const Affine& a, const char* what) {
  if (a.A.rows() == 0 || a.A.rows() != a.A.cols())
    throw invalid_input_error(std::string(what) + ": matrix must be square");
  if (a.c.size() != a.A.rows())
    throw invalid_input_error(std::string(what) +
                              ": offset dimension does not match matrix");
  if (!a.A.allFinite() || !a.c.allFinite())
    throw invalid_input_error(std::string(what) + ": non-finite coefficient");
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || lambda > 1.0 || !std::isfinite(lambda))
    throw invalid_input_error("averaging weight must lie in (0, 1], got " +
                              std::to_string(lambda));
}

// The one floating-point expression for the averaged point. averaged_apply,
// averaged_set and the table rewrite in averaged_map all go through here,
// which is what makes "rewrite once" and "blend every step" bitwise equal.
Vector blend(const Vector& x, const Vector& tx, double lambda) {
  return (1.0 - lambda) * x + lambda * tx;
}

const Vector* lookup(const std::vector<std::pair<Vector, Vector>>& entries,
                     const Vector& x, NormKind kind) {
  for (const auto& [in, out] : entries)
    if (dist(x, in, kind) <= kCmpTol) return &out;
  return nullptr;
}

}  // namespace

MapSpec make_tabulated(std::vector<std::pair<Vector, Vector>> entries,
                       NormKind kind) {
  check_entries(entries, kind, "tabulated map");
  MapSpec m;
  m.dimension = static_cast<int>(entries.front().first.size());
  m.rule = Tabulated{std::move(entries)};
  return m;
}

MapSpec make_affine(Matrix A, Vector c) {
  Affine a{std::move(A), std::move(c)};
  check_affine(a, "affine map");
  MapSpec m;
  m.dimension = static_cast<int>(a.A.rows());
  m.rule = std::move(a);
  return m;
}

MapSpec make_piecewise_override(MapSpec base,
                                std::vector<std::pair<Vector, Vector>> overrides,
                                NormKind kind) {
  check_entries(overrides, kind, "override list");
  if (static_cast<int>(overrides.front().first.size()) != base.dimension)
    throw invalid_input_error(
        "override list: dimension does not match base map");
  MapSpec m;
  m.dimension = base.dimension;
  m.rule = PiecewiseOverride{std::make_shared<const MapSpec>(std::move(base)),
                             std::move(overrides)};
  return m;
}

MultiMapSpec make_set_tabulated(
    std::vector<std::pair<Vector, PointSet>> entries, NormKind kind) {
  if (entries.empty())
    throw invalid_input_error("set-tabulated map: no entries");
  const auto dim = entries.front().first.size();
  if (dim == 0)
    throw invalid_input_error("set-tabulated map: dimension-zero input");
  for (const auto& [x, img] : entries) {
    if (x.size() != dim)
      throw invalid_input_error("set-tabulated map: mixed input dimensions");
    if (!x.allFinite())
      throw invalid_input_error("set-tabulated map: non-finite input");
    if (img.points.empty())
      throw invalid_input_error("set-tabulated map: empty image set at " +
                                format_point(x));
    if (img.dimension() != static_cast<int>(dim))
      throw invalid_input_error(
          "set-tabulated map: image dimension does not match input at " +
          format_point(x));
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (dist(entries[i].first, entries[j].first, kind) <= kCmpTol)
        throw invalid_input_error("set-tabulated map: inputs " +
                                  format_point(entries[i].first) + " and " +
                                  format_point(entries[j].first) +
                                  " coincide within tolerance");
  MultiMapSpec m;
  m.dimension = static_cast<int>(dim);
  m.rule = SetTabulated{std::move(entries)};
  return m;
}

MultiMapSpec make_affine_family(std::vector<Affine> rules) {
  if (rules.empty()) throw invalid_input_error("affine family: no rules");
  for (const auto& a : rules) check_affine(a, "affine family");
  const auto dim = rules.front().A.rows();
  for (const auto& a : rules)
    if (a.A.rows() != dim)
      throw invalid_input_error("affine family: mixed dimensions");
  MultiMapSpec m;
  m.dimension = static_cast<int>(dim);
  m.rule = AffineFamily{std::move(rules)};
  return m;
}

ContractionParams make_params(double b, double theta, std::optional<double> s,
                              std::optional<double> gamma) {
  if (!std::isfinite(b) || b < 0.0)
    throw invalid_input_error("parameter b must be finite and >= 0, got " +
                              std::to_string(b));
  if (!std::isfinite(theta) || theta < 0.0 || theta >= b + 1.0)
    throw invalid_input_error("parameter theta must lie in [0, b+1), got " +
                              std::to_string(theta));
  if (s && (!std::isfinite(*s) || *s <= 0.0))
    throw invalid_input_error("parameter s must be positive, got " +
                              std::to_string(*s));
  if (gamma && (!std::isfinite(*gamma) || *gamma <= 0.0 || *gamma >= 1.0))
    throw invalid_input_error("parameter gamma must lie in (0, 1), got " +
                              std::to_string(*gamma));
  ContractionParams p;
  p.b = b;
  p.theta = theta;
  p.lambda = 1.0 / (b + 1.0);
  p.r = theta * p.lambda;
  p.s = s;
  p.gamma = gamma;
  return p;
}

Vector eval(const MapSpec& T, const Vector& x, NormKind kind) {
  if (x.size() != T.dimension)
    throw invalid_input_error("eval: point dimension " +
                              std::to_string(x.size()) +
                              " does not match map dimension " +
                              std::to_string(T.dimension));
  if (!x.allFinite()) throw invalid_input_error("eval: non-finite point");
  return std::visit(
      [&](const auto& rule) -> Vector {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, Tabulated>) {
          if (const Vector* out = lookup(rule.entries, x, kind)) return *out;
          throw map_domain_error("point " + format_point(x) +
                                 " is outside the tabulated domain");
        } else if constexpr (std::is_same_v<R, Affine>) {
          return rule.A * x + rule.c;
        } else {
          if (const Vector* out = lookup(rule.overrides, x, kind)) return *out;
          return eval(*rule.base, x, kind);
        }
      },
      T.rule);
}

PointSet eval_multi(const MultiMapSpec& T, const Vector& x, NormKind kind) {
  if (x.size() != T.dimension)
    throw invalid_input_error("eval_multi: point dimension " +
                              std::to_string(x.size()) +
                              " does not match map dimension " +
                              std::to_string(T.dimension));
  if (!x.allFinite())
    throw invalid_input_error("eval_multi: non-finite point");
  return std::visit(
      [&](const auto& rule) -> PointSet {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, SetTabulated>) {
          for (const auto& [in, img] : rule.entries)
            if (dist(x, in, kind) <= kCmpTol) return img;
          throw map_domain_error("point " + format_point(x) +
                                 " is outside the set-tabulated domain");
        } else {
          std::vector<Vector> pts;
          pts.reserve(rule.rules.size());
          for (const auto& a : rule.rules) pts.push_back(a.A * x + a.c);
          return make_point_set(std::move(pts), kind);
        }
      },
      T.rule);
}

Vector averaged_apply(const MapSpec& T, double lambda, const Vector& x,
                      NormKind kind) {
  check_lambda(lambda);
  Vector tx = eval(T, x, kind);
  if (lambda == 1.0) return tx;
  return blend(x, tx, lambda);
}

PointSet averaged_set(const MultiMapSpec& T, double lambda, const Vector& x,
                      NormKind kind) {
  check_lambda(lambda);
  PointSet img = eval_multi(T, x, kind);
  if (lambda == 1.0) return img;
  std::vector<Vector> pts;
  pts.reserve(img.points.size());
  for (const auto& s : img.points) pts.push_back(blend(x, s, lambda));
  return make_point_set(std::move(pts), kind);
}

double fixed_point_residual(const MapSpec& T, const Vector& x, NormKind kind) {
  return dist(x, eval(T, x, kind), kind);
}

double fixed_point_residual(const MultiMapSpec& T, const Vector& x,
                            NormKind kind) {
  return dist_point_set(x, eval_multi(T, x, kind), kind);
}

MapSpec averaged_map(const MapSpec& T, double lambda, NormKind kind) {
  check_lambda(lambda);
  return std::visit(
      [&](const auto& rule) -> MapSpec {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, Tabulated>) {
          std::vector<std::pair<Vector, Vector>> entries;
          entries.reserve(rule.entries.size());
          for (const auto& [x, y] : rule.entries)
            entries.emplace_back(x, lambda == 1.0 ? y : blend(x, y, lambda));
          return make_tabulated(std::move(entries), kind);
        } else if constexpr (std::is_same_v<R, Affine>) {
          const auto n = rule.A.rows();
          Matrix A = (1.0 - lambda) * Matrix::Identity(n, n) + lambda * rule.A;
          Vector c = lambda * rule.c;
          return make_affine(std::move(A), std::move(c));
        } else {
          MapSpec base = averaged_map(*rule.base, lambda, kind);
          std::vector<std::pair<Vector, Vector>> overrides;
          overrides.reserve(rule.overrides.size());
          for (const auto& [x, y] : rule.overrides)
            overrides.emplace_back(x, lambda == 1.0 ? y : blend(x, y, lambda));
          return make_piecewise_override(std::move(base), std::move(overrides),
                                         kind);
        }
      },
      T.rule);
}

MultiMapSpec averaged_map(const MultiMapSpec& T, double lambda, NormKind kind) {
  check_lambda(lambda);
  return std::visit(
      [&](const auto& rule) -> MultiMapSpec {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, SetTabulated>) {
          std::vector<std::pair<Vector, PointSet>> entries;
          entries.reserve(rule.entries.size());
          for (const auto& [x, img] : rule.entries) {
            if (lambda == 1.0) {
              entries.emplace_back(x, img);
              continue;
            }
            std::vector<Vector> pts;
            pts.reserve(img.points.size());
            for (const auto& s : img.points) pts.push_back(blend(x, s, lambda));
            entries.emplace_back(x, make_point_set(std::move(pts), kind));
          }
          return make_set_tabulated(std::move(entries), kind);
        } else {
          std::vector<Affine> rules;
          rules.reserve(rule.rules.size());
          const auto n = T.dimension;
          for (const auto& a : rule.rules) {
            Matrix A =
                (1.0 - lambda) * Matrix::Identity(n, n) + lambda * a.A;
            Vector c = lambda * a.c;
            rules.push_back(Affine{std::move(A), std::move(c)});
          }
          return make_affine_family(std::move(rules));
        }
      },
      T.rule);
}

std::vector<Vector> tabulated_domain(const MapSpec& T) {
  return std::visit(
      [&](const auto& rule) -> std::vector<Vector> {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, Tabulated>) {
          std::vector<Vector> out;
          out.reserve(rule.entries.size());
          for (const auto& [x, y] : rule.entries) out.push_back(x);
          return out;
        } else if constexpr (std::is_same_v<R, Affine>) {
          return {};
        } else {
          std::vector<Vector> out = tabulated_domain(*rule.base);
          for (const auto& [x, y] : rule.overrides) {
            bool seen = false;
            for (const auto& p : out)
              if (p == x) {
                seen = true;
                break;
              }
            if (!seen) out.push_back(x);
          }
          return out;
        }
      },
      T.rule);
}

std::vector<Vector> tabulated_domain(const MultiMapSpec& T) {
  return std::visit(
      [&](const auto& rule) -> std::vector<Vector> {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, SetTabulated>) {
          std::vector<Vector> out;
          out.reserve(rule.entries.size());
          for (const auto& [x, img] : rule.entries) out.push_back(x);
          return out;
        } else {
          return {};
        }
      },
      T.rule);
}

}  // namespace fpcert
