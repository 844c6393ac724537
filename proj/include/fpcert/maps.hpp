#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fpcert/space.hpp"

namespace fpcert {

struct MapSpec;

// Finite lookup table: total on exactly the listed inputs. Lookup matches
// within kCmpTol under the active norm; anything else is a domain error.
struct Tabulated {
  std::vector<std::pair<Vector, Vector>> entries;
};

// x -> A x + c on the whole space.
struct Affine {
  Matrix A;
  Vector c;
};

// A base map with finitely many pointwise exceptions. Evaluation tries the
// override list first (match within kCmpTol), then falls through to the base.
struct PiecewiseOverride {
  std::shared_ptr<const MapSpec> base;
  std::vector<std::pair<Vector, Vector>> overrides;
};

struct MapSpec {
  std::variant<Tabulated, Affine, PiecewiseOverride> rule;
  int dimension = 0;
};

// Multivalued analogues. SetTabulated lists the full image set per input;
// AffineFamily applies every rule to x and collects the results into a set.
struct SetTabulated {
  std::vector<std::pair<Vector, PointSet>> entries;
};

struct AffineFamily {
  std::vector<Affine> rules;
};

struct MultiMapSpec {
  std::variant<SetTabulated, AffineFamily> rule;
  int dimension = 0;
};

MapSpec make_tabulated(std::vector<std::pair<Vector, Vector>> entries,
                       NormKind kind);
MapSpec make_affine(Matrix A, Vector c);
MapSpec make_piecewise_override(MapSpec base,
                                std::vector<std::pair<Vector, Vector>> overrides,
                                NormKind kind);
MultiMapSpec make_set_tabulated(std::vector<std::pair<Vector, PointSet>> entries,
                                NormKind kind);
MultiMapSpec make_affine_family(std::vector<Affine> rules);

// The parameter tuple every enriched condition is phrased in. lambda and r
// are derived once at construction (lambda = 1/(b+1), r = theta*lambda) and
// read everywhere else, so no two call sites can disagree about them.
// Admissible ranges: b >= 0, 0 <= theta < b+1 (hence r in [0,1)),
// s > 0 and gamma in (0,1) when present.
struct ContractionParams {
  double b = 0.0;
  double theta = 0.0;
  double lambda = 1.0;
  double r = 0.0;
  std::optional<double> s;
  std::optional<double> gamma;
};

ContractionParams make_params(double b, double theta,
                              std::optional<double> s = std::nullopt,
                              std::optional<double> gamma = std::nullopt);

Vector eval(const MapSpec& T, const Vector& x, NormKind kind);
PointSet eval_multi(const MultiMapSpec& T, const Vector& x, NormKind kind);

// Averaged (Krasnoselskii) application: (1-lambda) x + lambda T x. With
// lambda = 1 this returns eval(T, x) itself, bitwise.
Vector averaged_apply(const MapSpec& T, double lambda, const Vector& x,
                      NormKind kind);

// Elementwise averaged image set {(1-lambda) x + lambda s : s in Tx},
// deduplicated like any point set.
PointSet averaged_set(const MultiMapSpec& T, double lambda, const Vector& x,
                      NormKind kind);

// ||x - Tx|| for single-valued maps; dist(x, Tx) for multivalued ones.
double fixed_point_residual(const MapSpec& T, const Vector& x, NormKind kind);
double fixed_point_residual(const MultiMapSpec& T, const Vector& x,
                            NormKind kind);

// The averaged transform as a first-class map. Tabulated/override entries are
// rewritten through exactly the floating-point blend averaged_apply uses, so
// evaluating the result reproduces averaged application bit for bit; affine
// rules are collapsed to A' = (1-lambda) I + lambda A, c' = lambda c.
MapSpec averaged_map(const MapSpec& T, double lambda, NormKind kind);
MultiMapSpec averaged_map(const MultiMapSpec& T, double lambda, NormKind kind);

// Every input a tabulated (or override-backed) map is defined on; empty for
// purely affine maps, whose domain is the whole space.
std::vector<Vector> tabulated_domain(const MapSpec& T);
std::vector<Vector> tabulated_domain(const MultiMapSpec& T);

}  // namespace fpcert
