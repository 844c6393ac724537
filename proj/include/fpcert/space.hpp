#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "fpcert/errors.hpp"

namespace fpcert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Absolute tolerance for every equality/ordering decision on computed reals:
// certifier comparisons, tabulated-input matching, point-set deduplication,
// fixed-point residual acceptance. One constant so that "equal within
// tolerance" means the same thing everywhere.
inline constexpr double kCmpTol = 1e-9;

enum class NormKind { L1, L2, LInf };

NormKind parse_norm(const std::string& name);     // "l1" | "l2" | "linf"
std::string to_string(NormKind kind);

// "(4, 5)" — for diagnostics only, round-trip not intended.
std::string format_point(const Vector& v);

// Norm of a vector expression under the selected kind. Works on any dense
// Eigen expression; rejects dimension zero and non-finite coordinates.
template <typename Derived>
double norm(const Eigen::MatrixBase<Derived>& v, NormKind kind) {
  if (v.size() == 0) throw invalid_input_error("norm: dimension-zero vector");
  if (!v.derived().allFinite())
    throw invalid_input_error("norm: non-finite coordinate");
  switch (kind) {
    case NormKind::L1:
      return v.template lpNorm<1>();
    case NormKind::L2:
      return v.template lpNorm<2>();
    case NormKind::LInf:
      return v.template lpNorm<Eigen::Infinity>();
  }
  throw invalid_input_error("norm: unknown kind");
}

template <typename DerivedA, typename DerivedB>
double dist(const Eigen::MatrixBase<DerivedA>& x,
            const Eigen::MatrixBase<DerivedB>& y, NormKind kind) {
  if (x.size() != y.size())
    throw invalid_input_error("dist: dimension mismatch (" +
                              std::to_string(x.size()) + " vs " +
                              std::to_string(y.size()) + ")");
  return norm(x.derived() - y.derived(), kind);
}

// Finite nonempty point set. Construction deduplicates within kCmpTol under
// the norm used to build it, keeping first occurrences, so downstream min/max
// scans never see two copies of the same point.
struct PointSet {
  std::vector<Vector> points;

  int dimension() const {
    return points.empty() ? 0 : static_cast<int>(points.front().size());
  }
  std::size_t size() const { return points.size(); }
};

PointSet make_point_set(std::vector<Vector> points, NormKind kind);

// Translate every point by the same offset. Isometry: preserves all pairwise
// distances, hence also the deduplication invariant.
PointSet translate(const PointSet& s, const Vector& offset);

// min_{b in B} dist(a, b)
double dist_point_set(const Vector& a, const PointSet& B, NormKind kind);

// Directed (one-sided) Hausdorff excess: max_{a in A} dist(a, B).
double excess(const PointSet& A, const PointSet& B, NormKind kind);

// Pompeiu-Hausdorff distance between finite sets:
// max(excess(A,B), excess(B,A)).
double hausdorff(const PointSet& A, const PointSet& B, NormKind kind);

// Reads one point per line, coordinates whitespace-separated; blank lines and
// '#' comments skipped. Throws invalid_input_error on ragged rows, parse
// failures, or an empty stream.
PointSet load_point_set(std::istream& in, NormKind kind);
PointSet load_point_set_file(const std::string& path, NormKind kind);

}  // namespace fpcert
