#include "fpcert/space.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fpcert {

NormKind parse_norm(const std::string& name) {
  if (name == "l1") return NormKind::L1;
  if (name == "l2") return NormKind::L2;
  if (name == "linf") return NormKind::LInf;
  throw invalid_input_error("unknown norm '" + name +
                            "' (expected l1, l2, or linf)");
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return "l1";
    case NormKind::L2:
      return "l2";
    case NormKind::LInf:
      return "linf";
  }
  return "?";
}

std::string format_point(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

PointSet make_point_set(std::vector<Vector> points, NormKind kind) {
  if (points.empty())
    throw invalid_input_error("point set: no points");
  const auto dim = points.front().size();
  if (dim == 0) throw invalid_input_error("point set: dimension-zero point");
  for (const auto& p : points) {
    if (p.size() != dim)
      throw invalid_input_error("point set: mixed dimensions (" +
                                std::to_string(dim) + " vs " +
                                std::to_string(p.size()) + ")");
    if (!p.allFinite())
      throw invalid_input_error("point set: non-finite coordinate");
  }
  PointSet out;
  out.points.reserve(points.size());
  for (auto& p : points) {
    bool dup = false;
    for (const auto& q : out.points) {
      if (dist(p, q, kind) <= kCmpTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.points.push_back(std::move(p));
  }
  return out;
}

PointSet translate(const PointSet& s, const Vector& offset) {
  if (s.points.empty()) throw invalid_input_error("translate: empty set");
  if (offset.size() != s.points.front().size())
    throw invalid_input_error("translate: offset dimension mismatch");
  if (!offset.allFinite())
    throw invalid_input_error("translate: non-finite offset");
  PointSet out;
  out.points.reserve(s.points.size());
  for (const auto& p : s.points) out.points.push_back(p + offset);
  return out;
}

double dist_point_set(const Vector& a, const PointSet& B, NormKind kind) {
  if (B.points.empty()) throw invalid_input_error("dist_point_set: empty set");
  double best = dist(a, B.points.front(), kind);
  for (std::size_t i = 1; i < B.points.size(); ++i)
    best = std::min(best, dist(a, B.points[i], kind));
  return best;
}

double excess(const PointSet& A, const PointSet& B, NormKind kind) {
  if (A.points.empty() || B.points.empty())
    throw invalid_input_error("excess: empty set");
  double worst = 0.0;
  for (const auto& a : A.points)
    worst = std::max(worst, dist_point_set(a, B, kind));
  return worst;
}

double hausdorff(const PointSet& A, const PointSet& B, NormKind kind) {
  return std::max(excess(A, B, kind), excess(B, A, kind));
}

PointSet load_point_set(std::istream& in, NormKind kind) {
  std::vector<Vector> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::vector<double> coords;
    double v = 0.0;
    while (fields >> v) coords.push_back(v);
    if (!fields.eof())
      throw invalid_input_error("point set line " + std::to_string(lineno) +
                                ": unparsable coordinate");
    if (coords.empty()) continue;  // blank or comment-only line
    Vector p(static_cast<Eigen::Index>(coords.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i)
      p[i] = coords[static_cast<std::size_t>(i)];
    if (!rows.empty() && p.size() != rows.front().size())
      throw invalid_input_error("point set line " + std::to_string(lineno) +
                                ": expected " +
                                std::to_string(rows.front().size()) +
                                " coordinates, got " +
                                std::to_string(p.size()));
    rows.push_back(std::move(p));
  }
  if (rows.empty())
    throw invalid_input_error("point set: no points in input");
  return make_point_set(std::move(rows), kind);
}

PointSet load_point_set_file(const std::string& path, NormKind kind) {
  std::ifstream in(path);
  if (!in) throw invalid_input_error("cannot open point-set file " + path);
  return load_point_set(in, kind);
}

}  // namespace fpcert
