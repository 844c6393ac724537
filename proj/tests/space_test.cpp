#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fpcert/rng.hpp"
#include "fpcert/space.hpp"

using namespace fpcert;

namespace {

Vector vec(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

Vector vec1(double a) { return vec({a}); }

constexpr NormKind kAllNorms[] = {NormKind::L1, NormKind::L2, NormKind::LInf};

// Independent reference: scan all cross-set distances with plain loops.
double hausdorff_oracle(const PointSet& A, const PointSet& B, NormKind kind) {
  auto one_sided = [&](const PointSet& from, const PointSet& to) {
    double worst = 0.0;
    for (const auto& a : from.points) {
      double best = dist(a, to.points[0], kind);
      for (const auto& b : to.points) best = std::min(best, dist(a, b, kind));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(A, B), one_sided(B, A));
}

PointSet random_set(SeededRng& rng, int dim, int max_size, NormKind kind) {
  const int n = 1 + static_cast<int>(rng.uniform(0.0, max_size - 1e-9));
  std::vector<Vector> pts;
  for (int i = 0; i < n; ++i) {
    Vector p(dim);
    for (int a = 0; a < dim; ++a) p[a] = rng.uniform(-5.0, 5.0);
    pts.push_back(std::move(p));
  }
  return make_point_set(std::move(pts), kind);
}

}  // namespace

TEST_CASE("norm kinds parse and print") {
  CHECK(parse_norm("l1") == NormKind::L1);
  CHECK(parse_norm("l2") == NormKind::L2);
  CHECK(parse_norm("linf") == NormKind::LInf);
  CHECK(to_string(NormKind::LInf) == "linf");
  CHECK_THROWS_AS(parse_norm("l3"), invalid_input_error);
}

TEST_CASE("norm evaluates each kind") {
  CHECK(norm(vec({3, 4}), NormKind::L2) == 5.0);
  CHECK(norm(vec({0, 0}), NormKind::L1) == 0.0);
  CHECK(norm(vec({-1, 1}), NormKind::L2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm(vec({-1, 1}), NormKind::L1) == 2.0);
  CHECK(norm(vec({-3, 2}), NormKind::LInf) == 3.0);
}

TEST_CASE("norm rejects bad input") {
  CHECK_THROWS_AS(norm(Vector(), NormKind::L2), invalid_input_error);
  Vector bad = vec({1, std::nan("")});
  CHECK_THROWS_AS(norm(bad, NormKind::L1), invalid_input_error);
}

TEST_CASE("dist basics") {
  CHECK(dist(vec({4, 5}), vec({5, 4}), NormKind::L2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(dist(vec({4, 5}), vec({4, 5}), NormKind::L2) == 0.0);
  CHECK(dist(vec({1, 0}), vec({0, 0}), NormKind::LInf) == 1.0);
  CHECK_THROWS_AS(dist(vec({1}), vec({1, 2}), NormKind::L1),
                  invalid_input_error);
}

TEST_CASE("norm axioms hold on sampled vectors") {
  SeededRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform(0.0, 3.999));
    Vector u(dim), v(dim);
    for (int a = 0; a < dim; ++a) {
      u[a] = rng.uniform(-10.0, 10.0);
      v[a] = rng.uniform(-10.0, 10.0);
    }
    const double alpha = rng.uniform(-4.0, 4.0);
    for (NormKind kind : kAllNorms) {
      CHECK(norm(u, kind) >= 0.0);
      CHECK(norm(alpha * u, kind) ==
            doctest::Approx(std::abs(alpha) * norm(u, kind)).epsilon(1e-12));
      CHECK(norm(u + v, kind) <= norm(u, kind) + norm(v, kind) + kCmpTol);
      // definiteness at zero
      CHECK(norm(Vector::Zero(dim), kind) == 0.0);
    }
  }
}

TEST_CASE("point sets deduplicate within tolerance, keeping first") {
  std::vector<Vector> pts = {vec({1, 1}), vec({1, 1 + 1e-12}), vec({2, 2})};
  PointSet s = make_point_set(pts, NormKind::L2);
  CHECK(s.size() == 2);
  CHECK(s.points[0] == vec({1, 1}));  // first occurrence survives
  CHECK(s.dimension() == 2);
  CHECK_THROWS_AS(make_point_set({}, NormKind::L2), invalid_input_error);
  CHECK_THROWS_AS(make_point_set({vec({1}), vec({1, 2})}, NormKind::L2),
                  invalid_input_error);
}

TEST_CASE("dist_point_set enumerates the finite set") {
  PointSet b13 = make_point_set({vec1(1), vec1(3)}, NormKind::L2);
  CHECK(dist_point_set(vec1(0), b13, NormKind::L2) == 1.0);

  PointSet just_a = make_point_set({vec({2, 7})}, NormKind::L1);
  CHECK(dist_point_set(vec({2, 7}), just_a, NormKind::L1) == 0.0);

  PointSet two = make_point_set({vec({3, 4}), vec({0, 5})}, NormKind::L2);
  CHECK(dist_point_set(vec({0, 0}), two, NormKind::L2) == 5.0);

  // never exceeds the distance to any individual member
  for (const auto& b : two.points)
    CHECK(dist_point_set(vec({0, 0}), two, NormKind::L2) <=
          dist(vec({0, 0}), b, NormKind::L2));
}

TEST_CASE("excess is the one-sided sup of min-distances") {
  PointSet a02 = make_point_set({vec1(0), vec1(2)}, NormKind::L2);
  PointSet b1 = make_point_set({vec1(1)}, NormKind::L2);
  CHECK(excess(a02, b1, NormKind::L2) == 1.0);
  CHECK(excess(a02, a02, NormKind::L2) == 0.0);
  PointSet a0 = make_point_set({vec1(0)}, NormKind::L2);
  PointSet b010 = make_point_set({vec1(0), vec1(10)}, NormKind::L2);
  CHECK(excess(a0, b010, NormKind::L2) == 0.0);   // {0} is a subset
  CHECK(excess(b010, a0, NormKind::L2) == 10.0);  // but not conversely
}

TEST_CASE("hausdorff takes the larger excess") {
  PointSet a0 = make_point_set({vec1(0)}, NormKind::L2);
  PointSet b010 = make_point_set({vec1(0), vec1(10)}, NormKind::L2);
  CHECK(hausdorff(a0, b010, NormKind::L2) == 10.0);

  PointSet a02 = make_point_set({vec1(0), vec1(2)}, NormKind::L2);
  PointSet b1 = make_point_set({vec1(1)}, NormKind::L2);
  CHECK(hausdorff(a02, b1, NormKind::L2) == 1.0);
  CHECK(hausdorff(a02, b1, NormKind::L1) == 1.0);

  PointSet p11 = make_point_set({vec({1, 1})}, NormKind::L2);
  CHECK(hausdorff(p11, p11, NormKind::L2) == 0.0);
}

TEST_CASE("hausdorff equals the brute-force oracle and is a metric") {
  SeededRng rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform(0.0, 3.999));
    for (NormKind kind : kAllNorms) {
      PointSet A = random_set(rng, dim, 12, kind);
      PointSet B = random_set(rng, dim, 12, kind);
      PointSet C = random_set(rng, dim, 12, kind);
      const double hab = hausdorff(A, B, kind);
      CHECK(hab == hausdorff_oracle(A, B, kind));  // exact, same arithmetic
      CHECK(hab == hausdorff(B, A, kind));         // symmetry is exact
      CHECK(hausdorff(A, A, kind) == 0.0);
      CHECK(hab <=
            hausdorff(A, C, kind) + hausdorff(C, B, kind) + kCmpTol);
    }
  }
}

TEST_CASE("translate preserves pairwise distances") {
  PointSet s =
      make_point_set({vec({0, 0}), vec({1, 2}), vec({-3, 5})}, NormKind::L2);
  PointSet t = translate(s, vec({7, -4}));
  REQUIRE(t.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      CHECK(dist(s.points[i], s.points[j], NormKind::L2) ==
            doctest::Approx(dist(t.points[i], t.points[j], NormKind::L2))
                .epsilon(1e-12));
  CHECK_THROWS_AS(translate(s, vec1(1)), invalid_input_error);
}

TEST_CASE("point-set loader handles comments, blanks, and errors") {
  std::istringstream good(
      "# corners\n"
      "0 0\n"
      "\n"
      "1 0   # inline trailing comment\n"
      "0 1\n");
  PointSet s = load_point_set(good, NormKind::L2);
  CHECK(s.size() == 3);
  CHECK(s.points[1] == Vector(vec({1, 0})));

  std::istringstream ragged("1 2\n3\n");
  CHECK_THROWS_WITH_AS(load_point_set(ragged, NormKind::L2),
                       doctest::Contains("line 2"), invalid_input_error);

  std::istringstream junk("1 banana\n");
  CHECK_THROWS_AS(load_point_set(junk, NormKind::L2), invalid_input_error);

  std::istringstream empty("# nothing here\n");
  CHECK_THROWS_AS(load_point_set(empty, NormKind::L2), invalid_input_error);
}

TEST_CASE("format_point is stable diagnostic text") {
  CHECK(format_point(vec({4, 5})) == "(4, 5)");
}
