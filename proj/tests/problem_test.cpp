#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "fpcert/demo.hpp"
#include "fpcert/problem.hpp"

using namespace fpcert;

namespace {

const char* kAffineProblem = R"({
  "dimension": 1,
  "norm": "l2",
  "map": {"type": "affine", "A": [[0.5]], "c": [1.0]},
  "condition": "banach",
  "r": 0.5,
  "pairs": {"kind": "random", "bounds": [[-5.0, 5.0]], "count": 50, "seed": 7},
  "solve": {"x0": [0.0], "tol": 1e-8, "max_iter": 100}
})";

const char* kTabulatedProblem = R"({
  "dimension": 2,
  "norm": "linf",
  "map": {"type": "tabulated", "entries": [
    {"input": [0, 0], "output": [0, 0]},
    {"input": [1, 1], "output": [0, 0]}
  ]},
  "condition": "suzuki_berinde",
  "b": 1.0,
  "theta": 1.0,
  "pairs": {"kind": "exhaustive"}
})";

const char* kMultiProblem = R"({
  "dimension": 1,
  "norm": "l2",
  "map": {"type": "affine_family", "rules": [{"A": [[0.25]], "c": [0.0]}]},
  "condition": "multi_suzuki_berinde",
  "b": 0.0,
  "theta": 0.25,
  "pairs": {"kind": "random", "bounds": [[-8.0, 8.0]], "count": 40, "seed": 1}
})";

json patched(const char* base, const char* key, json value) {
  json j = json::parse(base);
  j[key] = std::move(value);
  return j;
}

}  // namespace

TEST_CASE("a full problem file parses into its pieces") {
  ProblemFile p = parse_problem_text(kAffineProblem);
  CHECK(p.dimension == 1);
  CHECK(p.norm == NormKind::L2);
  REQUIRE(p.map.has_value());
  CHECK(!p.is_multivalued());
  CHECK(p.condition == ConditionTag::Banach);
  CHECK(p.r == 0.5);
  REQUIRE(p.pairs.has_value());
  CHECK(p.pairs->kind == PairSpec::Kind::Random);
  CHECK(p.pairs->count == 50);
  CHECK(p.pairs->seed == 7);
  REQUIRE(p.solve.has_value());
  CHECK(p.solve->x0 == Vector::Zero(1));
  CHECK(p.solve->max_iter == 100);

  ConditionKind cond = build_condition(p);
  CHECK(cond.tag == ConditionTag::Banach);
  PairSample sample = build_pair_sample(p);
  CHECK(sample.pairs.size() == 50);
  CertificateReport rep = certify(*p.map, cond, sample, p.norm);
  CHECK(rep.certified());  // |0.5(x-y)| = 0.5|x-y| exactly
}

TEST_CASE("multivalued problems route to the multivalued pipeline") {
  ProblemFile p = parse_problem_text(kMultiProblem);
  REQUIRE(p.is_multivalued());
  ConditionKind cond = build_condition(p);
  CHECK(cond.multivalued());
  CertificateReport rep =
      certify(*p.multi_map, cond, build_pair_sample(p), p.norm);
  CHECK(rep.certified());
}

TEST_CASE("exhaustive sampling reads the tabulated domain") {
  ProblemFile p = parse_problem_text(kTabulatedProblem);
  PairSample sample = build_pair_sample(p);
  CHECK(sample.pairs.size() == 4);  // 2 points, ordered product

  // affine maps have no finite domain to exhaust
  json j = json::parse(kAffineProblem);
  j["pairs"] = {{"kind", "exhaustive"}};
  CHECK_THROWS_AS(build_pair_sample(parse_problem(j)), validation_error);
}

TEST_CASE("parse rejects malformed problems with field diagnostics") {
  CHECK_THROWS_WITH_AS(parse_problem_text("{"), doctest::Contains("problem"),
                       validation_error);
  CHECK_THROWS_WITH_AS(
      parse_problem(patched(kAffineProblem, "surprise", 1)),
      doctest::Contains("surprise"), validation_error);
  CHECK_THROWS_WITH_AS(parse_problem(patched(kAffineProblem, "norm", "l7")),
                       doctest::Contains("norm"), validation_error);
  CHECK_THROWS_WITH_AS(parse_problem(patched(kAffineProblem, "dimension", 2)),
                       doctest::Contains("dimension"), validation_error);

  json no_map = json::parse(kAffineProblem);
  no_map.erase("map");
  CHECK_THROWS_WITH_AS(parse_problem(no_map), doctest::Contains("map"),
                       validation_error);

  json bad_bounds = json::parse(kAffineProblem);
  bad_bounds["pairs"]["bounds"] = json::array({json::array({0.0, 1.0}),
                                               json::array({0.0, 1.0})});
  CHECK_THROWS_WITH_AS(parse_problem(bad_bounds),
                       doctest::Contains("bounds"), validation_error);

  json bad_seed = json::parse(kAffineProblem);
  bad_seed["pairs"]["seed"] = -3;
  CHECK_THROWS_AS(parse_problem(bad_seed), validation_error);

  json bad_x0 = json::parse(kAffineProblem);
  bad_x0["solve"]["x0"] = json::array({1.0, 2.0});
  CHECK_THROWS_WITH_AS(parse_problem(bad_x0), doctest::Contains("x0"),
                       validation_error);

  json ragged = json::parse(kAffineProblem);
  ragged["map"]["A"] = json::array({json::array({1.0, 2.0}),
                                    json::array({3.0})});
  CHECK_THROWS_WITH_AS(parse_problem(ragged), doctest::Contains("rectangular"),
                       validation_error);
}

TEST_CASE("condition assembly reports missing or mismatched parameters") {
  json missing_r = json::parse(kAffineProblem);
  missing_r.erase("r");
  CHECK_THROWS_AS(build_condition(parse_problem(missing_r)),
                  invalid_condition_error);

  // single-valued condition on a multivalued map
  json wrong_arity = json::parse(kMultiProblem);
  wrong_arity["condition"] = "banach";
  wrong_arity["r"] = 0.25;
  CHECK_THROWS_AS(build_condition(parse_problem(wrong_arity)),
                  invalid_condition_error);

  json no_condition = json::parse(kAffineProblem);
  no_condition.erase("condition");
  CHECK_THROWS_AS(build_condition(parse_problem(no_condition)),
                  validation_error);
}

TEST_CASE("serialization round-trips digest-equal") {
  for (const char* text : {kAffineProblem, kTabulatedProblem, kMultiProblem}) {
    ProblemFile p = parse_problem_text(text);
    const std::string digest = problem_digest(p);
    CHECK(digest.size() == 16);
    ProblemFile q = parse_problem(to_json(p));
    CHECK(problem_digest(q) == digest);
  }
  // and the digest notices a real change
  ProblemFile p = parse_problem_text(kAffineProblem);
  ProblemFile q = parse_problem(patched(kAffineProblem, "r", 0.75));
  CHECK(problem_digest(p) != problem_digest(q));
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("problem files load from disk") {
  const std::string path = "problem_roundtrip_tmp.json";
  {
    std::ofstream out(path);
    out << kAffineProblem;
  }
  ProblemFile p = load_problem_file(path);
  CHECK(p.dimension == 1);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_problem_file("no/such/file.json"), validation_error);
}

TEST_CASE("trace records expose the transient as the first step") {
  ProblemFile p = parse_problem_text(kAffineProblem);
  IterationTrace tr =
      picard_solve(*p.map, problem_b(p), build_solve_config(p), p.norm);
  json first = trace_record_json(tr, 0);
  CHECK(first["n"] == 1);
  CHECK(first["step_norm"] == tr.initial_step);
  json second = trace_record_json(tr, 1);
  CHECK(second["n"] == 2);
  CHECK(second["step_norm"] == tr.step_norms[0]);

  json summary = trace_summary_json(tr);
  CHECK(summary["converged"] == true);
  CHECK(summary["iterations"] == tr.iterations_used);

  json w = witness_json(Witness{3, Vector::Zero(1), Vector::Ones(1), 1, 2,
                                3, 4});
  CHECK(w["pair_index"] == 3);
  CHECK(w["consequent_lhs"] == 3.0);
  CHECK(vector_json(Vector::Ones(2)) == json::array({1.0, 1.0}));
}

TEST_CASE("problem_b defaults to plain iteration") {
  ProblemFile p = parse_problem_text(kAffineProblem);
  CHECK(problem_b(p) == 0.0);
  json with_b = patched(kAffineProblem, "b", 3.0);
  CHECK(problem_b(parse_problem(with_b)) == 3.0);
}

TEST_CASE("demo problem reproduces the worked computations") {
  MapSpec T = demo_map();
  CHECK(eval(T, Vector(Vector::Zero(2)), NormKind::L2) == Vector::Zero(2));
  ConditionKind cond = demo_condition();
  CHECK(cond.params.b == 1.0);
  CHECK(cond.params.r == 0.5);

  ProblemFile restricted = demo_problem(true);
  CHECK(restricted.pairs->kind == PairSpec::Kind::Exhaustive);
  ProblemFile grid = demo_problem(false);
  CHECK(grid.pairs->kind == PairSpec::Kind::Grid);
  CHECK(problem_digest(grid) ==
        problem_digest(parse_problem(to_json(grid))));

  const std::vector<json> report = demo_report();
  bool saw_psi_lhs = false, saw_sqrt2 = false, saw_fixed = false,
       saw_witness = false, saw_restricted = false, saw_grid = false;
  for (const json& line : report) {
    const std::string type = line.value("type", "");
    if (type == "value" && line["name"] == "psi_antecedent_lhs") {
      CHECK(line["value"] == 2.5);
      saw_psi_lhs = true;
    }
    if (type == "value" && line["name"] == "special_pair_distance") {
      CHECK(std::abs(line["value"].get<double>() - std::sqrt(2.0)) < 1e-12);
      saw_sqrt2 = true;
    }
    if (type == "fixed_point_check") {
      CHECK(line["x"] == json::array({0.0, 0.0}));
      CHECK(line["residual"] == 0.0);
      saw_fixed = true;
    }
    if (type == "witness" && line["x"] == json::array({4.0, 5.0}) &&
        line["y"] == json::array({-10.0, 5.0})) {
      CHECK(line["consequent_lhs"] == 18.0);
      CHECK(line["consequent_rhs"] == 14.0);
      saw_witness = true;
    }
    if (type == "restricted_certificate") {
      CHECK(line["verdict"] == "certified-on-sample");
      CHECK(line["pairs_checked"] == 7);
      saw_restricted = true;
    }
    if (type == "grid_search") {
      CHECK(line["violations"].get<std::size_t>() > 0);
      saw_grid = true;
    }
  }
  CHECK(saw_psi_lhs);
  CHECK(saw_sqrt2);
  CHECK(saw_fixed);
  CHECK(saw_witness);
  CHECK(saw_restricted);
  CHECK(saw_grid);
}
