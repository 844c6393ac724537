#include "fpcert/problem.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace fpcert {
namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw validation_error("problem file: " + msg);
}

double as_double(const json& v, const std::string& field) {
  if (!v.is_number()) fail("field '" + field + "' must be a number");
  return v.get<double>();
}

Vector parse_vector(const json& a, const std::string& field) {
  if (!a.is_array() || a.empty())
    fail("field '" + field + "' must be a nonempty array of numbers");
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = as_double(a[i], field);
  return v;
}

Matrix parse_matrix(const json& a, const std::string& field) {
  if (!a.is_array() || a.empty())
    fail("field '" + field + "' must be a nonempty array of rows");
  const std::size_t cols = a[0].is_array() ? a[0].size() : 0;
  if (cols == 0) fail("field '" + field + "' rows must be nonempty arrays");
  Matrix m(static_cast<Eigen::Index>(a.size()),
           static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_array() || a[i].size() != cols)
      fail("field '" + field + "' must be rectangular (row " +
           std::to_string(i) + ")");
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          as_double(a[i][j], field);
  }
  return m;
}

std::vector<std::pair<Vector, Vector>> parse_entries(const json& a,
                                                     const std::string& field) {
  if (!a.is_array() || a.empty())
    fail("field '" + field + "' must be a nonempty array");
  std::vector<std::pair<Vector, Vector>> out;
  out.reserve(a.size());
  for (const auto& e : a) {
    if (!e.is_object() || !e.contains("input") || !e.contains("output"))
      fail("entries of '" + field + "' must be {input, output} objects");
    out.emplace_back(parse_vector(e["input"], field + ".input"),
                     parse_vector(e["output"], field + ".output"));
  }
  return out;
}

MapSpec parse_single_map(const json& j, NormKind kind);

MapSpec parse_single_map_typed(const std::string& type, const json& j,
                               NormKind kind) {
  if (type == "tabulated")
    return make_tabulated(parse_entries(j.at("entries"), "entries"), kind);
  if (type == "affine")
    return make_affine(parse_matrix(j.at("A"), "A"),
                       parse_vector(j.at("c"), "c"));
  if (type == "piecewise_override") {
    if (!j.contains("default")) fail("piecewise_override needs 'default'");
    return make_piecewise_override(
        parse_single_map(j["default"], kind),
        parse_entries(j.at("overrides"), "overrides"), kind);
  }
  fail("'" + type + "' is not a single-valued map type");
}

MapSpec parse_single_map(const json& j, NormKind kind) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail("map must be an object with a string 'type'");
  return parse_single_map_typed(j["type"].get<std::string>(), j, kind);
}

MultiMapSpec parse_multi_map(const std::string& type, const json& j,
                             NormKind kind) {
  if (type == "set_tabulated") {
    const json& a = j.at("entries");
    if (!a.is_array() || a.empty()) fail("'entries' must be a nonempty array");
    std::vector<std::pair<Vector, PointSet>> entries;
    entries.reserve(a.size());
    for (const auto& e : a) {
      if (!e.is_object() || !e.contains("input") || !e.contains("output"))
        fail("set_tabulated entries must be {input, output} objects");
      const json& out = e["output"];
      if (!out.is_array() || out.empty())
        fail("set_tabulated outputs must be nonempty arrays of points");
      std::vector<Vector> pts;
      pts.reserve(out.size());
      for (const auto& pt : out) pts.push_back(parse_vector(pt, "output"));
      entries.emplace_back(parse_vector(e["input"], "input"),
                           make_point_set(std::move(pts), kind));
    }
    return make_set_tabulated(std::move(entries), kind);
  }
  if (type == "affine_family") {
    const json& a = j.at("rules");
    if (!a.is_array() || a.empty()) fail("'rules' must be a nonempty array");
    std::vector<Affine> rules;
    rules.reserve(a.size());
    for (const auto& rule : a)
      rules.push_back(Affine{parse_matrix(rule.at("A"), "A"),
                             parse_vector(rule.at("c"), "c")});
    return make_affine_family(std::move(rules));
  }
  fail("'" + type + "' is not a multivalued map type");
}

json entries_json(const std::vector<std::pair<Vector, Vector>>& entries) {
  json a = json::array();
  for (const auto& [x, y] : entries)
    a.push_back({{"input", vector_json(x)}, {"output", vector_json(y)}});
  return a;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

PairSpec parse_pair_spec(const json& j, int dimension) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail("'pairs' must be an object with a string 'kind'");
  PairSpec spec;
  const std::string kind = j["kind"].get<std::string>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail("'pairs.seed' must be a nonnegative integer");
    const auto seed = j["seed"].get<std::int64_t>();
    if (seed < 0) fail("'pairs.seed' must be nonnegative");
    spec.seed = static_cast<std::uint64_t>(seed);
  }
  auto read_bounds = [&] {
    const json& b = j.at("bounds");
    if (!b.is_array() || b.empty()) fail("'pairs.bounds' must be an array");
    if (static_cast<int>(b.size()) != dimension)
      fail("'pairs.bounds' must list one [lo,hi] interval per dimension");
    for (const auto& iv : b) {
      if (!iv.is_array() || iv.size() != 2)
        fail("'pairs.bounds' intervals must be [lo, hi]");
      spec.bounds.push_back(
          {as_double(iv[0], "bounds"), as_double(iv[1], "bounds")});
    }
  };
  if (kind == "exhaustive") {
    spec.kind = PairSpec::Kind::Exhaustive;
  } else if (kind == "grid") {
    spec.kind = PairSpec::Kind::Grid;
    read_bounds();
    if (!j.contains("steps") || !j["steps"].is_number_integer())
      fail("grid sampling needs integer 'steps'");
    spec.steps = j["steps"].get<int>();
  } else if (kind == "random") {
    spec.kind = PairSpec::Kind::Random;
    read_bounds();
    if (!j.contains("count") || !j["count"].is_number_integer())
      fail("random sampling needs integer 'count'");
    spec.count = j["count"].get<int>();
  } else {
    fail("unknown pairs kind '" + kind + "'");
  }
  return spec;
}

SolveConfig parse_solve(const json& j, int dimension) {
  if (!j.is_object()) fail("'solve' must be an object");
  SolveConfig cfg;
  cfg.x0 = parse_vector(j.at("x0"), "solve.x0");
  if (cfg.x0.size() != dimension)
    fail("'solve.x0' dimension does not match the problem dimension");
  if (j.contains("tol")) cfg.tol = as_double(j["tol"], "solve.tol");
  if (j.contains("max_iter")) {
    if (!j["max_iter"].is_number_integer())
      fail("'solve.max_iter' must be an integer");
    cfg.max_iter = j["max_iter"].get<int>();
  }
  if (j.contains("decay_check"))
    cfg.decay_check = as_double(j["decay_check"], "solve.decay_check");
  return cfg;
}

}  // namespace

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) fail("top level must be a JSON object");
  static const std::set<std::string> known = {
      "dimension", "norm", "map",   "condition", "b",
      "theta",     "gamma", "s",    "r",         "pairs",
      "solve"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) fail("unknown field '" + key + "'");

  ProblemFile p;
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    fail("'dimension' must be a positive integer");
  p.dimension = j["dimension"].get<int>();
  if (p.dimension < 1) fail("'dimension' must be a positive integer");

  if (!j.contains("norm") || !j["norm"].is_string())
    fail("'norm' must be one of \"l1\", \"l2\", \"linf\"");
  try {
    p.norm = parse_norm(j["norm"].get<std::string>());
  } catch (const invalid_input_error& e) {
    fail(e.what());
  }

  if (!j.contains("map")) fail("'map' is required");
  const json& jm = j["map"];
  if (!jm.is_object() || !jm.contains("type") || !jm["type"].is_string())
    fail("'map' must be an object with a string 'type'");
  const std::string type = jm["type"].get<std::string>();
  if (type == "set_tabulated" || type == "affine_family")
    p.multi_map = parse_multi_map(type, jm, p.norm);
  else
    p.map = parse_single_map_typed(type, jm, p.norm);
  const int map_dim = p.map ? p.map->dimension : p.multi_map->dimension;
  if (map_dim != p.dimension)
    fail("map dimension " + std::to_string(map_dim) +
         " does not match declared dimension " + std::to_string(p.dimension));

  if (j.contains("condition")) {
    if (!j["condition"].is_string()) fail("'condition' must be a string tag");
    try {
      p.condition = parse_condition_tag(j["condition"].get<std::string>());
    } catch (const invalid_condition_error& e) {
      fail(e.what());
    }
  }
  auto opt_double = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key)) return std::nullopt;
    return as_double(j[key], key);
  };
  p.b = opt_double("b");
  p.theta = opt_double("theta");
  p.gamma = opt_double("gamma");
  p.s = opt_double("s");
  p.r = opt_double("r");

  if (j.contains("pairs")) p.pairs = parse_pair_spec(j["pairs"], p.dimension);
  if (j.contains("solve")) p.solve = parse_solve(j["solve"], p.dimension);
  return p;
}

ProblemFile parse_problem_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("problem file: ") + e.what());
  }
  return parse_problem(j);
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open problem file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

json to_json(const MapSpec& m) {
  return std::visit(
      [&](const auto& rule) -> json {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, Tabulated>) {
          return {{"type", "tabulated"}, {"entries", entries_json(rule.entries)}};
        } else if constexpr (std::is_same_v<R, Affine>) {
          return {{"type", "affine"},
                  {"A", matrix_json(rule.A)},
                  {"c", vector_json(rule.c)}};
        } else {
          return {{"type", "piecewise_override"},
                  {"default", to_json(*rule.base)},
                  {"overrides", entries_json(rule.overrides)}};
        }
      },
      m.rule);
}

json to_json(const MultiMapSpec& m) {
  return std::visit(
      [&](const auto& rule) -> json {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, SetTabulated>) {
          json entries = json::array();
          for (const auto& [x, img] : rule.entries) {
            json pts = json::array();
            for (const auto& pt : img.points) pts.push_back(vector_json(pt));
            entries.push_back(
                {{"input", vector_json(x)}, {"output", std::move(pts)}});
          }
          return {{"type", "set_tabulated"}, {"entries", std::move(entries)}};
        } else {
          json rules = json::array();
          for (const auto& a : rule.rules)
            rules.push_back(
                {{"A", matrix_json(a.A)}, {"c", vector_json(a.c)}});
          return {{"type", "affine_family"}, {"rules", std::move(rules)}};
        }
      },
      m.rule);
}

json to_json(const ProblemFile& p) {
  json j;
  j["dimension"] = p.dimension;
  j["norm"] = to_string(p.norm);
  j["map"] = p.map ? to_json(*p.map) : to_json(*p.multi_map);
  if (p.condition) j["condition"] = to_string(*p.condition);
  if (p.b) j["b"] = *p.b;
  if (p.theta) j["theta"] = *p.theta;
  if (p.gamma) j["gamma"] = *p.gamma;
  if (p.s) j["s"] = *p.s;
  if (p.r) j["r"] = *p.r;
  if (p.pairs) {
    json jp;
    switch (p.pairs->kind) {
      case PairSpec::Kind::Exhaustive:
        jp["kind"] = "exhaustive";
        break;
      case PairSpec::Kind::Grid:
        jp["kind"] = "grid";
        jp["steps"] = p.pairs->steps;
        break;
      case PairSpec::Kind::Random:
        jp["kind"] = "random";
        jp["count"] = p.pairs->count;
        break;
    }
    if (!p.pairs->bounds.empty()) {
      json b = json::array();
      for (const auto& [lo, hi] : p.pairs->bounds)
        b.push_back(json::array({lo, hi}));
      jp["bounds"] = std::move(b);
    }
    jp["seed"] = p.pairs->seed;
    j["pairs"] = std::move(jp);
  }
  if (p.solve) {
    json js;
    js["x0"] = vector_json(p.solve->x0);
    js["tol"] = p.solve->tol;
    js["max_iter"] = p.solve->max_iter;
    if (p.solve->decay_check) js["decay_check"] = *p.solve->decay_check;
    j["solve"] = std::move(js);
  }
  return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string problem_digest(const ProblemFile& p) {
  const std::string canon = to_json(p).dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

ConditionKind build_condition(const ProblemFile& p) {
  if (!p.condition)
    throw validation_error("problem file: 'condition' is required for check");
  ConditionKind cond =
      make_condition(*p.condition, p.b, p.theta, p.s, p.gamma, p.r);
  if (cond.multivalued() != p.is_multivalued())
    throw invalid_condition_error(
        "condition " + to_string(cond.tag) + " applies to " +
        (cond.multivalued() ? "multivalued" : "single-valued") +
        " maps, but the problem's map is " +
        (p.is_multivalued() ? "multivalued" : "single-valued"));
  return cond;
}

PairSample build_pair_sample(const ProblemFile& p) {
  if (!p.pairs)
    throw validation_error("problem file: 'pairs' is required for check");
  switch (p.pairs->kind) {
    case PairSpec::Kind::Exhaustive: {
      std::vector<Vector> domain =
          p.map ? tabulated_domain(*p.map) : tabulated_domain(*p.multi_map);
      if (domain.empty())
        throw validation_error(
            "problem file: exhaustive sampling needs a tabulated domain; "
            "this map has none");
      return exhaustive_pairs(domain);
    }
    case PairSpec::Kind::Grid:
      return grid_pairs(p.pairs->bounds, p.pairs->steps);
    case PairSpec::Kind::Random:
      return random_pairs(p.pairs->bounds, p.pairs->count, p.pairs->seed);
  }
  throw validation_error("problem file: unknown pairs kind");
}

SolveConfig build_solve_config(const ProblemFile& p) {
  if (!p.solve)
    throw validation_error("problem file: 'solve' is required for solve");
  return *p.solve;
}

double problem_b(const ProblemFile& p) { return p.b.value_or(0.0); }

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json witness_json(const Witness& w) {
  return {{"type", "witness"},
          {"pair_index", w.pair_index},
          {"x", vector_json(w.x)},
          {"y", vector_json(w.y)},
          {"antecedent_lhs", w.antecedent_lhs},
          {"antecedent_rhs", w.antecedent_rhs},
          {"consequent_lhs", w.consequent_lhs},
          {"consequent_rhs", w.consequent_rhs}};
}

json certificate_summary_json(const CertificateReport& rep) {
  return {{"type", "summary"},
          {"verdict", rep.verdict()},
          {"pairs_checked", rep.pairs_checked},
          {"antecedent_hits", rep.antecedent_hits},
          {"violations", rep.violations.size()}};
}

json trace_record_json(const IterationTrace& tr, std::size_t i) {
  return {{"n", i + 1},
          {"x", vector_json(tr.iterates.at(i))},
          {"step_norm", i == 0 ? tr.initial_step : tr.step_norms.at(i - 1)},
          {"residual", tr.residuals.at(i)}};
}

json trace_summary_json(const IterationTrace& tr) {
  json j = {{"type", "summary"},
            {"converged", tr.converged},
            {"iterations", tr.iterations_used}};
  if (tr.estimated_ratio)
    j["estimated_ratio"] = *tr.estimated_ratio;
  else
    j["estimated_ratio"] = nullptr;
  return j;
}

}  // namespace fpcert
