#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fpcert/conditions.hpp"
#include "fpcert/solver.hpp"

namespace fpcert {

using json = nlohmann::json;

// Sampling section of a problem file. Exhaustive needs no fields (it reads
// the map's tabulated domain); grid wants bounds+steps, random bounds+count.
struct PairSpec {
  enum class Kind { Exhaustive, Grid, Random };
  Kind kind = Kind::Exhaustive;
  std::vector<std::array<double, 2>> bounds;
  int steps = 0;
  int count = 0;
  std::uint64_t seed = 0;
};

// One parsed problem file. Condition parameters stay as the raw optionals
// the file carried; build_condition assembles and validates them on demand
// so solve-only files never pay condition validation.
struct ProblemFile {
  int dimension = 0;
  NormKind norm = NormKind::L2;
  std::optional<MapSpec> map;
  std::optional<MultiMapSpec> multi_map;
  std::optional<ConditionTag> condition;
  std::optional<double> b, theta, gamma, s, r;
  std::optional<PairSpec> pairs;
  std::optional<SolveConfig> solve;

  bool is_multivalued() const { return multi_map.has_value(); }
};

ProblemFile parse_problem(const json& j);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

json to_json(const ProblemFile& p);
json to_json(const MapSpec& m);
json to_json(const MultiMapSpec& m);

// FNV-1a over the canonical (sorted-key, compact) serialization. Identical
// problem content gives an identical digest, whatever key order or
// whitespace the file used.
std::uint64_t fnv1a64(std::string_view bytes);
std::string problem_digest(const ProblemFile& p);

// Assembly helpers on top of a parsed file. All throw validation_error (or
// forward condition errors) with the offending field named.
ConditionKind build_condition(const ProblemFile& p);
PairSample build_pair_sample(const ProblemFile& p);
SolveConfig build_solve_config(const ProblemFile& p);
double problem_b(const ProblemFile& p);  // defaults to 0 (plain iteration)

// JSON-lines building blocks shared by the CLI and the built-in demo.
json vector_json(const Vector& v);
json witness_json(const Witness& w);
json certificate_summary_json(const CertificateReport& rep);
json trace_record_json(const IterationTrace& tr, std::size_t i);
json trace_summary_json(const IterationTrace& tr);

}  // namespace fpcert
