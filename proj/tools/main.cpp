#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpcert/demo.hpp"

namespace {

using namespace fpcert;

// Everything machine-readable goes to stdout as JSON lines; prose and timing
// go to stderr so pipelines stay clean.
void emit(const json& line) { std::cout << line.dump() << "\n"; }

struct Flags {
  std::string norm;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int max_iter = 0;
  int pair_count = 0;
  std::string x0_csv;
  bool all_witnesses = false;

  CLI::Option* norm_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* max_iter_opt = nullptr;
  CLI::Option* pair_count_opt = nullptr;
  CLI::Option* x0_opt = nullptr;
};

json read_problem_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open problem file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("problem file: ") + e.what());
  }
}

ProblemFile load_with_overrides(const std::string& path, const Flags& f) {
  json j = read_problem_json(path);
  if (f.norm_opt->count()) j["norm"] = f.norm;  // before map construction
  ProblemFile p = parse_problem(j);
  if (f.seed_opt->count()) {
    if (!p.pairs)
      throw validation_error("--seed given but the file has no 'pairs'");
    p.pairs->seed = f.seed;
  }
  if (f.pair_count_opt->count()) {
    if (!p.pairs || p.pairs->kind != PairSpec::Kind::Random)
      throw validation_error("--pair-count applies to random sampling only");
    p.pairs->count = f.pair_count;
  }
  return p;
}

Vector parse_x0(const std::string& csv) {
  std::vector<double> coords;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(tok, &used));
      while (used < tok.size() && std::isspace((unsigned char)tok[used]))
        ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw invalid_input_error("--x0: cannot parse coordinate '" + tok + "'");
    }
  }
  if (coords.empty()) throw invalid_input_error("--x0: no coordinates");
  Vector v(static_cast<Eigen::Index>(coords.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = coords[static_cast<std::size_t>(i)];
  return v;
}

int run_check(const std::string& path, const Flags& f) {
  ProblemFile p = load_with_overrides(path, f);
  const ConditionKind cond = build_condition(p);
  const PairSample sample = build_pair_sample(p);
  const CertificateReport rep =
      p.map ? certify(*p.map, cond, sample, p.norm)
            : certify(*p.multi_map, cond, sample, p.norm);

  emit({{"type", "run"},
        {"subcommand", "check"},
        {"digest", problem_digest(p)},
        {"norm", to_string(p.norm)},
        {"condition", to_string(cond.tag)},
        {"pairs", sample.provenance},
        {"pair_count", sample.pairs.size()}});
  const std::size_t shown =
      f.all_witnesses ? rep.violations.size()
                      : std::min<std::size_t>(10, rep.violations.size());
  for (std::size_t i = 0; i < shown; ++i) emit(witness_json(rep.violations[i]));
  json summary = certificate_summary_json(rep);
  summary["witnesses_shown"] = shown;
  emit(summary);

  std::cerr << "check: " << rep.verdict() << " (" << rep.pairs_checked
            << " pairs, " << rep.antecedent_hits << " antecedent hits, "
            << rep.violations.size() << " violations)\n";
  return rep.certified() ? 0 : 1;
}

int run_solve(const std::string& path, const Flags& f) {
  ProblemFile p = load_with_overrides(path, f);
  SolveConfig cfg;
  if (p.solve)
    cfg = *p.solve;
  else if (!f.x0_opt->count())
    throw validation_error(
        "problem file has no 'solve' section and no --x0 was given");
  if (f.x0_opt->count()) {
    Vector x0 = parse_x0(f.x0_csv);
    if (static_cast<int>(x0.size()) != p.dimension)
      throw invalid_input_error("--x0 has " + std::to_string(x0.size()) +
                                " coordinates; the problem dimension is " +
                                std::to_string(p.dimension));
    cfg.x0 = std::move(x0);
  }
  if (f.tol_opt->count()) cfg.tol = f.tol;
  if (f.max_iter_opt->count()) cfg.max_iter = f.max_iter;

  const double b = problem_b(p);
  emit({{"type", "run"},
        {"subcommand", "solve"},
        {"digest", problem_digest(p)},
        {"norm", to_string(p.norm)},
        {"b", b},
        {"tol", cfg.tol},
        {"max_iter", cfg.max_iter}});

  IterationTrace tr;
  try {
    tr = p.map ? picard_solve(*p.map, b, cfg, p.norm)
               : picard_solve_multi(*p.multi_map, b, cfg, p.norm);
  } catch (const divergence_error& e) {
    emit({{"type", "summary"}, {"converged", false}, {"diverged", true}});
    std::cerr << "solve: diverged: " << e.what() << "\n";
    return 1;
  }
  for (std::size_t i = 0; i < tr.iterates.size(); ++i)
    emit(trace_record_json(tr, i));
  json summary = trace_summary_json(tr);
  summary["final"] = vector_json(tr.iterates.back());
  if (cfg.decay_check) {
    summary["decay_check"] = *cfg.decay_check;
    summary["decay_violations"] = tr.decay_violations.size();
  }
  emit(summary);

  std::cerr << "solve: " << (tr.converged ? "converged" : "did not converge")
            << " after " << tr.iterations_used << " iterations\n";
  return tr.converged ? 0 : 1;
}

int run_hausdorff(const std::string& path_a, const std::string& path_b,
                  const Flags& f) {
  const NormKind kind =
      f.norm_opt->count() ? parse_norm(f.norm) : NormKind::L2;
  const PointSet a = load_point_set_file(path_a, kind);
  const PointSet b = load_point_set_file(path_b, kind);
  const double h = hausdorff(a, b, kind);
  std::printf("%.12g\n", h);
  std::cerr << "hausdorff: " << a.size() << " vs " << b.size() << " points, "
            << to_string(kind) << "\n";
  return 0;
}

int run_demo() {
  for (const json& line : demo_report()) emit(line);
  std::cerr << "demo: worked 2-D example report written to stdout\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certify Suzuki/Berinde-type contraction conditions on finite samples "
      "and find fixed points by averaged Picard iteration"};
  app.require_subcommand(1);

  Flags f;
  f.norm_opt = app.add_option("--norm", f.norm, "Norm: l1, l2, or linf")
                   ->check(CLI::IsMember({"l1", "l2", "linf"}));
  f.seed_opt =
      app.add_option("--seed", f.seed, "Override the sampling seed");
  f.tol_opt = app.add_option("--tol", f.tol, "Override solver tolerance");
  f.max_iter_opt =
      app.add_option("--max-iter", f.max_iter, "Override solver max_iter");
  f.pair_count_opt = app.add_option("--pair-count", f.pair_count,
                                    "Override random pair count");
  f.x0_opt = app.add_option("--x0", f.x0_csv,
                            "Starting point, comma-separated coordinates");
  app.add_flag("--all-witnesses", f.all_witnesses,
               "Print every violation witness, not just the first 10");

  std::string check_path, solve_path, hd_a, hd_b;
  CLI::App* check = app.add_subcommand("check", "Certify a condition");
  check->add_option("problem", check_path, "Problem file (JSON)")->required();
  check->fallthrough();
  CLI::App* solve = app.add_subcommand("solve", "Run averaged Picard iteration");
  solve->add_option("problem", solve_path, "Problem file (JSON)")->required();
  solve->fallthrough();
  CLI::App* hd = app.add_subcommand(
      "hausdorff", "Pompeiu-Hausdorff distance between two point-set files");
  hd->add_option("setA", hd_a, "First point-set file")->required();
  hd->add_option("setB", hd_b, "Second point-set file")->required();
  hd->fallthrough();
  CLI::App* demo =
      app.add_subcommand("demo", "Annotated report on the worked example");
  demo->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits clean; usage errors are 2
  }

  const auto t0 = std::chrono::steady_clock::now();
  int status = 2;
  try {
    if (check->parsed())
      status = run_check(check_path, f);
    else if (solve->parsed())
      status = run_solve(solve_path, f);
    else if (hd->parsed())
      status = run_hausdorff(hd_a, hd_b, f);
    else if (demo->parsed())
      status = run_demo();
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::cerr << "wall-time: " << ms << " ms\n";
  return status;
}
