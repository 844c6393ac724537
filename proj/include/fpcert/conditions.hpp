#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpcert/maps.hpp"

namespace fpcert {

// Threshold function f: [0,1) -> (1/2, 1], nonincreasing. Piecewise:
//   1           on [0, (sqrt(5)-1)/2]
//   (1-r)/r^2   on ((sqrt(5)-1)/2, 1/sqrt(2))
//   1/(1+r)     on [1/sqrt(2), 1)
// The pieces join continuously (r^2 = 1-r at the golden-ratio point).
double f_threshold(double r);

// Antecedent coefficient of the single-valued enriched condition:
// psi(r) = lambda * f(r).
double psi_single(double r, double lambda);

// Antecedent coefficient of the multivalued conditions:
// psi(r) = lambda / (1 + r). Strictly decreasing in r.
double psi_multi(double r, double lambda);

enum class ConditionTag {
  Banach,             // d(Tx,Ty) <= r d(x,y), unconditionally
  Suzuki,             // f(r) d(x,Tx) <= d(x,y)  =>  d(Tx,Ty) <= r d(x,y)
  SuzukiStrict,       // (1/2) d(x,Tx) < d(x,y)  =>  d(Tx,Ty) < d(x,y)
  Edelstein,          // x != y                  =>  d(Tx,Ty) < d(x,y)
  SuzukiBerinde,      // psi(r)|x-Tx| <= |x-y|   =>  |b(x-y)+Tx-Ty| <= theta|x-y|
  GammaFamily,        // s|x-Tx| <= |x-y|        =>  |b(x-y)+Tx-Ty| <= theta|x-y|
  CompactBerinde,     // (lambda/2)|x-Tx| < |x-y| => |b(x-y)+Tx-Ty| < |x-y|
  MultiSuzukiBerinde, // psi(r) d(x,Tx) <= |x-y| =>  H(bx+Tx, by+Ty) <= theta|x-y|
  MultiGamma,         // gamma lambda d(x,Tx) <= |x-y| => H(...) <= theta|x-y|
  MultiCompactGamma,  // gamma lambda d(x,Tx) < |x-y|  => H(...) < |x-y|
};

std::string to_string(ConditionTag tag);
ConditionTag parse_condition_tag(const std::string& name);

struct ConditionKind {
  ConditionTag tag = ConditionTag::Banach;
  ContractionParams params;

  bool multivalued() const {
    return tag == ConditionTag::MultiSuzukiBerinde ||
           tag == ConditionTag::MultiGamma ||
           tag == ConditionTag::MultiCompactGamma;
  }
};

// Validating constructors, one per tag. Parameter-range failures throw
// invalid_condition_error. Banach/Suzuki store r as params{b=0, theta=r} so
// every certifier reads the one derived (lambda, r) tuple.
ConditionKind banach_condition(double r);
ConditionKind suzuki_condition(double r);
ConditionKind suzuki_strict_condition();
ConditionKind edelstein_condition();
ConditionKind suzuki_berinde_condition(double b, double theta);
ConditionKind gamma_family_condition(double b, double theta, double s);
ConditionKind compact_berinde_condition(double b);
ConditionKind multi_suzuki_berinde_condition(double b, double theta);
ConditionKind multi_gamma_condition(double b, double theta, double gamma);
ConditionKind multi_compact_gamma_condition(double b, double gamma);

// Dispatch on a parsed tag with whichever parameters the input supplied;
// missing or superfluous-range values surface as invalid_condition_error.
ConditionKind make_condition(ConditionTag tag, std::optional<double> b,
                             std::optional<double> theta,
                             std::optional<double> s,
                             std::optional<double> gamma,
                             std::optional<double> r);

// Tolerance policy for every certifier comparison, exposed so the edge cases
// (notably a strict consequent with vanishing rhs) are testable in isolation.
namespace cmp {

inline bool nonstrict(double lhs, double rhs) { return lhs <= rhs + kCmpTol; }

inline bool strict_antecedent(double lhs, double rhs) {
  return lhs < rhs - kCmpTol;
}

// A strict consequent cannot be met strictly against rhs = 0 in floating
// point; compliance there means the lhs vanishes too.
inline bool strict_consequent(double lhs, double rhs) {
  return rhs > kCmpTol ? lhs < rhs - kCmpTol : lhs <= kCmpTol;
}

}  // namespace cmp

// Ordered pairs to feed a certifier, plus a human-readable provenance string
// that fully determines the list.
struct PairSample {
  std::vector<std::pair<Vector, Vector>> pairs;
  std::string provenance;
};

// Full ordered Cartesian product (diagonal included) of a finite domain.
PairSample exhaustive_pairs(const std::vector<Vector>& points);

// Uniform lattice over an axis-aligned box, steps_per_axis points per axis,
// then the full ordered product of the lattice with itself.
PairSample grid_pairs(const std::vector<std::array<double, 2>>& bounds,
                      int steps_per_axis);

// `count` independent ordered pairs drawn uniformly from the box. Same seed,
// same box, same count: bitwise-identical sample.
PairSample random_pairs(const std::vector<std::array<double, 2>>& bounds,
                        int count, std::uint64_t seed);

struct Witness {
  std::size_t pair_index = 0;
  Vector x, y;
  double antecedent_lhs = 0, antecedent_rhs = 0;
  double consequent_lhs = 0, consequent_rhs = 0;
};

struct CertificateReport {
  std::size_t pairs_checked = 0;
  std::size_t antecedent_hits = 0;
  std::vector<Witness> violations;

  bool certified() const { return violations.empty(); }
  std::string verdict() const {
    return certified() ? "certified-on-sample" : "violated";
  }
};

// Checks the implication of `cond` on every ordered pair, in sample order.
// The verdict is only ever about the sample; no universal claim is implied.
// Mismatched arity (multivalued condition on a single-valued map or vice
// versa) throws invalid_condition_error; a pair outside a tabulated domain
// throws map_domain_error naming the pair.
CertificateReport certify(const MapSpec& T, const ConditionKind& cond,
                          const PairSample& sample, NormKind kind);
CertificateReport certify(const MultiMapSpec& T, const ConditionKind& cond,
                          const PairSample& sample, NormKind kind);

// Checks |T_lambda x - z| <= r |x - z| for each sample point x distinct from
// z. Requires z to be a numerical fixed point of T (residual within
// fixed_point_tol); a certified report means no sample point can be a second
// fixed point.
CertificateReport uniqueness_certify(const MapSpec& T, double lambda,
                                     const Vector& z, double r,
                                     const std::vector<Vector>& sample,
                                     NormKind kind,
                                     double fixed_point_tol = kCmpTol);

}  // namespace fpcert
