#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gauge/matrix.hpp"
#include "gauge/step_function.hpp"

namespace gauge {

// Tagged choice of norm.
struct KyFanSpec {
  double t;  // in [0, inf]; t = 0 is the operator norm
};
struct LpSpec {
  double p;  // in [1, inf]
};
struct FNormSpec {
  StepFunction f;  // member of the gauge class (see in_gauge_class)
};
struct FamilySupSpec {
  std::vector<StepFunction> members;  // nonempty, all in the gauge class
};
struct OperatorNormSpec {};

class NormSpec {
 public:
  using Variant =
      std::variant<KyFanSpec, LpSpec, FNormSpec, FamilySupSpec, OperatorNormSpec>;

  NormSpec() : v_(OperatorNormSpec{}) {}
  NormSpec(Variant v) : v_(std::move(v)) {}

  static NormSpec ky_fan(double t) { return NormSpec(KyFanSpec{t}); }
  static NormSpec lp(double p) { return NormSpec(LpSpec{p}); }
  static NormSpec f_norm(StepFunction f) { return NormSpec(FNormSpec{std::move(f)}); }
  static NormSpec family_sup(std::vector<StepFunction> fs) {
    return NormSpec(FamilySupSpec{std::move(fs)});
  }
  static NormSpec operator_norm() { return NormSpec(OperatorNormSpec{}); }

  // Grammar: "op" | "kyfan:t=<v|inf>" | "lp:p=<v|inf>" |
  //          "fnorm:@<file.json>" | "famsup:@<file.json>".
  // File references are resolved through the loader in gauge/io.hpp.
  static NormSpec parse(const std::string& text);

  const Variant& v() const { return v_; }
  std::string describe() const;

 private:
  Variant v_;
};

// Membership in the gauge class: nonincreasing, nonnegative, right
// continuous, compactly supported step function with integral over [0,1)
// at most 1 (+1e-12 admission slack).
bool in_gauge_class(const StepFunction& f, double tol = 1e-12);

// Ky Fan t-th norm of a curve:
//   t = 0        -> value at 0 (operator norm)
//   0 < t <= 1   -> (1/t) * integral over [0, t)
//   1 < t <= inf -> integral over [0, t)
double ky_fan(const SNumberCurve& mu, double t);

// integral of f * mu, f in the gauge class; exact on the merged grid.
double f_norm(const SNumberCurve& mu, const StepFunction& f);

// (integral of mu^p)^(1/p); sup of mu for p = inf.
double lp_norm(const SNumberCurve& mu, double p);

// max over the family of f_norm(mu, f).
double family_sup(const SNumberCurve& mu, const std::vector<StepFunction>& fs);

double evaluate_norm(const NormSpec& spec, const SNumberCurve& mu);

// Lower-bound estimate of sup |Tr(U M E)| over unitaries U and rank-k
// projections E. Candidates: every coordinate subset of size k and `trials`
// random rank-k subspaces, each given its optimal U (polar factor); the best
// few are sharpened by alternating polar / top-k spectral-projection ascent.
// With include_witness the pair built from the top-k right-singular subspace
// is added, which attains the supremum exactly. Every candidate is evaluated
// as a genuine trace against a unitary and a projection, so the result never
// exceeds the supremum beyond rounding.
double ky_fan_oracle(const ComplexMatrix& m, int k, int trials,
                     std::uint64_t seed, bool include_witness = true);

}  // namespace gauge
