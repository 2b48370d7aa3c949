#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gauge/matrix.hpp"
#include "gauge/rng.hpp"
#include "gauge/snumbers.hpp"
#include "gauge/step_function.hpp"

namespace gauge {

struct CheckResult {
  std::string name;
  std::string detail;
  bool passed = false;
  long trials = 0;
  double max_deviation = 0.0;  // worst normalized deviation observed
  double elapsed_seconds = 0.0;
  double time_limit_seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  // Agreement tolerance for sampled-vs-closed-form dual checks.
  double sampled_tol = 0.01;
  // 0 keeps the mandated sample counts; a positive value scales the
  // sampling budgets of the stochastic checks.
  int budget_override = 0;
};

// Runs the full property suite (rearrangement laws, trace-power identity,
// Ky Fan characterization and dual closed forms, second duals, Holder,
// sorted-pairing maximality, dominance transfer, norm reconstruction,
// Markov inequality) and reports one result per check.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

// ---- generators shared by the suite and the tests ----------------------

// General (unsorted) random step function; mixes finite and infinite domains.
StepFunction random_step(Rng& rng);

// Matrix with iid complex Gaussian entries.
ComplexMatrix random_matrix(Rng& rng, int n);

// 1..max_terms random terms, log-uniform values and weights.
SimpleOperator random_simple(Rng& rng, int max_terms);

// Random nonincreasing compactly supported curve.
SNumberCurve random_curve(Rng& rng);

// (mu_s, mu_t) with mu_s Ky Fan dominated by mu_t: mu_s is obtained from
// mu_t by pointwise shrinking and prefix flattening, both of which only
// lower partial integrals.
std::pair<SNumberCurve, SNumberCurve> random_dominated_pair(Rng& rng);

// Direct evaluation of sup{y : m({f > y}) > x} from level-set measures;
// the independent reference for rearrange().
double rearrangement_oracle(const StepFunction& f, double x);

}  // namespace gauge
