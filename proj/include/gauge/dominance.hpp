#pragma once

#include <cstdint>
#include <utility>

#include "gauge/duality.hpp"
#include "gauge/norms.hpp"
#include "gauge/rng.hpp"
#include "gauge/snumbers.hpp"

namespace gauge {

// Maximum of sum a_k b_{pi(k)} over pairings pi: both lists sorted
// nonincreasing and paired in order (rearrangement inequality).
double hlp_pair_max(const std::vector<double>& a, const std::vector<double>& b);

struct DominanceReport {
  bool dominates = false;
  std::vector<double> checked_breakpoints;
  // Largest Ky Fan norm excess of the left curve over the right across the
  // checked grid (0 when dominated).
  double max_violation = 0.0;
  long transfer_family_size = 0;
  bool transfer_holds = false;
};

// Exact decision of |||S|||_(t) <= |||T|||_(t) for every t in [0, inf]:
// t * kyfan(t) is piecewise linear in t with breakpoints at the curve piece
// boundaries, so checking the merged breakpoints together with {0, 1, inf}
// is exhaustive.
DominanceReport ky_fan_dominates(const SNumberCurve& mu_s,
                                 const SNumberCurve& mu_t);

// Requires ky_fan_dominates(mu_s, mu_t); draws family_size random members
// of the gauge class and verifies f-norm dominance for each (tolerance
// 1e-12). Throws precondition_error when the Ky Fan comparison fails.
DominanceReport dominance_transfer(const SNumberCurve& mu_s,
                                   const SNumberCurve& mu_t, int family_size,
                                   std::uint64_t seed);

// Random member of the gauge class: 1..8 pieces, breakpoints log-uniform in
// (1e-2, 1e2), values sorted decreasing, rescaled so the integral over
// [0,1) is at most 1.
StepFunction random_gauge_member(Rng& rng);

// Reconstruction of a norm from pairings against the unit ball of its dual:
//   estimate = max over sampled curves f with dual-norm(f) <= 1 of
//              integral of f * mu,
//   truth    = direct evaluation of the norm on mu.
// Supported for norms with a closed dual (Lp, Ky Fan, operator norm), which
// keeps every sample inside the ball and hence estimate <= truth + 1e-9.
// With include_extremizer the analytic maximizer is added and the estimate
// matches the truth to 1e-9.
std::pair<double, double> reconstruct_norm(const SNumberCurve& mu,
                                           const NormSpec& norm, int samples,
                                           std::uint64_t seed,
                                           bool include_extremizer = true);

}  // namespace gauge
