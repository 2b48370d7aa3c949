#pragma once

#include <cstdint>

#include "gauge/norms.hpp"
#include "gauge/snumbers.hpp"

namespace gauge {

enum class DualMethod { closed_form, witness_exact, sampled_lower_bound };

const char* to_string(DualMethod m);

struct DualEstimate {
  double value = 0.0;
  SimpleOperator witness;  // maximizing b on the sorted projections of a
  DualMethod method = DualMethod::sampled_lower_bound;
  long trials_used = 0;
};

// Estimate of sup { sum a_k b_k tau_k : b_k >= 0, |||b||| <= 1 } where
// |||b||| evaluates `norm` on the curve of b over a's weights. The search
// runs over nonincreasingly sorted b (a is sorted first; restricting b to
// the sorted cone loses nothing for a symmetric gauge norm): random
// directions on the cone are rescaled to the unit sphere of the norm and
// the best is refined by cyclic coordinate ascent. For Lp, Ky Fan and the
// operator norm the analytic maximizer is injected as well, which makes the
// result exact (method = witness_exact). A zero operator yields 0 with an
// empty witness.
DualEstimate dual_norm(const SimpleOperator& a, const NormSpec& norm,
                       int budget, std::uint64_t seed,
                       bool inject_witnesses = true);

// Closed form for the dual of the Ky Fan t-th norm, t in (0, inf]:
//   0 < t <= 1 -> max{ t * op, tr }
//   1 < t      -> max{ op, tr / t }
// with op the value at 0 and tr the total integral of the curve. The t = 0
// case (operator norm) is exposed through the L1/Linf pair instead.
double ky_fan_dual_closed(const SNumberCurve& mu, double t);

// Conjugate exponent q with 1/p + 1/q = 1 (q = inf at p = 1).
double lp_dual_index(double p);

// True when dual_norm_closed can evaluate the dual of `norm` directly.
bool has_closed_dual(const NormSpec& norm);

// Dual norm of a curve in closed form (Lp, Ky Fan t > 0, operator norm).
// Throws parameter_error for norms without a closed dual.
double dual_norm_closed(const NormSpec& norm, const SNumberCurve& mu);

// dual_norm applied twice: the outer search runs over the unit ball of the
// dual norm, evaluated in closed form where available and by a budgeted
// inner dual_norm otherwise. For Lp / Ky Fan / operator norms the analytic
// outer maximizer is injected (method = witness_exact).
DualEstimate second_dual(const SimpleOperator& a, const NormSpec& norm,
                         int budget, std::uint64_t seed,
                         bool inject_witnesses = true);

struct HolderReport {
  double lhs = 0.0;  // trace norm of S * T
  double rhs = 0.0;  // |||S||| * dual-norm(T)
  bool holds = false;
};

// Checks trace-norm(S T) <= |||S||| * |||T|||^# with the dual evaluated in
// closed form where available, else by sampled dual_norm on the diagonal
// simple operator of T (a lower bound, so a sampled rhs can flag spurious
// violations for f-norms).
HolderReport holder_check(const ComplexMatrix& s, const ComplexMatrix& t,
                          const NormSpec& norm);

}  // namespace gauge
