#pragma once

#include <limits>
#include <vector>

#include "gauge/errors.hpp"

namespace gauge {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance used by canonicalization and structural equality on
// piece values and lengths.
inline constexpr double kValueTol = 1e-12;

struct Piece {
  double length;  // > 0
  double value;   // >= 0
};

// A nonnegative piecewise-constant function on [0, L), L finite or +inf,
// given by consecutive pieces read left to right from 0; the region after
// the last piece is implicitly zero, so the support is always bounded.
//
// Instances are canonical: adjacent pieces whose values agree within
// kValueTol are merged (integral-preserving weighted value) and trailing
// zero pieces are dropped. All operations treat a StepFunction as an
// immutable value.
class StepFunction {
 public:
  // Zero function on [0, inf).
  StepFunction() : domain_length_(kInf) {}

  StepFunction(double domain_length, std::vector<Piece> pieces);

  static StepFunction constant(double value, double length,
                               double domain_length = kInf);
  // Characteristic function of [0, length).
  static StepFunction indicator(double length, double domain_length = kInf) {
    return constant(1.0, length, domain_length);
  }

  double domain_length() const { return domain_length_; }
  bool infinite_domain() const { return domain_length_ == kInf; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  // Right end of the (explicit) support.
  double support_length() const;

  // f(x); right-continuous, zero past the support.
  // Throws domain_error for x < 0 or x >= domain_length on finite domains.
  double value_at(double x) const;

  // ess sup f = f(0) after rearrangement; max piece value here.
  double max_value() const;

  // m({f > y}) for y >= 0; exact sum of piece lengths above the threshold.
  double level_set_measure(double y) const;

  // Cumulative piece boundaries 0 < b_1 < ... <= support end.
  std::vector<double> breakpoints() const;

  // Structural equality of canonical forms: equal piece counts after
  // stripping a trailing run of below-tolerance values, then entrywise
  // |length| and |value| agreement within tol. Domain lengths are not
  // compared; two functions are equal when they agree as functions that
  // vanish at infinity.
  bool almost_equal(const StepFunction& other, double tol = kValueTol) const;

 private:
  double domain_length_;
  std::vector<Piece> pieces_;
};

// A nonincreasing, right-continuous, compactly supported step function;
// the shape class of s-number curves. Construction validates monotonicity.
class SNumberCurve {
 public:
  SNumberCurve() = default;
  explicit SNumberCurve(StepFunction fn);

  const StepFunction& fn() const { return fn_; }
  const std::vector<Piece>& pieces() const { return fn_.pieces(); }
  double domain_length() const { return fn_.domain_length(); }
  double support_length() const { return fn_.support_length(); }
  double value_at(double s) const { return fn_.value_at(s); }
  // Value at 0 (the essential sup); 0 for the empty curve.
  double top() const;
  // Integral over [0, min(t, support end)); t may be +inf.
  double integral_to(double t) const;
  double total_integral() const { return integral_to(kInf); }

  bool almost_equal(const SNumberCurve& other, double tol = kValueTol) const {
    return fn_.almost_equal(other.fn_, tol);
  }

 private:
  StepFunction fn_;
};

// Nonincreasing rearrangement f*(x) = sup{y : m({f > y}) > x}. For a step
// function this is the decreasing sort of its pieces by value. Preserves
// the domain length, the total integral, and all level-set measures.
SNumberCurve rearrange(const StepFunction& f);

// Exact integral of f over [a, b], b may be +inf. Requires
// 0 <= a <= b <= domain_length.
double integrate(const StepFunction& f, double a, double b);

// Exact integral of f(x)^p over the whole domain, p >= 1.
double power_integral(const StepFunction& f, double p);

// True iff m({f > y}) = m({g > y}) for every y >= 0, decided by comparing
// canonical rearrangements within tol.
bool equimeasurable(const StepFunction& f, const StepFunction& g,
                    double tol = kValueTol);

// c * f, c >= 0.
StepFunction scale(const StepFunction& f, double c);

// f + c on a finite domain, c >= 0; the implicit zero region takes value c.
StepFunction add_constant(const StepFunction& f, double c);

// Sorted union of breakpoints of f and g (with 0 and the larger support end).
std::vector<double> merged_breakpoints(const StepFunction& f,
                                       const StepFunction& g);

// Exact integral of f * g over [0, inf) (zero past either support).
double product_integral(const StepFunction& f, const StepFunction& g);

// f <= g + tol at every cell of the merged breakpoint grid.
bool pointwise_leq(const StepFunction& f, const StepFunction& g,
                   double tol = 0.0);

// sup |f - g| over the merged grid (exact for step functions).
double sup_distance(const StepFunction& f, const StepFunction& g);

}  // namespace gauge
