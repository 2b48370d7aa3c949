#pragma once

#include "gauge/matrix.hpp"
#include "gauge/step_function.hpp"

namespace gauge {

// Finite positive combination a_1 E_1 + ... + a_n E_n of orthogonal
// projections with trace weights tau(E_k) = weight_k.
struct SimpleOperator {
  struct Term {
    double value;   // a_k >= 0
    double weight;  // tau_k > 0
  };
  std::vector<Term> terms;

  SimpleOperator() = default;
  explicit SimpleOperator(std::vector<Term> ts);

  double total_weight() const;
  // tau(a) = sum a_k tau_k.
  double trace() const;
};

// s-number curve of a matrix under tau = Tr: the k-th singular value
// occupies [k-1, k); the zero tail is dropped. Domain is [0, inf).
SNumberCurve mu_of_matrix(const ComplexMatrix& m);

// s-number curve of a nonnegative step function: its nonincreasing
// rearrangement, embedded in [0, inf).
SNumberCurve mu_of_step(const StepFunction& f);

// s-number curve of a simple operator: values sorted nonincreasing, each
// occupying its trace weight.
SNumberCurve mu_of_simple(const SimpleOperator& op);

// Curves identical in canonical form within tol.
bool equi_measurable_ops(const SNumberCurve& x, const SNumberCurve& y,
                         double tol = kValueTol);

// The diagonal simple operator with values svd(m) and unit weights.
SimpleOperator diagonal_of_matrix(const ComplexMatrix& m);

// The simple operator whose terms are the pieces of a curve
// (value_i, weight = length_i).
SimpleOperator simple_of_curve(const SNumberCurve& mu);

}  // namespace gauge
