#include "gauge/snumbers.hpp"

#include <algorithm>
#include <cmath>

namespace gauge {

SimpleOperator::SimpleOperator(std::vector<Term> ts) : terms(std::move(ts)) {
  for (const Term& t : terms) {
    if (!std::isfinite(t.value) || t.value < 0.0)
      throw parameter_error("simple operator: values must be nonnegative and finite");
    if (!std::isfinite(t.weight) || t.weight <= 0.0)
      throw parameter_error("simple operator: weights must be positive and finite");
  }
}

double SimpleOperator::total_weight() const {
  double w = 0.0;
  for (const Term& t : terms) w += t.weight;
  return w;
}

double SimpleOperator::trace() const {
  double s = 0.0;
  for (const Term& t : terms) s += t.value * t.weight;
  return s;
}

SNumberCurve mu_of_matrix(const ComplexMatrix& m) {
  std::vector<double> s = svd(m);
  std::vector<Piece> pieces;
  pieces.reserve(s.size());
  for (double x : s) pieces.push_back({1.0, x});
  return SNumberCurve(StepFunction(kInf, std::move(pieces)));
}

SNumberCurve mu_of_step(const StepFunction& f) {
  SNumberCurve sorted = rearrange(f);
  if (sorted.fn().infinite_domain()) return sorted;
  return SNumberCurve(StepFunction(kInf, sorted.fn().pieces()));
}

SNumberCurve mu_of_simple(const SimpleOperator& op) {
  std::vector<SimpleOperator::Term> ts = op.terms;
  std::stable_sort(ts.begin(), ts.end(),
                   [](const SimpleOperator::Term& a, const SimpleOperator::Term& b) {
                     return a.value > b.value;
                   });
  std::vector<Piece> pieces;
  pieces.reserve(ts.size());
  for (const auto& t : ts) pieces.push_back({t.weight, t.value});
  return SNumberCurve(StepFunction(kInf, std::move(pieces)));
}

bool equi_measurable_ops(const SNumberCurve& x, const SNumberCurve& y,
                         double tol) {
  return x.almost_equal(y, tol);
}

SimpleOperator diagonal_of_matrix(const ComplexMatrix& m) {
  std::vector<SimpleOperator::Term> ts;
  for (double s : svd(m)) ts.push_back({s, 1.0});
  return SimpleOperator(std::move(ts));
}

SimpleOperator simple_of_curve(const SNumberCurve& mu) {
  std::vector<SimpleOperator::Term> ts;
  for (const Piece& p : mu.pieces()) ts.push_back({p.value, p.length});
  return SimpleOperator(std::move(ts));
}

}  // namespace gauge
