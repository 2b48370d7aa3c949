#include "gauge/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gauge {
namespace {

bool finite(double x) { return std::isfinite(x); }

// Left fold that merges adjacent pieces with values within kValueTol,
// keeping the integral exact (length-weighted value), then drops trailing
// zeros. Deterministic, hence idempotent on already-canonical input.
std::vector<Piece> canonicalize(std::vector<Piece> pieces) {
  std::vector<Piece> out;
  for (const Piece& p : pieces) {
    if (!out.empty() && std::abs(out.back().value - p.value) <= kValueTol) {
      Piece& b = out.back();
      double len = b.length + p.length;
      if (b.value != p.value)
        b.value = (b.length * b.value + p.length * p.value) / len;
      b.length = len;
    } else {
      out.push_back(p);
    }
  }
  while (!out.empty() && out.back().value == 0.0) out.pop_back();
  return out;
}

}  // namespace

StepFunction::StepFunction(double domain_length, std::vector<Piece> pieces)
    : domain_length_(domain_length) {
  if (std::isnan(domain_length) || domain_length <= 0.0)
    throw parameter_error("step function: domain length must be positive");
  double total = 0.0;
  for (const Piece& p : pieces) {
    if (!finite(p.length) || p.length <= 0.0)
      throw parameter_error("step function: piece lengths must be positive and finite");
    if (!finite(p.value) || p.value < 0.0)
      throw parameter_error("step function: piece values must be nonnegative and finite");
    total += p.length;
  }
  if (total > domain_length * (1.0 + 1e-12) + 1e-12)
    throw domain_error("step function: pieces exceed the domain length");
  pieces_ = canonicalize(std::move(pieces));
}

StepFunction StepFunction::constant(double value, double length,
                                    double domain_length) {
  return StepFunction(domain_length, {{length, value}});
}

double StepFunction::support_length() const {
  double total = 0.0;
  for (const Piece& p : pieces_) total += p.length;
  return total;
}

double StepFunction::value_at(double x) const {
  if (std::isnan(x) || x < 0.0 || x >= domain_length_)
    throw domain_error("step function: evaluation point outside [0, domain)");
  double end = 0.0;
  for (const Piece& p : pieces_) {
    end += p.length;
    if (x < end) return p.value;
  }
  return 0.0;
}

double StepFunction::max_value() const {
  double m = 0.0;
  for (const Piece& p : pieces_) m = std::max(m, p.value);
  return m;
}

double StepFunction::level_set_measure(double y) const {
  if (std::isnan(y) || y < 0.0)
    throw parameter_error("level_set_measure: threshold must be >= 0");
  double m = 0.0;
  for (const Piece& p : pieces_)
    if (p.value > y) m += p.length;
  return m;
}

std::vector<double> StepFunction::breakpoints() const {
  std::vector<double> bs;
  double end = 0.0;
  for (const Piece& p : pieces_) {
    end += p.length;
    bs.push_back(end);
  }
  return bs;
}

bool StepFunction::almost_equal(const StepFunction& other, double tol) const {
  auto strip = [tol](const std::vector<Piece>& ps) {
    size_t n = ps.size();
    while (n > 0 && ps[n - 1].value <= tol) --n;
    return n;
  };
  size_t na = strip(pieces_), nb = strip(other.pieces_);
  if (na != nb) return false;
  for (size_t i = 0; i < na; ++i) {
    if (std::abs(pieces_[i].length - other.pieces_[i].length) > tol) return false;
    if (std::abs(pieces_[i].value - other.pieces_[i].value) > tol) return false;
  }
  return true;
}

SNumberCurve::SNumberCurve(StepFunction fn) : fn_(std::move(fn)) {
  const auto& ps = fn_.pieces();
  for (size_t i = 1; i < ps.size(); ++i)
    if (ps[i].value > ps[i - 1].value + kValueTol)
      throw parameter_error("s-number curve: pieces must be nonincreasing");
}

double SNumberCurve::top() const {
  return pieces().empty() ? 0.0 : pieces().front().value;
}

double SNumberCurve::integral_to(double t) const {
  if (std::isnan(t) || t < 0.0)
    throw parameter_error("integral_to: upper bound must be >= 0");
  double acc = 0.0, end = 0.0;
  for (const Piece& p : pieces()) {
    double start = end;
    end += p.length;
    if (t <= start) break;
    acc += p.value * (std::min(t, end) - start);
  }
  return acc;
}

SNumberCurve rearrange(const StepFunction& f) {
  std::vector<Piece> ps = f.pieces();
  std::stable_sort(ps.begin(), ps.end(),
                   [](const Piece& a, const Piece& b) { return a.value > b.value; });
  return SNumberCurve(StepFunction(f.domain_length(), std::move(ps)));
}

double integrate(const StepFunction& f, double a, double b) {
  if (std::isnan(a) || std::isnan(b) || a < 0.0 || b < a)
    throw domain_error("integrate: require 0 <= a <= b");
  if (b > f.domain_length())
    throw domain_error("integrate: interval extends past the domain");
  double acc = 0.0, end = 0.0;
  for (const Piece& p : f.pieces()) {
    double start = end;
    end += p.length;
    double lo = std::max(a, start), hi = std::min(b, end);
    if (hi > lo) acc += p.value * (hi - lo);
    if (end >= b) break;
  }
  return acc;
}

double power_integral(const StepFunction& f, double p) {
  if (std::isnan(p) || p < 1.0)
    throw parameter_error("power_integral: exponent must be >= 1");
  double acc = 0.0;
  for (const Piece& piece : f.pieces())
    acc += piece.length * std::pow(piece.value, p);
  return acc;
}

bool equimeasurable(const StepFunction& f, const StepFunction& g, double tol) {
  return rearrange(f).fn().almost_equal(rearrange(g).fn(), tol);
}

StepFunction scale(const StepFunction& f, double c) {
  if (std::isnan(c) || c < 0.0)
    throw parameter_error("scale: factor must be >= 0");
  std::vector<Piece> ps = f.pieces();
  for (Piece& p : ps) p.value *= c;
  return StepFunction(f.domain_length(), std::move(ps));
}

StepFunction add_constant(const StepFunction& f, double c) {
  if (std::isnan(c) || c < 0.0)
    throw parameter_error("add_constant: constant must be >= 0");
  if (f.infinite_domain())
    throw domain_error("add_constant: defined only on finite domains");
  std::vector<Piece> ps = f.pieces();
  for (Piece& p : ps) p.value += c;
  double tail = f.domain_length() - f.support_length();
  if (tail > 0.0) ps.push_back({tail, c});
  return StepFunction(f.domain_length(), std::move(ps));
}

std::vector<double> merged_breakpoints(const StepFunction& f,
                                       const StepFunction& g) {
  std::vector<double> bs{0.0};
  for (double b : f.breakpoints()) bs.push_back(b);
  for (double b : g.breakpoints()) bs.push_back(b);
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  return bs;
}

double product_integral(const StepFunction& f, const StepFunction& g) {
  const auto &pa = f.pieces(), &pb = g.pieces();
  size_t ia = 0, ib = 0;
  double xa = 0.0, xb = 0.0;  // left edge of the current piece
  double x = 0.0, acc = 0.0;
  while (ia < pa.size() && ib < pb.size()) {
    double ea = xa + pa[ia].length, eb = xb + pb[ib].length;
    double e = std::min(ea, eb);
    acc += (e - x) * pa[ia].value * pb[ib].value;
    x = e;
    if (ea <= e) {
      xa = ea;
      ++ia;
    }
    if (eb <= e) {
      xb = eb;
      ++ib;
    }
  }
  return acc;
}

namespace {

// Value of f at x treating everything past the support as 0, without the
// finite-domain bound check (grid comparisons may touch the other
// operand's support, which can extend past this one's domain).
double extended_value(const StepFunction& f, double x) {
  double end = 0.0;
  for (const Piece& p : f.pieces()) {
    end += p.length;
    if (x < end) return p.value;
  }
  return 0.0;
}

// One representative per cell of the merged grid, taken at the midpoint.
// Cells at rounding scale are skipped: summing the same lengths in two
// different orders can misalign the operands' breakpoints by a few ulp,
// and on such slivers only one operand has dropped to its next value.
std::vector<double> comparison_points(const StepFunction& f,
                                      const StepFunction& g) {
  std::vector<double> bs = merged_breakpoints(f, g);
  double sliver = 1e-12 * std::max(1.0, bs.back());
  std::vector<double> xs;
  for (size_t i = 0; i + 1 < bs.size(); ++i)
    if (bs[i + 1] - bs[i] > sliver)
      xs.push_back(bs[i] + (bs[i + 1] - bs[i]) / 2);
  if (xs.empty()) xs.push_back(0.0);
  return xs;
}

}  // namespace

bool pointwise_leq(const StepFunction& f, const StepFunction& g, double tol) {
  for (double x : comparison_points(f, g))
    if (extended_value(f, x) > extended_value(g, x) + tol) return false;
  return true;
}

double sup_distance(const StepFunction& f, const StepFunction& g) {
  double d = 0.0;
  for (double x : comparison_points(f, g))
    d = std::max(d, std::abs(extended_value(f, x) - extended_value(g, x)));
  return d;
}

}  // namespace gauge
