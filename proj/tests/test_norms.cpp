#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gauge/dominance.hpp"
#include "gauge/norms.hpp"
#include "gauge/rng.hpp"
#include "gauge/snumbers.hpp"
#include "gauge/verify.hpp"

using namespace gauge;

namespace {

SNumberCurve curve(std::vector<Piece> ps) {
  return SNumberCurve(StepFunction(kInf, std::move(ps)));
}

// Independent route for the f-norm: write f = sum over k of
// (a_k - a_{k+1}) * chi_[0, alpha_k) and pair each plateau with the Ky Fan
// norm at its cut, weighting by min{alpha_k, 1}.
double f_norm_by_decomposition(const SNumberCurve& mu, const StepFunction& f) {
  const auto& ps = f.pieces();
  double acc = 0.0, alpha = 0.0;
  for (size_t k = 0; k < ps.size(); ++k) {
    alpha += ps[k].length;
    double next = k + 1 < ps.size() ? ps[k + 1].value : 0.0;
    acc += std::min(alpha, 1.0) * (ps[k].value - next) * ky_fan(mu, alpha);
  }
  return acc;
}

}  // namespace

TEST_CASE("ky_fan closed values") {
  SNumberCurve unit = curve({{1.0, 1.0}});
  CHECK(ky_fan(unit, 1.0) == doctest::Approx(1.0));

  SNumberCurve m321 = mu_of_matrix(ComplexMatrix::diag({3.0, 2.0, 1.0}));
  CHECK(ky_fan(m321, 2.0) == doctest::Approx(5.0));
  CHECK(ky_fan(m321, kInf) == doctest::Approx(6.0));
  CHECK(ky_fan(m321, 0.0) == doctest::Approx(3.0));

  CHECK(ky_fan(curve({{1.0, 3.0}}), 0.5) == doctest::Approx(3.0));
  CHECK(ky_fan(curve({{0.5, 2.0}}), 0.8) == doctest::Approx(1.25));  // averaged

  CHECK_THROWS_AS(ky_fan(unit, -0.1), parameter_error);
}

TEST_CASE("ky_fan is monotone: down on [0,1], up on [1,inf]") {
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    SNumberCurve mu = random_curve(rng);
    std::vector<double> grid{0.0, 1.0, kInf};
    for (double b : mu.fn().breakpoints()) grid.push_back(b);
    for (int i = 0; i < 32; ++i) grid.push_back(std::pow(10.0, -2.0 + 4.0 * i / 31.0));
    std::sort(grid.begin(), grid.end());
    double prev = ky_fan(mu, 0.0);
    for (double t : grid) {
      if (t > 1.0) break;
      double cur = ky_fan(mu, t);
      CHECK(cur <= prev + 1e-10);
      prev = cur;
    }
    prev = ky_fan(mu, 1.0);
    for (double t : grid) {
      if (t <= 1.0) continue;
      double cur = ky_fan(mu, t);
      CHECK(cur + 1e-10 >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("triangle inequality for Ky Fan norms of matrix sums") {
  Rng rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 4);
    ComplexMatrix s = random_matrix(rng, n);
    ComplexMatrix t = random_matrix(rng, n);
    SNumberCurve ms = mu_of_matrix(s), mt = mu_of_matrix(t),
                 msum = mu_of_matrix(s + t);
    std::vector<double> grid{0.0, 0.5, 1.0, 1.7, 2.0, 3.0, kInf};
    for (double b : merged_breakpoints(ms.fn(), mt.fn())) grid.push_back(b);
    for (double tv : grid)
      CHECK(ky_fan(msum, tv) <= ky_fan(ms, tv) + ky_fan(mt, tv) + 1e-9);
  }
}

TEST_CASE("gauge class membership") {
  CHECK(in_gauge_class(StepFunction::indicator(1.0)));
  CHECK(in_gauge_class(StepFunction(kInf, {{2.0, 0.5}})));
  CHECK(in_gauge_class(StepFunction(kInf, {})));  // zero weight allowed
  CHECK_FALSE(in_gauge_class(StepFunction(kInf, {{1.0, 0.5}, {1.0, 0.9}})));
  CHECK_FALSE(in_gauge_class(StepFunction(kInf, {{1.0, 1.5}})));
  CHECK(in_gauge_class(StepFunction(kInf, {{0.5, 2.0}})));  // integral 1
}

TEST_CASE("f_norm agrees with its Ky Fan decomposition") {
  SNumberCurve two = curve({{2.0, 1.0}});
  StepFunction head(kInf, {{1.0, 0.75}, {1.0, 0.25}});
  CHECK(f_norm(two, head) == doctest::Approx(1.0));

  CHECK(f_norm(two, StepFunction(kInf, {})) == 0.0);

  Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    SNumberCurve mu = random_curve(rng);
    StepFunction f = random_gauge_member(rng);
    double direct = f_norm(mu, f);
    CHECK(direct == doctest::Approx(f_norm_by_decomposition(mu, f))
                        .epsilon(1e-10));
    // chi_[0,1) reproduces the Ky Fan 1-norm
    CHECK(f_norm(mu, StepFunction::indicator(1.0)) ==
          doctest::Approx(ky_fan(mu, 1.0)));
  }
  CHECK_THROWS_AS(f_norm(two, StepFunction(kInf, {{1.0, 2.0}})), parameter_error);
}

TEST_CASE("normalized gauge weights dominate the Ky Fan 1-norm") {
  Rng rng(89);
  for (int trial = 0; trial < 50; ++trial) {
    SNumberCurve mu = random_curve(rng);
    StepFunction f = random_gauge_member(rng);
    double head = integrate(f, 0.0, 1.0);
    if (head <= 0.0) continue;
    StepFunction normalized = scale(f, 1.0 / head);  // integral over [0,1) is 1
    CHECK(f_norm(mu, normalized) >= ky_fan(mu, 1.0) - 1e-10);
  }
}

TEST_CASE("lp_norm closed values and degenerate indices") {
  SNumberCurve m34 = mu_of_matrix(ComplexMatrix::diag({3.0, 4.0}));
  CHECK(lp_norm(m34, 2.0) == doctest::Approx(5.0));
  Rng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    SNumberCurve mu = random_curve(rng);
    CHECK(lp_norm(mu, 1.0) == doctest::Approx(ky_fan(mu, kInf)));
    CHECK(lp_norm(mu, kInf) == doctest::Approx(ky_fan(mu, 0.0)));
  }
  CHECK_THROWS_AS(lp_norm(m34, 0.5), parameter_error);
}

TEST_CASE("family_sup takes the best member") {
  SNumberCurve m321 = mu_of_matrix(ComplexMatrix::diag({3.0, 2.0, 1.0}));
  StepFunction chi1 = StepFunction::indicator(1.0);
  StepFunction stair(kInf, {{1.0, 0.6}, {1.0, 0.3}, {1.0, 0.1}});
  double expected = std::max(f_norm(m321, chi1), f_norm(m321, stair));
  CHECK(family_sup(m321, {chi1, stair}) == doctest::Approx(expected));
  CHECK(family_sup(m321, {chi1}) == doctest::Approx(f_norm(m321, chi1)));
  CHECK_THROWS_AS(family_sup(m321, {}), parameter_error);
}

TEST_CASE("evaluate_norm dispatches every spec kind") {
  SNumberCurve m321 = mu_of_matrix(ComplexMatrix::diag({3.0, 2.0, 1.0}));
  CHECK(evaluate_norm(NormSpec::ky_fan(2.0), m321) == doctest::Approx(5.0));
  CHECK(evaluate_norm(NormSpec::lp(1.0), m321) == doctest::Approx(6.0));
  CHECK(evaluate_norm(NormSpec::operator_norm(), m321) == doctest::Approx(3.0));
  CHECK(evaluate_norm(NormSpec::f_norm(StepFunction::indicator(1.0)), m321) ==
        doctest::Approx(3.0));
  CHECK(evaluate_norm(NormSpec::family_sup({StepFunction::indicator(1.0)}),
                      m321) == doctest::Approx(3.0));
}

TEST_CASE("ky_fan norms are unitarily invariant") {
  Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 4);
    ComplexMatrix m = random_matrix(rng, n);
    ComplexMatrix u = random_unitary(n, rng.next_u64());
    ComplexMatrix v = random_unitary(n, rng.next_u64());
    SNumberCurve a = mu_of_matrix(m), b = mu_of_matrix(u * m * v);
    for (double t : {0.0, 0.5, 1.0, 2.0, kInf})
      CHECK(ky_fan(a, t) == doctest::Approx(ky_fan(b, t)).epsilon(1e-8));
  }
}

TEST_CASE("ky_fan_oracle: witness exactness and sampling floor") {
  ComplexMatrix m321 = ComplexMatrix::diag({3.0, 2.0, 1.0});
  CHECK(ky_fan_oracle(m321, 2, 0, 5, true) == doctest::Approx(5.0));

  Rng rng(107);
  for (int trial = 0; trial < 5; ++trial) {
    int n = rng.uniform_int(2, 3);
    ComplexMatrix m = random_matrix(rng, n);
    double tracenorm = trace_norm(m);
    CHECK(ky_fan_oracle(m, n, 0, 11, true) ==
          doctest::Approx(tracenorm).epsilon(1e-9));
    double closed = ky_fan(mu_of_matrix(m), 2.0);
    double sampled = ky_fan_oracle(m, 2, 2000, 11, false);
    CHECK(sampled >= 0.98 * closed);
    CHECK(sampled <= closed + 1e-8 * std::max(1.0, closed));
  }
  CHECK_THROWS_AS(ky_fan_oracle(m321, 4, 10, 1, true), parameter_error);
  CHECK_THROWS_AS(ky_fan_oracle(m321, 0, 10, 1, true), parameter_error);
}
