#include <doctest.h>

#include "gauge/rng.hpp"
#include "gauge/step_function.hpp"
#include "gauge/verify.hpp"

using namespace gauge;

namespace {

StepFunction make(double domain, std::vector<Piece> ps) {
  return StepFunction(domain, std::move(ps));
}

}  // namespace

TEST_CASE("canonical form merges equal neighbours and drops zero tail") {
  StepFunction f = make(kInf, {{1.0, 2.0}, {2.0, 2.0}, {1.0, 0.0}, {0.5, 0.0}});
  REQUIRE(f.pieces().size() == 1);
  CHECK(f.pieces()[0].length == doctest::Approx(3.0));
  CHECK(f.pieces()[0].value == doctest::Approx(2.0));
  CHECK(f.support_length() == doctest::Approx(3.0));

  StepFunction inner_zero = make(kInf, {{1.0, 2.0}, {1.0, 0.0}, {1.0, 1.0}});
  CHECK(inner_zero.pieces().size() == 3);  // non-trailing zero is kept
}

TEST_CASE("construction rejects invalid pieces") {
  CHECK_THROWS_AS(make(kInf, {{-1.0, 1.0}}), parameter_error);
  CHECK_THROWS_AS(make(kInf, {{0.0, 1.0}}), parameter_error);
  CHECK_THROWS_AS(make(kInf, {{1.0, -0.5}}), parameter_error);
  CHECK_THROWS_AS(make(2.0, {{3.0, 1.0}}), domain_error);
  CHECK_THROWS_AS(make(-1.0, {}), parameter_error);
}

TEST_CASE("value_at is right-continuous and domain-checked") {
  StepFunction f = make(4.0, {{1.0, 3.0}, {1.0, 1.0}});
  CHECK(f.value_at(0.0) == 3.0);
  CHECK(f.value_at(1.0) == 1.0);  // value of the piece starting at 1
  CHECK(f.value_at(2.5) == 0.0);  // implicit zero region
  CHECK_THROWS_AS(f.value_at(-0.1), domain_error);
  CHECK_THROWS_AS(f.value_at(4.0), domain_error);
}

TEST_CASE("rearrange: constant function is a fixed point") {
  StepFunction f = StepFunction::constant(2.5, 3.0, 3.0);
  SNumberCurve star = rearrange(f);
  CHECK(star.fn().almost_equal(f));
}

TEST_CASE("rearrange sorts unit pieces by value") {
  StepFunction f = make(kInf, {{1.0, 1.0}, {1.0, 3.0}, {1.0, 2.0}});
  SNumberCurve star = rearrange(f);
  REQUIRE(star.pieces().size() == 3);
  CHECK(star.pieces()[0].value == 3.0);
  CHECK(star.pieces()[1].value == 2.0);
  CHECK(star.pieces()[2].value == 1.0);
}

TEST_CASE("rearrange merges equal values across unequal lengths") {
  // against sup{y : m({f > y}) > x}: m({f >= 5}) = 1.5 and m({f >= 2}) = 3
  StepFunction f = make(kInf, {{0.5, 2.0}, {1.5, 5.0}, {1.0, 2.0}});
  SNumberCurve star = rearrange(f);
  REQUIRE(star.pieces().size() == 2);
  CHECK(star.pieces()[0].length == doctest::Approx(1.5));
  CHECK(star.pieces()[0].value == doctest::Approx(5.0));
  CHECK(star.pieces()[1].length == doctest::Approx(1.5));
  CHECK(star.pieces()[1].value == doctest::Approx(2.0));
  for (double x : {0.0, 0.7, 1.4999, 1.5, 2.2, 2.9999}) {
    CHECK(rearrangement_oracle(f, x) == doctest::Approx(star.value_at(x)));
  }
  CHECK(rearrangement_oracle(f, 3.0) == 0.0);
}

TEST_CASE("rearrange is exactly idempotent") {
  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    StepFunction f = random_step(rng);
    SNumberCurve once = rearrange(f);
    SNumberCurve twice = rearrange(once.fn());
    REQUIRE(twice.pieces().size() == once.pieces().size());
    for (size_t k = 0; k < once.pieces().size(); ++k) {
      CHECK(twice.pieces()[k].length == once.pieces()[k].length);
      CHECK(twice.pieces()[k].value == once.pieces()[k].value);
    }
  }
}

TEST_CASE("integrate: exact piecewise values") {
  CHECK(integrate(StepFunction::indicator(1.0), 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(integrate(make(kInf, {{2.0, 3.0}}), 1.0, 2.0) == doctest::Approx(3.0));
  StepFunction f = make(6.0, {{1.0, 2.0}, {2.0, 0.5}});
  CHECK(integrate(f, 0.5, 2.0) == doctest::Approx(0.5 * 2.0 + 1.0 * 0.5));
  CHECK(integrate(f, 3.5, 6.0) == 0.0);
}

TEST_CASE("integrate rejects intervals outside the domain") {
  StepFunction f = make(2.0, {{1.0, 1.0}});
  CHECK_THROWS_AS(integrate(f, 1.0, 3.0), domain_error);
  CHECK_THROWS_AS(integrate(f, -0.5, 1.0), domain_error);
  CHECK_THROWS_AS(integrate(f, 1.5, 1.0), domain_error);
  CHECK_THROWS_AS(integrate(f, 0.0, kInf), domain_error);
  CHECK(integrate(make(kInf, {{1.0, 1.0}}), 0.0, kInf) == doctest::Approx(1.0));
}

TEST_CASE("rearrangement preserves every integral") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    StepFunction f = random_step(rng);
    double lhs = integrate(f, 0.0, f.domain_length());
    double rhs = integrate(rearrange(f).fn(), 0.0, f.domain_length());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("power_integral: exact values and equimeasurability") {
  CHECK(power_integral(StepFunction::indicator(1.0), 7.0) == doctest::Approx(1.0));
  CHECK(power_integral(make(kInf, {{2.0, 3.0}}), 2.0) == doctest::Approx(18.0));
  CHECK_THROWS_AS(power_integral(StepFunction::indicator(1.0), 0.99),
                  parameter_error);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    StepFunction f = random_step(rng);
    double p = rng.uniform(1.0, 4.0);
    CHECK(power_integral(f, p) ==
          doctest::Approx(power_integral(rearrange(f).fn(), p)).epsilon(1e-11));
  }
}

TEST_CASE("equimeasurable: rearrangement, scaling, permutations") {
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    StepFunction f = random_step(rng);
    CHECK(equimeasurable(f, rearrange(f).fn()));
    std::vector<Piece> perm = f.pieces();
    if (perm.size() > 1) std::swap(perm.front(), perm.back());
    CHECK(equimeasurable(f, StepFunction(f.domain_length(), perm)));
  }
  StepFunction chi = StepFunction::indicator(1.0);
  CHECK_FALSE(equimeasurable(chi, scale(chi, 2.0)));
  CHECK_FALSE(equimeasurable(chi, StepFunction::indicator(2.0)));
}

TEST_CASE("scaling and additive-constant laws") {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    StepFunction f = random_step(rng);
    double c = rng.uniform(0.0, 3.0);
    CHECK(rearrange(scale(f, c)).fn().almost_equal(scale(rearrange(f).fn(), c),
                                                   1e-10));
    if (!f.infinite_domain()) {
      double shift = rng.uniform(0.0, 2.0);
      CHECK(rearrange(add_constant(f, shift))
                .fn()
                .almost_equal(add_constant(rearrange(f).fn(), shift), 1e-10));
    }
  }
  CHECK_THROWS_AS(add_constant(StepFunction::indicator(1.0), 1.0), domain_error);
  CHECK_THROWS_AS(scale(StepFunction::indicator(1.0), -1.0), parameter_error);
}

TEST_CASE("monotonicity and sup-norm contraction of rearrangement") {
  Rng rng(19);
  for (int i = 0; i < 50; ++i) {
    StepFunction f = random_step(rng);
    std::vector<Piece> gp = f.pieces();
    for (Piece& p : gp) p.value *= 1.0 + rng.uniform01();
    StepFunction g(f.domain_length(), gp);
    SNumberCurve fs = rearrange(f), gs = rearrange(g);
    CHECK(pointwise_leq(fs.fn(), gs.fn(), 1e-12));
    CHECK(sup_distance(fs.fn(), gs.fn()) <= sup_distance(f, g) + 1e-12);
  }
}

TEST_CASE("uniform convergence passes through rearrangement") {
  // f_n = f + bump/n converges uniformly, so f_n* -> f* uniformly with the
  // same rate (the contraction bound is the witness).
  StepFunction f = make(kInf, {{1.0, 2.0}, {0.5, 4.0}, {2.0, 1.0}});
  SNumberCurve star = rearrange(f);
  for (int n = 1; n <= 64; n *= 2) {
    std::vector<Piece> ps = f.pieces();
    for (size_t k = 0; k < ps.size(); ++k)
      ps[k].value += (k % 2 == 0 ? 1.0 : 0.5) / n;
    StepFunction fn(f.domain_length(), ps);
    double input_dist = sup_distance(f, fn);
    CHECK(input_dist <= 1.0 / n + 1e-12);
    CHECK(sup_distance(star.fn(), rearrange(fn).fn()) <= input_dist + 1e-12);
  }
}

TEST_CASE("moment characterization separates non-equimeasurable pairs") {
  StepFunction f = make(kInf, {{1.0, 3.0}, {2.0, 1.0}});
  StepFunction g = make(kInf, {{2.0, 1.0}, {1.0, 3.0}});  // permuted: equal
  int cutoff = static_cast<int>(f.pieces().size() + g.pieces().size());
  for (int n = 1; n <= cutoff; ++n)
    CHECK(power_integral(f, n) == doctest::Approx(power_integral(g, n)));

  StepFunction h = make(kInf, {{1.0, 3.01}, {2.0, 1.0}});
  CHECK_FALSE(equimeasurable(f, h));
  bool separated = false;
  for (int n = 1; n <= cutoff && !separated; ++n)
    separated = std::abs(power_integral(f, n) - power_integral(h, n)) > 1e-12;
  CHECK(separated);
}

TEST_CASE("level_set_measure counts strictly exceeding pieces") {
  StepFunction f = make(kInf, {{0.5, 2.0}, {1.5, 5.0}, {1.0, 2.0}});
  CHECK(f.level_set_measure(0.0) == doctest::Approx(3.0));
  CHECK(f.level_set_measure(2.0) == doctest::Approx(1.5));
  CHECK(f.level_set_measure(5.0) == 0.0);
  CHECK_THROWS_AS(f.level_set_measure(-1.0), parameter_error);
}

TEST_CASE("s-number curve construction rejects increasing pieces") {
  CHECK_THROWS_AS(SNumberCurve(make(kInf, {{1.0, 1.0}, {1.0, 2.0}})),
                  parameter_error);
  SNumberCurve ok(make(kInf, {{1.0, 2.0}, {1.0, 1.0}}));
  CHECK(ok.top() == 2.0);
  CHECK(ok.integral_to(1.5) == doctest::Approx(2.5));
  CHECK(ok.integral_to(kInf) == doctest::Approx(3.0));
}
