#include <doctest.h>

#include <cmath>

#include "gauge/norms.hpp"
#include "gauge/rng.hpp"
#include "gauge/snumbers.hpp"
#include "gauge/verify.hpp"

using namespace gauge;

TEST_CASE("mu_of_matrix lays singular values on unit cells") {
  SNumberCurve mu = mu_of_matrix(ComplexMatrix::diag({1.0, 3.0, 2.0}));
  REQUIRE(mu.pieces().size() == 3);
  CHECK(mu.pieces()[0].length == 1.0);
  CHECK(mu.pieces()[0].value == doctest::Approx(3.0));
  CHECK(mu.pieces()[1].value == doctest::Approx(2.0));
  CHECK(mu.pieces()[2].value == doctest::Approx(1.0));

  CHECK(mu_of_matrix(ComplexMatrix(3)).pieces().empty());

  ComplexMatrix rank1(3);
  rank1.at(0, 1) = 5.0;
  SNumberCurve r1 = mu_of_matrix(rank1);
  REQUIRE(r1.pieces().size() == 1);
  CHECK(r1.pieces()[0].length == doctest::Approx(1.0));
  CHECK(r1.pieces()[0].value == doctest::Approx(5.0));
}

TEST_CASE("mu_of_step is the rearrangement embedded in [0, inf)") {
  StepFunction sorted(kInf, {{1.0, 4.0}, {1.0, 1.0}});
  CHECK(mu_of_step(sorted).fn().almost_equal(sorted));

  StepFunction unsorted(kInf, {{1.0, 1.0}, {1.0, 4.0}});
  CHECK(mu_of_step(unsorted).fn().almost_equal(sorted));

  StepFunction finite(3.0, {{1.0, 1.0}, {1.0, 4.0}});
  SNumberCurve emb = mu_of_step(finite);
  CHECK(emb.domain_length() == kInf);
  CHECK(emb.fn().almost_equal(sorted));

  Rng rng(47);
  for (int i = 0; i < 30; ++i) {
    StepFunction f = random_step(rng);
    CHECK(mu_of_step(f).fn().almost_equal(rearrange(f).fn()));
  }
}

TEST_CASE("mu_of_simple sorts values with their trace weights") {
  SNumberCurve a = mu_of_simple(SimpleOperator({{2.0, 1.0}}));
  REQUIRE(a.pieces().size() == 1);
  CHECK(a.pieces()[0].length == 1.0);
  CHECK(a.pieces()[0].value == 2.0);

  SNumberCurve b = mu_of_simple(SimpleOperator({{1.0, 1.0}, {3.0, 2.0}}));
  REQUIRE(b.pieces().size() == 2);
  CHECK(b.pieces()[0].length == 2.0);
  CHECK(b.pieces()[0].value == 3.0);
  CHECK(b.pieces()[1].length == 1.0);
  CHECK(b.pieces()[1].value == 1.0);

  // agrees with the step-function realization of the same terms
  Rng rng(53);
  for (int i = 0; i < 30; ++i) {
    SimpleOperator op = random_simple(rng, 6);
    std::vector<Piece> ps;
    for (const auto& t : op.terms) ps.push_back({t.weight, t.value});
    StepFunction realization(kInf, std::move(ps));
    CHECK(mu_of_simple(op).fn().almost_equal(mu_of_step(realization).fn(), 1e-10));
  }
}

TEST_CASE("equi_measurable_ops: unitary conjugation and adjoints") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 4);
    ComplexMatrix m = random_matrix(rng, n);
    ComplexMatrix u = random_unitary(n, rng.next_u64());
    ComplexMatrix v = random_unitary(n, rng.next_u64());
    CHECK(equi_measurable_ops(mu_of_matrix(m), mu_of_matrix(u * m * v), 1e-8));
    CHECK(equi_measurable_ops(mu_of_matrix(m), mu_of_matrix(m.adjoint()), 1e-8));
  }
  CHECK_FALSE(equi_measurable_ops(SNumberCurve(StepFunction::indicator(1.0)),
                                  SNumberCurve(StepFunction::indicator(2.0))));
}

TEST_CASE("trace powers equal integrals of curve powers") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform_int(2, 5);
    ComplexMatrix m = random_matrix(rng, n);
    SNumberCurve mu = mu_of_matrix(m);
    ComplexMatrix gram = m.adjoint() * m;
    CHECK(gram.trace().real() ==
          doctest::Approx(power_integral(mu.fn(), 2.0)).epsilon(1e-8));
    CHECK((gram * gram).trace().real() ==
          doctest::Approx(power_integral(mu.fn(), 4.0)).epsilon(1e-8));
  }
}

TEST_CASE("products contract the curve by the operator norm") {
  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 4);
    ComplexMatrix s = random_matrix(rng, n);
    ComplexMatrix t = random_matrix(rng, n);
    SNumberCurve prod = mu_of_matrix(s * t);
    SNumberCurve base = mu_of_matrix(t);
    double snorm = operator_norm(s);
    CHECK(pointwise_leq(prod.fn(), scale(base.fn(), snorm),
                        1e-8 * std::max(1.0, snorm * base.top())));
  }
}

TEST_CASE("positive-semidefinite ordering dominates curve partial sums") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 4);
    ComplexMatrix a = random_matrix(rng, n);
    ComplexMatrix b = random_matrix(rng, n);
    ComplexMatrix s = a.adjoint() * a;
    ComplexMatrix t = s + b.adjoint() * b;
    // desk check 0 <= S <= T via eigenvalues of the difference
    for (double lam : eig_hermitian(t - s).eigenvalues) CHECK(lam >= -1e-10);
    SNumberCurve mus = mu_of_matrix(s), mut = mu_of_matrix(t);
    for (double cut : merged_breakpoints(mus.fn(), mut.fn()))
      if (cut > 0.0)
        CHECK(mus.integral_to(cut) <=
              mut.integral_to(cut) + 1e-8 * std::max(1.0, mut.integral_to(cut)));
  }
}

TEST_CASE("curves and simple operators convert both ways") {
  Rng rng(197);
  for (int i = 0; i < 20; ++i) {
    SNumberCurve mu = mu_of_simple(random_simple(rng, 6));
    CHECK(mu_of_simple(simple_of_curve(mu)).almost_equal(mu, 1e-12));
  }
  ComplexMatrix m = ComplexMatrix::diag({3.0, 1.0, 2.0});
  SimpleOperator d = diagonal_of_matrix(m);
  REQUIRE(d.terms.size() == 3);
  CHECK(d.terms[0].value == doctest::Approx(3.0));
  CHECK(d.terms[0].weight == 1.0);
  CHECK(mu_of_simple(d).almost_equal(mu_of_matrix(m), 1e-10));
}

TEST_CASE("simple operator validation") {
  CHECK_THROWS_AS(SimpleOperator({{-1.0, 1.0}}), parameter_error);
  CHECK_THROWS_AS(SimpleOperator({{1.0, 0.0}}), parameter_error);
  CHECK_THROWS_AS(SimpleOperator({{1.0, -2.0}}), parameter_error);
  SimpleOperator op({{2.0, 1.5}, {1.0, 0.5}});
  CHECK(op.total_weight() == doctest::Approx(2.0));
  CHECK(op.trace() == doctest::Approx(3.5));
}
