#include "gauge/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "gauge/dominance.hpp"
#include "gauge/duality.hpp"
#include "gauge/norms.hpp"

namespace gauge {

StepFunction random_step(Rng& rng) {
  int k = rng.uniform_int(1, 8);
  std::vector<Piece> pieces;
  for (int i = 0; i < k; ++i)
    pieces.push_back({rng.log_uniform(0.05, 3.0), rng.uniform(0.0, 5.0)});
  double support = 0.0;
  for (const Piece& p : pieces) support += p.length;
  bool finite = rng.uniform01() < 0.5;
  double domain = finite ? support * (1.0 + rng.uniform01()) : kInf;
  return StepFunction(domain, std::move(pieces));
}

ComplexMatrix random_matrix(Rng& rng, int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rng.complex_normal();
  return m;
}

SimpleOperator random_simple(Rng& rng, int max_terms) {
  int k = rng.uniform_int(1, max_terms);
  std::vector<SimpleOperator::Term> ts;
  for (int i = 0; i < k; ++i)
    ts.push_back({rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0)});
  return SimpleOperator(std::move(ts));
}

SNumberCurve random_curve(Rng& rng) {
  StepFunction f = random_gauge_member(rng);
  return SNumberCurve(scale(f, rng.log_uniform(0.5, 5.0)));
}

std::pair<SNumberCurve, SNumberCurve> random_dominated_pair(Rng& rng) {
  SNumberCurve mu_t = random_curve(rng);
  std::vector<Piece> ps = mu_t.pieces();
  int ops = rng.uniform_int(1, 3);
  for (int o = 0; o < ops; ++o) {
    if (rng.uniform01() < 0.5) {
      // pointwise shrink by a nonincreasing-preserving factor
      double c = rng.uniform(0.5, 1.0);
      for (Piece& p : ps) p.value *= c;
    } else if (ps.size() > 1) {
      // flatten the prefix up to a random piece boundary to its average
      size_t cut = static_cast<size_t>(rng.uniform_int(1, static_cast<int>(ps.size())));
      double len = 0.0, mass = 0.0;
      for (size_t i = 0; i < cut; ++i) {
        len += ps[i].length;
        mass += ps[i].length * ps[i].value;
      }
      double avg = mass / len;
      std::vector<Piece> flat{{len, avg}};
      for (size_t i = cut; i < ps.size(); ++i) flat.push_back(ps[i]);
      ps = std::move(flat);
    }
  }
  SNumberCurve mu_s(StepFunction(kInf, std::move(ps)));
  return {mu_s, mu_t};
}

double rearrangement_oracle(const StepFunction& f, double x) {
  double best = 0.0;
  for (const Piece& p : f.pieces()) {
    if (p.value <= best) continue;
    // measure of {f >= p.value}; strictly above any y < p.value
    double m = 0.0;
    for (const Piece& q : f.pieces())
      if (q.value >= p.value) m += q.length;
    if (m > x) best = p.value;
  }
  return best;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Tally {
  long trials = 0;
  double worst = 0.0;
  bool ok = true;

  // deviation <= bound must hold; deviation is recorded normalized by bound
  // so 1.0 is the failure threshold.
  void check(double deviation, double bound) {
    ++trials;
    double norm = bound > 0.0 ? deviation / bound : (deviation > 0.0 ? 2.0 : 0.0);
    worst = std::max(worst, norm);
    if (deviation > bound) ok = false;
  }
  void expect(bool cond) {
    ++trials;
    if (!cond) {
      ok = false;
      worst = std::max(worst, 2.0);
    }
  }
};

CheckResult finish(const char* name, const char* detail, double limit,
                   const Tally& t, Clock::time_point start) {
  CheckResult r;
  r.name = name;
  r.detail = detail;
  r.passed = t.ok;
  r.trials = t.trials;
  r.max_deviation = t.worst;
  r.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  r.time_limit_seconds = limit;
  return r;
}

double rel_dev(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// ---- 1: rearrangement laws ---------------------------------------------

CheckResult check_rearrangement(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 1));
  Tally t;
  for (int trial = 0; trial < 1000; ++trial) {
    StepFunction f = random_step(rng);
    SNumberCurve star = rearrange(f);

    // nonincreasing + right-continuous structure, sup at 0, idempotence
    const auto& ps = star.pieces();
    for (size_t i = 1; i < ps.size(); ++i) t.expect(ps[i - 1].value >= ps[i].value);
    t.check(std::abs(star.top() - f.max_value()), 1e-10);
    SNumberCurve twice = rearrange(star.fn());
    t.expect(twice.pieces().size() == ps.size());
    for (size_t i = 0; i < ps.size(); ++i) {
      t.expect(twice.pieces()[i].length == ps[i].length);
      t.expect(twice.pieces()[i].value == ps[i].value);
    }

    // agreement with the level-set definition at 0 and at piece midpoints
    // (evaluation exactly at a jump is decided by 1 ulp of the length sums,
    // so the grid stays strictly inside the pieces)
    t.check(std::abs(rearrangement_oracle(f, 0.0) - star.top()), 1e-10);
    double end = 0.0;
    for (const Piece& p : ps) {
      double mid = end + p.length / 2;
      t.check(std::abs(rearrangement_oracle(f, mid) - star.value_at(mid)), 1e-10);
      end += p.length;
    }

    // scaling
    double c = rng.uniform(0.0, 3.0);
    t.expect(rearrange(scale(f, c)).fn().almost_equal(scale(star.fn(), c), 1e-10));

    // additive constant on finite domains
    if (!f.infinite_domain()) {
      double shift = rng.uniform(0.0, 2.0);
      t.expect(rearrange(add_constant(f, shift))
                   .fn()
                   .almost_equal(add_constant(star.fn(), shift), 1e-10));
    }

    // monotonicity and sup-norm contraction against a dominating g
    std::vector<Piece> gp = f.pieces();
    for (Piece& p : gp) p.value *= 1.0 + rng.uniform01();
    StepFunction g(f.domain_length(), std::move(gp));
    t.expect(pointwise_leq(rearrange(f).fn(), rearrange(g).fn(), 1e-12));
    t.check(std::max(0.0, sup_distance(star.fn(), rearrange(g).fn()) -
                              sup_distance(f, g)),
            1e-12);

    // equimeasurability with the rearrangement, preserved integral
    t.expect(equimeasurable(f, star.fn()));
    t.check(std::abs(integrate(f, 0.0, f.domain_length()) -
                     integrate(star.fn(), 0.0, star.domain_length())),
            1e-10 * std::max(1.0, integrate(f, 0.0, f.domain_length())));

    // moment characterization at step-function granularity: a permutation
    // shares all moments and is equimeasurable; a perturbed copy must be
    // separated by some moment of order <= #distinct(f) + #distinct(g)
    std::vector<Piece> perm = f.pieces();
    if (perm.size() > 1) {
      size_t i = static_cast<size_t>(rng.uniform_int(0, static_cast<int>(perm.size()) - 1));
      size_t j = static_cast<size_t>(rng.uniform_int(0, static_cast<int>(perm.size()) - 1));
      std::swap(perm[i], perm[j]);
    }
    StepFunction fperm(f.domain_length(), perm);
    t.expect(equimeasurable(f, fperm));
    int cutoff = static_cast<int>(f.pieces().size() + fperm.pieces().size());
    for (int n = 1; n <= cutoff; ++n)
      t.check(rel_dev(power_integral(f, n), power_integral(fperm, n)), 1e-10);

    if (!f.pieces().empty() && f.pieces().front().value > 0.0) {
      std::vector<Piece> bump = f.pieces();
      bump.front().value *= 1.01;
      StepFunction fbump(f.domain_length(), bump);
      if (!equimeasurable(f, fbump)) {
        bool separated = false;
        int cut = static_cast<int>(f.pieces().size() + fbump.pieces().size());
        for (int n = 1; n <= cut && !separated; ++n)
          separated = rel_dev(power_integral(f, n), power_integral(fbump, n)) > 1e-12;
        t.expect(separated);
      }
    }
  }
  return finish("rearrangement-properties",
                "structure, scaling, shifts, monotonicity, contraction, "
                "equimeasurability, moments, integral preservation on 1000 "
                "random step functions",
                5.0, t, start);
}

// ---- 2: trace-power identity -------------------------------------------

CheckResult check_trace_power(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 2));
  Tally t;
  for (int trial = 0; trial < 500; ++trial) {
    int n = rng.uniform_int(2, 5);
    ComplexMatrix m = random_matrix(rng, n);
    SNumberCurve mu = mu_of_matrix(m);
    ComplexMatrix gram = m.adjoint() * m;
    EigResult eig = eig_hermitian(gram);
    for (int p = 1; p <= 4; ++p) {
      double trace_pow;
      if (p == 2) {
        trace_pow = gram.trace().real();
      } else if (p == 4) {
        trace_pow = (gram * gram).trace().real();
      } else {
        trace_pow = 0.0;
        for (double lam : eig.eigenvalues)
          trace_pow += std::pow(std::max(0.0, lam), p / 2.0);
      }
      double integral = power_integral(mu.fn(), p);
      t.check(std::abs(trace_pow - integral),
              1e-8 * std::max(1.0, std::abs(trace_pow)));
    }
  }
  return finish("trace-power-identity",
                "trace of |M|^p vs integral of mu^p, independent Gram-matrix "
                "routes, 500 matrices, p in {1,2,3,4}",
                10.0, t, start);
}

// ---- 3: Ky Fan characterization ----------------------------------------

CheckResult check_ky_fan_characterization(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 3));
  Tally t;
  int trials_per = opts.budget_override > 0 ? opts.budget_override : 2000;
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.uniform_int(2, 4);
    ComplexMatrix m = random_matrix(rng, n);
    SNumberCurve mu = mu_of_matrix(m);
    for (int k = 1; k <= n; ++k) {
      double closed = ky_fan(mu, static_cast<double>(k));
      std::uint64_t s = mix_seed(opts.seed, 3000 + trial * 7 + k);
      double with_witness = ky_fan_oracle(m, k, 0, s, true);
      t.check(std::abs(with_witness - closed), 1e-8 * std::max(1.0, closed));
      double sampled = ky_fan_oracle(m, k, trials_per, s, false);
      t.expect(sampled >= 0.98 * closed);
      t.expect(sampled <= closed + 1e-8 * std::max(1.0, closed));
    }
  }
  return finish("kyfan-sup-characterization",
                "sup |Tr(UME)| over unitaries and rank-k projections vs the "
                "closed Ky Fan value, witness and sampled modes, 200 matrices",
                30.0, t, start);
}

// ---- 4: Ky Fan dual closed forms ---------------------------------------

CheckResult check_ky_fan_duals(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 4));
  Tally t;
  const double ts[] = {0.25, 0.5, 1.0, 2.0, 3.0, kInf};
  int budget = opts.budget_override > 0 ? opts.budget_override : 20000;
  for (int trial = 0; trial < 100; ++trial) {
    SimpleOperator a = random_simple(rng, 6);
    SNumberCurve mu = mu_of_simple(a);
    for (double tv : ts) {
      double closed = ky_fan_dual_closed(mu, tv);
      std::uint64_t s = mix_seed(opts.seed, 4000 + trial * 13);
      DualEstimate sampled = dual_norm(a, NormSpec::ky_fan(tv), budget, s, false);
      t.check(std::abs(sampled.value - closed), opts.sampled_tol * closed);
      t.expect(sampled.value <= closed + 1e-8 * std::max(1.0, closed));
      DualEstimate exact = dual_norm(a, NormSpec::ky_fan(tv), 1, s, true);
      t.check(std::abs(exact.value - closed), 1e-9 * std::max(1.0, closed));
      t.expect(exact.method == DualMethod::witness_exact);
    }
  }
  return finish("kyfan-dual-closed-forms",
                "brute-force pairing maximization vs max{t op, tr} / "
                "max{op, tr/t}, sampled and witness modes, 100 operators x 6 "
                "indices",
                60.0, t, start);
}

// ---- 5: second dual identity -------------------------------------------

CheckResult check_second_dual(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 5));
  Tally t;
  std::vector<NormSpec> norms = {NormSpec::lp(1.0),  NormSpec::lp(1.5),
                                 NormSpec::lp(2.0),  NormSpec::lp(3.0),
                                 NormSpec::lp(kInf), NormSpec::ky_fan(1.0),
                                 NormSpec::ky_fan(2.0)};
  int budget = opts.budget_override > 0 ? opts.budget_override : 4000;
  for (int trial = 0; trial < 40; ++trial) {
    SimpleOperator a = random_simple(rng, 4);
    SNumberCurve mu = mu_of_simple(a);
    for (const NormSpec& norm : norms) {
      double direct = evaluate_norm(norm, mu);
      DualEstimate sd =
          second_dual(a, norm, budget, mix_seed(opts.seed, 5000 + trial));
      t.check(std::abs(sd.value - direct),
              opts.sampled_tol * std::max(direct, 1e-12));
    }
  }
  return finish("second-dual-identity",
                "dual of the dual returns the norm itself for lp and Ky Fan "
                "norms, 40 operators x 7 norms",
                60.0, t, start);
}

// ---- 6: Holder inequality ----------------------------------------------

CheckResult check_holder(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 6));
  Tally t;
  struct Case {
    NormSpec norm;
    double p;  // 0 marks Ky Fan
    double tk;
  };
  std::vector<Case> cases = {{NormSpec::lp(1.0), 1.0, 0},
                             {NormSpec::lp(2.0), 2.0, 0},
                             {NormSpec::lp(3.0), 3.0, 0},
                             {NormSpec::ky_fan(1.0), 0, 1},
                             {NormSpec::ky_fan(2.0), 0, 2}};
  for (const Case& c : cases) {
    for (int trial = 0; trial < 1000; ++trial) {
      int n = rng.uniform_int(2, 4);
      HolderReport rep =
          holder_check(random_matrix(rng, n), random_matrix(rng, n), c.norm);
      t.check(std::max(0.0, rep.lhs - rep.rhs), 1e-9 * std::max(1.0, rep.rhs));
      t.expect(rep.holds);
    }
    // extremal pair attaining equality
    if (c.p > 0) {
      std::vector<double> d = {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                               rng.uniform(0.5, 2.0)};
      std::vector<double> e(d.size());
      for (size_t i = 0; i < d.size(); ++i)
        e[i] = c.p == 1.0 ? 1.0 : std::pow(d[i], c.p - 1.0);
      HolderReport rep = holder_check(ComplexMatrix::diag(d),
                                      ComplexMatrix::diag(e), c.norm);
      t.check(std::abs(rep.lhs - rep.rhs), 1e-8 * std::max(1.0, rep.rhs));
    } else {
      int k = static_cast<int>(c.tk);
      std::vector<double> d(k + 1, 1.0);
      d.back() = 0.0;
      ComplexMatrix proj = ComplexMatrix::diag(d);
      HolderReport rep = holder_check(proj, proj, c.norm);
      t.check(std::abs(rep.lhs - rep.rhs), 1e-8 * std::max(1.0, rep.rhs));
    }
  }
  return finish("holder-inequality",
                "trace-norm(ST) <= |||S||| * dual(T) on 1000 random pairs per "
                "norm plus an equality-attaining pair",
                30.0, t, start);
}

// ---- 7: sorted-pairing maximality --------------------------------------

CheckResult check_pairing_max(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 7));
  Tally t;
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.uniform_int(2, 6);
    std::vector<double> a(n), b(n);
    for (double& x : a) x = rng.uniform(-5.0, 5.0);
    for (double& x : b) x = rng.uniform(-5.0, 5.0);
    double formula = hlp_pair_max(a, b);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    double brute = -kInf;
    std::sort(idx.begin(), idx.end());
    do {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += a[i] * b[idx[i]];
      brute = std::max(brute, s);
      t.expect(s <= formula + 1e-12 * std::max(1.0, std::abs(formula)));
    } while (std::next_permutation(idx.begin(), idx.end()));
    t.check(std::abs(formula - brute), 1e-12 * std::max(1.0, std::abs(brute)));
  }
  return finish("sorted-pairing-maximality",
                "sorted pairing equals the exhaustive maximum over all "
                "pairings, 200 random pairs up to n = 6",
                5.0, t, start);
}

// ---- 8: dominance transfer ----------------------------------------------

CheckResult check_dominance_transfer(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 8));
  Tally t;
  for (int trial = 0; trial < 200; ++trial) {
    auto [mu_s, mu_t] = random_dominated_pair(rng);
    DominanceReport base = ky_fan_dominates(mu_s, mu_t);
    t.expect(base.dominates);
    DominanceReport rep =
        dominance_transfer(mu_s, mu_t, 100, mix_seed(opts.seed, 8000 + trial));
    t.expect(rep.transfer_holds);
  }
  for (int trial = 0; trial < 50; ++trial) {
    SNumberCurve mu_t = random_curve(rng);
    std::vector<Piece> ps = mu_t.pieces();
    if (rng.uniform01() < 0.5) {
      for (Piece& p : ps) p.value *= 1.3;  // violates every index
    } else {
      ps.front().value *= 1.2;  // violates near t = 0
    }
    SNumberCurve mu_s(StepFunction(kInf, std::move(ps)));
    DominanceReport rep = ky_fan_dominates(mu_s, mu_t);
    t.expect(!rep.dominates);
    bool rejected = false;
    try {
      dominance_transfer(mu_s, mu_t, 10, opts.seed);
    } catch (const precondition_error&) {
      rejected = true;
    }
    t.expect(rejected);
  }
  return finish("kyfan-dominance-transfer",
                "Ky Fan dominated pairs stay dominated in 100 random gauge "
                "norms each; non-dominated pairs are rejected at the "
                "breakpoint check",
                20.0, t, start);
}

// ---- 9: norm reconstruction ---------------------------------------------

CheckResult check_reconstruction(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 9));
  Tally t;
  std::vector<NormSpec> norms = {NormSpec::lp(2.0), NormSpec::lp(1.0),
                                 NormSpec::ky_fan(1.0), NormSpec::ky_fan(2.0)};
  int samples = opts.budget_override > 0 ? opts.budget_override : 10000;
  for (int trial = 0; trial < 50; ++trial) {
    SNumberCurve mu = random_curve(rng);
    for (const NormSpec& norm : norms) {
      std::uint64_t s = mix_seed(opts.seed, 9000 + trial);
      auto [exact, truth] = reconstruct_norm(mu, norm, 100, s, true);
      t.check(std::abs(exact - truth), 1e-9 * std::max(1.0, truth));
      auto [est, truth2] = reconstruct_norm(mu, norm, samples, s, false);
      t.expect(est >= 0.99 * truth2);
      t.expect(est <= truth2 + 1e-9 * std::max(1.0, truth2));
    }
  }
  return finish("norm-reconstruction",
                "sup of pairings against the dual unit ball recovers the "
                "norm: exact with the analytic extremizer, >= 99% from "
                "stratified sampling, never above",
                60.0, t, start);
}

// ---- 10: Markov inequality ----------------------------------------------

CheckResult check_markov(const VerifyOptions& opts) {
  auto start = Clock::now();
  Rng rng(mix_seed(opts.seed, 10));
  Tally t;
  for (int trial = 0; trial < 1000; ++trial) {
    SNumberCurve mu = random_curve(rng);
    double kf1 = ky_fan(mu, 1.0);
    double delta = kf1 > 0.0 ? kf1 * rng.log_uniform(1.001, 4.0)
                             : rng.log_uniform(0.01, 1.0);
    if (kf1 < delta) {
      double measure = mu.fn().level_set_measure(delta);
      t.check(std::max(0.0, measure - kf1 / delta), 1e-12);
    } else {
      t.expect(true);
    }
  }
  return finish("markov-inequality",
                "m({mu > delta}) <= kyfan_1(mu)/delta whenever kyfan_1 < "
                "delta, 1000 random curves",
                5.0, t, start);
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::vector<CheckResult> results;
  results.push_back(check_rearrangement(opts));
  results.push_back(check_trace_power(opts));
  results.push_back(check_ky_fan_characterization(opts));
  results.push_back(check_ky_fan_duals(opts));
  results.push_back(check_second_dual(opts));
  results.push_back(check_holder(opts));
  results.push_back(check_pairing_max(opts));
  results.push_back(check_dominance_transfer(opts));
  results.push_back(check_reconstruction(opts));
  results.push_back(check_markov(opts));
  return results;
}

}  // namespace gauge
