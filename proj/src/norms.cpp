#include "gauge/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gauge/rng.hpp"

namespace gauge {

bool in_gauge_class(const StepFunction& f, double tol) {
  const auto& ps = f.pieces();
  for (size_t i = 1; i < ps.size(); ++i)
    if (ps[i].value > ps[i - 1].value + kValueTol) return false;
  double head = std::min(1.0, f.domain_length());
  return integrate(f, 0.0, head) <= 1.0 + tol;
}

double ky_fan(const SNumberCurve& mu, double t) {
  if (std::isnan(t) || t < 0.0)
    throw parameter_error("ky_fan: index must be in [0, inf]");
  if (t == 0.0) return mu.top();
  if (t <= 1.0) return mu.integral_to(t) / t;
  return mu.integral_to(t);
}

double f_norm(const SNumberCurve& mu, const StepFunction& f) {
  if (!in_gauge_class(f))
    throw parameter_error(
        "f_norm: weight must be nonincreasing with integral over [0,1) at most 1");
  return product_integral(mu.fn(), f);
}

double lp_norm(const SNumberCurve& mu, double p) {
  if (std::isnan(p) || p < 1.0)
    throw parameter_error("lp_norm: exponent must be in [1, inf]");
  if (p == kInf) return mu.top();
  double s = power_integral(mu.fn(), p);
  return std::pow(s, 1.0 / p);
}

double family_sup(const SNumberCurve& mu, const std::vector<StepFunction>& fs) {
  if (fs.empty()) throw parameter_error("family_sup: family must be nonempty");
  double best = 0.0;
  for (const StepFunction& f : fs) best = std::max(best, f_norm(mu, f));
  return best;
}

double evaluate_norm(const NormSpec& spec, const SNumberCurve& mu) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KyFanSpec>)
          return ky_fan(mu, s.t);
        else if constexpr (std::is_same_v<T, LpSpec>)
          return lp_norm(mu, s.p);
        else if constexpr (std::is_same_v<T, FNormSpec>)
          return f_norm(mu, s.f);
        else if constexpr (std::is_same_v<T, FamilySupSpec>)
          return family_sup(mu, s.members);
        else
          return ky_fan(mu, 0.0);
      },
      spec.v());
}

std::string NormSpec::describe() const {
  char buf[64];
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KyFanSpec>) {
          if (s.t == kInf) return "kyfan:t=inf";
          std::snprintf(buf, sizeof buf, "kyfan:t=%g", s.t);
          return buf;
        } else if constexpr (std::is_same_v<T, LpSpec>) {
          if (s.p == kInf) return "lp:p=inf";
          std::snprintf(buf, sizeof buf, "lp:p=%g", s.p);
          return buf;
        } else if constexpr (std::is_same_v<T, FNormSpec>) {
          std::snprintf(buf, sizeof buf, "fnorm:%zu-piece weight",
                        s.f.pieces().size());
          return buf;
        } else if constexpr (std::is_same_v<T, FamilySupSpec>) {
          std::snprintf(buf, sizeof buf, "famsup:%zu members", s.members.size());
          return buf;
        } else {
          return "op";
        }
      },
      v_);
}

namespace {

// |Tr(U M E)| for explicit factors.
double witness_value(const ComplexMatrix& u, const ComplexMatrix& m,
                     const ComplexMatrix& e) {
  return std::abs(((u * m) * e).trace());
}

// Projection onto the span of the first k columns of w.
ComplexMatrix projector_from_columns(const ComplexMatrix& w, int k) {
  int n = w.n();
  ComplexMatrix e(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cdouble acc = 0.0;
      for (int c = 0; c < k; ++c) acc += w.at(i, c) * std::conj(w.at(j, c));
      e.at(i, j) = acc;
    }
  return e;
}

// Trace norm of M restricted to a k-dimensional subspace given by
// orthonormal columns: sum of the singular values of M * F, computed from
// the k x k Gram matrix.
double restricted_trace_norm(const ComplexMatrix& m, const ComplexMatrix& w,
                             int k) {
  int n = m.n();
  std::vector<cdouble> b(static_cast<size_t>(n) * k);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < k; ++c) {
      cdouble acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m.at(i, j) * w.at(j, c);
      b[static_cast<size_t>(i) * k + c] = acc;
    }
  ComplexMatrix gram(k);
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < k; ++d) {
      cdouble acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += std::conj(b[static_cast<size_t>(i) * k + c]) *
               b[static_cast<size_t>(i) * k + d];
      gram.at(c, d) = acc;
    }
  double total = 0.0;
  for (double lam : eig_hermitian(gram).eigenvalues)
    total += std::sqrt(std::max(0.0, lam));
  return total;
}

// Polar unitary maximizing |Tr(U A)|, namely V_A U_A^* from A's SVD.
ComplexMatrix polar_maximizer(const ComplexMatrix& a) {
  SvdResult r = svd_full(a);
  return r.v * r.u.adjoint();
}

}  // namespace

double ky_fan_oracle(const ComplexMatrix& m, int k, int trials,
                     std::uint64_t seed, bool include_witness) {
  int n = m.n();
  if (n <= 0 || !m.all_finite())
    throw input_error("ky_fan_oracle: invalid matrix");
  if (k < 1 || k > n)
    throw parameter_error("ky_fan_oracle: rank must satisfy 1 <= k <= n");

  double best = 0.0;
  ComplexMatrix best_e;
  bool have_best_e = false;

  // Coordinate subsets, each with its polar-optimal unitary. Enumeration is
  // only affordable at desk scale.
  unsigned subset_limit = n <= 16 ? (1u << n) : 0u;
  for (unsigned mask = 0; mask < subset_limit; ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    ComplexMatrix e(n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) e.at(i, i) = 1.0;
    double val = witness_value(polar_maximizer(m * e), m, e);
    if (val > best) {
      best = val;
      best_e = e;
      have_best_e = true;
    }
  }

  // Random rank-k subspaces, scored by the restricted trace norm (the value
  // the optimal unitary attains). Keep the strongest for refinement.
  struct Candidate {
    double value;
    ComplexMatrix w;
  };
  std::vector<Candidate> top;
  const size_t keep = 6;
  for (int trial = 0; trial < trials; ++trial) {
    ComplexMatrix w = random_unitary(n, mix_seed(seed, 1000u + trial));
    double val = restricted_trace_norm(m, w, k);
    best = std::max(best, val);
    if (top.size() < keep || val > top.back().value) {
      top.push_back({val, w});
      std::sort(top.begin(), top.end(),
                [](const Candidate& a, const Candidate& b) {
                  return a.value > b.value;
                });
      if (top.size() > keep) top.pop_back();
    }
  }

  // Alternating ascent from the strongest starts: optimal unitary for the
  // current projection, then the top-k spectral projection of the Hermitian
  // part of U M. Both steps are exact maximizations of one factor, so the
  // evaluated trace is nondecreasing along the way.
  auto refine = [&](ComplexMatrix e) {
    double prev = -1.0;
    for (int it = 0; it < 40; ++it) {
      ComplexMatrix u = polar_maximizer(m * e);
      ComplexMatrix b = u * m;
      ComplexMatrix h = cdouble(0.5) * (b + b.adjoint());
      EigResult eig = eig_hermitian(h);
      e = projector_from_columns(eig.vectors, k);
      double val = witness_value(u, m, e);
      best = std::max(best, val);
      if (val <= prev + 1e-13) break;
      prev = val;
    }
  };
  for (const Candidate& c : top) refine(projector_from_columns(c.w, k));
  if (have_best_e) refine(best_e);

  if (include_witness) {
    SvdResult r = svd_full(m);
    ComplexMatrix e = projector_from_columns(r.v, k);
    ComplexMatrix u = r.v * r.u.adjoint();
    best = std::max(best, witness_value(u, m, e));
  }
  return best;
}

}  // namespace gauge
