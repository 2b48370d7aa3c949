#include "gauge/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gauge {

double hlp_pair_max(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw input_error("hlp_pair_max: lists must have equal length");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end(), std::greater<double>());
  std::sort(sb.begin(), sb.end(), std::greater<double>());
  double s = 0.0;
  for (size_t i = 0; i < sa.size(); ++i) s += sa[i] * sb[i];
  return s;
}

DominanceReport ky_fan_dominates(const SNumberCurve& mu_s,
                                 const SNumberCurve& mu_t) {
  DominanceReport rep;
  rep.checked_breakpoints = merged_breakpoints(mu_s.fn(), mu_t.fn());
  rep.checked_breakpoints.push_back(1.0);
  rep.checked_breakpoints.push_back(kInf);
  std::sort(rep.checked_breakpoints.begin(), rep.checked_breakpoints.end());
  rep.checked_breakpoints.erase(std::unique(rep.checked_breakpoints.begin(),
                                            rep.checked_breakpoints.end()),
                                rep.checked_breakpoints.end());
  double worst = 0.0;
  for (double t : rep.checked_breakpoints)
    worst = std::max(worst, ky_fan(mu_s, t) - ky_fan(mu_t, t));
  rep.max_violation = std::max(0.0, worst);
  rep.dominates = rep.max_violation <= 1e-10;
  return rep;
}

StepFunction random_gauge_member(Rng& rng) {
  int k = rng.uniform_int(1, 8);
  std::vector<double> cuts(k);
  for (double& c : cuts) c = rng.log_uniform(1e-2, 1e2);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> values(k);
  for (double& v : values) v = rng.log_uniform(1e-2, 1e2);
  std::sort(values.begin(), values.end(), std::greater<double>());
  std::vector<Piece> pieces;
  double prev = 0.0;
  for (int i = 0; i < k; ++i) {
    double len = cuts[i] - prev;
    if (len <= 1e-9) continue;  // the first cut is >= 1e-2, so never empty
    pieces.push_back({len, values[i]});
    prev = cuts[i];
  }
  StepFunction f(kInf, std::move(pieces));
  double head = integrate(f, 0.0, 1.0);
  if (head > 1.0) f = scale(f, 1.0 / head);
  return f;
}

DominanceReport dominance_transfer(const SNumberCurve& mu_s,
                                   const SNumberCurve& mu_t, int family_size,
                                   std::uint64_t seed) {
  if (family_size < 1)
    throw parameter_error("dominance_transfer: family size must be >= 1");
  DominanceReport rep = ky_fan_dominates(mu_s, mu_t);
  if (!rep.dominates)
    throw precondition_error(
        "dominance_transfer: Ky Fan comparison fails, transfer not applicable");
  Rng rng(mix_seed(seed, 0xfa311u));
  rep.transfer_family_size = family_size;
  rep.transfer_holds = true;
  for (int i = 0; i < family_size; ++i) {
    StepFunction f = random_gauge_member(rng);
    if (f_norm(mu_s, f) > f_norm(mu_t, f) + 1e-12) {
      rep.transfer_holds = false;
      break;
    }
  }
  return rep;
}

namespace {

SNumberCurve power_profile(const SNumberCurve& mu, double r) {
  std::vector<Piece> ps = mu.pieces();
  for (Piece& p : ps) p.value = std::pow(p.value, r);
  return SNumberCurve(StepFunction(kInf, std::move(ps)));
}

SNumberCurve flat_prefix(double t) {
  return SNumberCurve(StepFunction::indicator(t));
}

// Analytic maximizer of the pairing over the dual unit ball, as a ratio
// integral(f * mu) / dual(f); exact for Lp, Ky Fan and the operator norm.
double extremizer_value(const NormSpec& norm, const SNumberCurve& mu) {
  double support = mu.support_length();
  if (support <= 0.0) return 0.0;
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpSpec>) {
          if (s.p == 1.0) return mu.total_integral();
          if (s.p == kInf) return mu.top();  // spike over the first piece
          SNumberCurve f = power_profile(mu, s.p - 1.0);
          return product_integral(f.fn(), mu.fn()) / dual_norm_closed(norm, f);
        } else if constexpr (std::is_same_v<T, KyFanSpec>) {
          if (s.t == 0.0) return mu.top();
          double cut = s.t == kInf ? support : s.t;
          SNumberCurve f = flat_prefix(cut);
          return product_integral(f.fn(), mu.fn()) / dual_norm_closed(norm, f);
        } else {
          return mu.top();  // spike over the first piece
        }
      },
      norm.v());
}

}  // namespace

std::pair<double, double> reconstruct_norm(const SNumberCurve& mu,
                                           const NormSpec& norm, int samples,
                                           std::uint64_t seed,
                                           bool include_extremizer) {
  if (!has_closed_dual(norm))
    throw parameter_error(
        "reconstruct_norm: norm must have a closed-form dual (lp, kyfan, op)");
  if (samples < 1)
    throw parameter_error("reconstruct_norm: sample count must be >= 1");
  double truth = evaluate_norm(norm, mu);
  if (mu.pieces().empty()) return {0.0, truth};

  double support = mu.support_length();
  double t_hint = 0.0;
  if (const KyFanSpec* kf = std::get_if<KyFanSpec>(&norm.v()))
    if (kf->t > 0.0 && kf->t != kInf) t_hint = kf->t;
  // The prefix range reaches below the first piece (spike regime) and past
  // the support and any finite Ky Fan index (full-mass regime).
  double lo = std::min(1e-3, mu.pieces().front().length / 2);
  double hi = std::max({10.0, 2.0 * support, 2.0 * t_hint});

  Rng rng(mix_seed(seed, 0x5a3f1u));
  double estimate = 0.0;
  auto consider = [&](const SNumberCurve& f) {
    double d = dual_norm_closed(norm, f);
    if (d <= 0.0) return;
    estimate = std::max(estimate, product_integral(f.fn(), mu.fn()) / d);
  };

  // Three stratified one-parameter families: flat prefixes chi_[0,T) with
  // log-uniform T, power profiles mu^r, and random gauge-class members.
  int per = (samples + 2) / 3;
  for (int j = 0; j < per; ++j) {
    double u = (j + rng.uniform01()) / per;
    consider(flat_prefix(lo * std::pow(hi / lo, u)));
  }
  for (int j = 0; j < per; ++j) {
    double r = 4.0 * (j + rng.uniform01()) / per;
    consider(power_profile(mu, r));
  }
  for (int j = 0; j < samples - 2 * per; ++j)
    consider(SNumberCurve(random_gauge_member(rng)));

  if (include_extremizer)
    estimate = std::max(estimate, extremizer_value(norm, mu));
  return {estimate, truth};
}

}  // namespace gauge
