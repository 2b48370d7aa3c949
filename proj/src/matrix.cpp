#include "gauge/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gauge/rng.hpp"

namespace gauge {
namespace {

void require_valid(const ComplexMatrix& m, const char* who) {
  if (m.n() <= 0) throw input_error(std::string(who) + ": empty matrix");
  if (!m.all_finite())
    throw input_error(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

ComplexMatrix::ComplexMatrix(int n, std::vector<cdouble> entries)
    : n_(n), e_(std::move(entries)) {
  if (n <= 0 || e_.size() != static_cast<size_t>(n) * n)
    throw input_error("matrix: entry count does not match dimension");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cdouble& z : e_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const cdouble& z : e_) m = std::max(m, std::abs(z));
  return m;
}

cdouble ComplexMatrix::trace() const {
  cdouble t = 0.0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  for (const cdouble& z : e_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n() != b.n()) throw input_error("matrix product: dimension mismatch");
  int n = a.n();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      cdouble aik = a.at(i, k);
      if (aik == cdouble(0.0)) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n() != b.n()) throw input_error("matrix sum: dimension mismatch");
  ComplexMatrix r = a;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r.at(i, j) += b.at(i, j);
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n() != b.n()) throw input_error("matrix difference: dimension mismatch");
  ComplexMatrix r = a;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

ComplexMatrix operator*(cdouble s, const ComplexMatrix& a) {
  ComplexMatrix r = a;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r.at(i, j) *= s;
  return r;
}

namespace {

constexpr double kJacobiTol = 1e-14;
constexpr int kMaxSweeps = 60;

// Column inner product <col_p, col_q> = sum conj(A_ip) A_iq.
cdouble column_dot(const ComplexMatrix& a, int p, int q) {
  cdouble s = 0.0;
  for (int i = 0; i < a.n(); ++i) s += std::conj(a.at(i, p)) * a.at(i, q);
  return s;
}

// Right-multiplies A by the plane rotation that orthogonalizes columns
// p and q given their Gram data; accumulates the same rotation into V.
void rotate_columns(ComplexMatrix& a, ComplexMatrix& v, int p, int q,
                    double app, double aqq, cdouble apq) {
  double mag = std::abs(apq);
  cdouble phase = apq / mag;  // e^{i phi}
  double zeta = (aqq - app) / (2.0 * mag);
  double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = c * t;
  cdouble pc = std::conj(phase);  // e^{-i phi}
  for (ComplexMatrix* m : {&a, &v}) {
    for (int i = 0; i < m->n(); ++i) {
      cdouble wp = m->at(i, p), wq = m->at(i, q);
      m->at(i, p) = c * wp - s * pc * wq;
      m->at(i, q) = s * wp + c * pc * wq;
    }
  }
}

}  // namespace

SvdResult svd_full(const ComplexMatrix& m) {
  require_valid(m, "svd");
  int n = m.n();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    // Columns whose norm has collapsed to rounding noise (exact rank
    // deficiency) are treated as converged zeros; their Gram entries are
    // noise and would otherwise defeat the relative threshold forever.
    double scale2 = 0.0;
    for (int j = 0; j < n; ++j)
      scale2 = std::max(scale2, column_dot(a, j, j).real());
    double floor2 = scale2 * 1e-30;
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = column_dot(a, p, p).real();
        double aqq = column_dot(a, q, q).real();
        if (app <= floor2 || aqq <= floor2) continue;
        cdouble apq = column_dot(a, p, q);
        if (std::abs(apq) <= kJacobiTol * std::sqrt(app * aqq)) continue;
        rotate_columns(a, v, p, q, app, aqq, apq);
        rotated = true;
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps)
    throw numeric_error("svd: Jacobi sweeps did not converge");

  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j)
    sigma[j] = std::sqrt(std::max(0.0, column_dot(a, j, j).real()));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sigma[i] > sigma[j]; });

  SvdResult r;
  r.singular_values.resize(n);
  r.u = ComplexMatrix(n);
  r.v = ComplexMatrix(n);
  double smax = sigma[order[0]];
  std::vector<int> null_cols;
  for (int j = 0; j < n; ++j) {
    int src = order[j];
    double s = sigma[src];
    r.singular_values[j] = s;
    for (int i = 0; i < n; ++i) r.v.at(i, j) = v.at(i, src);
    if (s > smax * 1e-13 && s > 0.0) {
      for (int i = 0; i < n; ++i) r.u.at(i, j) = a.at(i, src) / s;
    } else {
      null_cols.push_back(j);
    }
  }
  // Complete U on (numerically) null columns: orthonormalize standard basis
  // vectors against the columns already in place (unfilled columns are zero,
  // so projecting onto them is a no-op).
  for (int j : null_cols) {
    for (int basis = 0; basis < n; ++basis) {
      std::vector<cdouble> w(n, 0.0);
      w[basis] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k < n; ++k) {
          if (k == j) continue;
          cdouble proj = 0.0;
          for (int i = 0; i < n; ++i) proj += std::conj(r.u.at(i, k)) * w[i];
          for (int i = 0; i < n; ++i) w[i] -= proj * r.u.at(i, k);
        }
      double nrm = 0.0;
      for (const cdouble& z : w) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm > 0.5) {
        for (int i = 0; i < n; ++i) r.u.at(i, j) = w[i] / nrm;
        break;
      }
    }
  }
  return r;
}

std::vector<double> svd(const ComplexMatrix& m) {
  return svd_full(m).singular_values;
}

double operator_norm(const ComplexMatrix& m) { return svd(m).front(); }

double trace_norm(const ComplexMatrix& m) {
  std::vector<double> s = svd(m);
  double acc = 0.0;
  for (double x : s) acc += x;
  return acc;
}

ComplexMatrix matrix_abs(const ComplexMatrix& m) {
  SvdResult r = svd_full(m);
  int n = m.n();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cdouble acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += r.v.at(i, k) * r.singular_values[k] * std::conj(r.v.at(j, k));
      out.at(i, j) = acc;
    }
  // Kill rounding-level asymmetry so the result is exactly Hermitian.
  for (int i = 0; i < n; ++i) {
    out.at(i, i) = out.at(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      cdouble avg = 0.5 * (out.at(i, j) + std::conj(out.at(j, i)));
      out.at(i, j) = avg;
      out.at(j, i) = std::conj(avg);
    }
  }
  return out;
}

EigResult eig_hermitian(const ComplexMatrix& h) {
  require_valid(h, "eig_hermitian");
  int n = h.n();
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = a.frobenius_norm();
  int sweep = 0;
  for (; sweep < kMaxSweeps + 20; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cdouble hpq = a.at(p, q);
        double mag = std::abs(hpq);
        if (mag <= 1e-15 * scale || mag == 0.0) continue;
        rotated = true;
        cdouble phase = hpq / mag;
        cdouble pc = std::conj(phase);
        double zeta = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * mag);
        double t =
            (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        // Column update A <- A J, J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        for (int i = 0; i < n; ++i) {
          cdouble xp = a.at(i, p), xq = a.at(i, q);
          a.at(i, p) = c * xp - s * pc * xq;
          a.at(i, q) = s * xp + c * pc * xq;
        }
        // Row update A <- J^* A
        for (int j = 0; j < n; ++j) {
          cdouble xp = a.at(p, j), xq = a.at(q, j);
          a.at(p, j) = c * xp - s * phase * xq;
          a.at(q, j) = s * xp + c * phase * xq;
        }
        for (int i = 0; i < n; ++i) {
          cdouble xp = v.at(i, p), xq = v.at(i, q);
          v.at(i, p) = c * xp - s * pc * xq;
          v.at(i, q) = s * xp + c * pc * xq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps + 20)
    throw numeric_error("eig_hermitian: Jacobi sweeps did not converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a.at(i, i).real() > a.at(j, j).real();
  });
  EigResult r;
  r.eigenvalues.resize(n);
  r.vectors = ComplexMatrix(n);
  for (int j = 0; j < n; ++j) {
    r.eigenvalues[j] = a.at(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) r.vectors.at(i, j) = v.at(i, order[j]);
  }
  return r;
}

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw parameter_error("random_unitary: dimension must be >= 1");
  Rng rng(mix_seed(seed, 0x5eedu));
  ComplexMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = rng.complex_normal();
  // Modified Gram-Schmidt, two passes per column.
  ComplexMatrix q(n);
  for (int j = 0; j < n; ++j) {
    std::vector<cdouble> w(n);
    for (int i = 0; i < n; ++i) w[i] = g.at(i, j);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) {
        cdouble proj = 0.0;
        for (int i = 0; i < n; ++i) proj += std::conj(q.at(i, k)) * w[i];
        for (int i = 0; i < n; ++i) w[i] -= proj * q.at(i, k);
      }
    double nrm = 0.0;
    for (const cdouble& z : w) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    while (nrm < 1e-8) {  // essentially impossible; redraw deterministically
      for (int i = 0; i < n; ++i) w[i] = rng.complex_normal();
      nrm = 0.0;
      for (const cdouble& z : w) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
    }
    for (int i = 0; i < n; ++i) q.at(i, j) = w[i] / nrm;
  }
  return q;
}

}  // namespace gauge
