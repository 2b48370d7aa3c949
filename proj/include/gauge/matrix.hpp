#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gauge/errors.hpp"

namespace gauge {

using cdouble = std::complex<double>;

// Dense n x n complex matrix, row-major. Immutable by convention: all
// kernels below take and return values.
class ComplexMatrix {
 public:
  ComplexMatrix() : n_(0) {}
  explicit ComplexMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}
  ComplexMatrix(int n, std::vector<cdouble> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix diag(const std::vector<double>& d);

  int n() const { return n_; }
  cdouble& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const cdouble& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * n_ + j];
  }
  const std::vector<cdouble>& entries() const { return e_; }

  ComplexMatrix adjoint() const;
  double frobenius_norm() const;
  double max_abs_entry() const;
  cdouble trace() const;
  bool all_finite() const;

 private:
  int n_;
  std::vector<cdouble> e_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, const ComplexMatrix& a);

struct SvdResult {
  std::vector<double> singular_values;  // nonincreasing, length n
  ComplexMatrix u;                      // M = u * diag(s) * v^*
  ComplexMatrix v;
};

// Full SVD by one-sided Jacobi with complex rotations. Sweeps until every
// off-diagonal Gram entry |<col_p, col_q>| falls below 1e-14 times the
// geometric mean of the column norms; iteration cap 60 sweeps.
SvdResult svd_full(const ComplexMatrix& m);

// Singular values only, sorted nonincreasing.
std::vector<double> svd(const ComplexMatrix& m);

// Largest singular value.
double operator_norm(const ComplexMatrix& m);

// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

// |M| = (M^* M)^{1/2}, Hermitian positive semidefinite.
ComplexMatrix matrix_abs(const ComplexMatrix& m);

struct EigResult {
  std::vector<double> eigenvalues;  // nonincreasing
  ComplexMatrix vectors;            // H = vectors * diag(eigenvalues) * vectors^*
};

// Eigendecomposition of a Hermitian matrix by two-sided Jacobi. The input
// is symmetrized first, so mild numerical asymmetry is tolerated.
EigResult eig_hermitian(const ComplexMatrix& h);

// Haar-distributed unitary: Gram-Schmidt (with re-orthogonalization) of a
// matrix of iid complex Gaussians drawn from the seeded generator.
// Deterministic for a fixed seed.
ComplexMatrix random_unitary(int n, std::uint64_t seed);

}  // namespace gauge
