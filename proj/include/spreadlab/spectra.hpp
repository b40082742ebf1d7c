#pragma once

#include <vector>

namespace spreadlab {

// Dense symmetric real matrix, row-major.  Sizes stay small (worst case a few
// thousand); no sparse storage.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;  // n*n, a[i*n+j] == a[j*n+i]

  SymMatrix() = default;
  explicit SymMatrix(int n_) : n(n_), a((std::size_t)n_ * n_, 0.0) {}

  double at(int i, int j) const { return a[(std::size_t)i * n + j]; }
  // keeps the matrix symmetric by construction
  void set(int i, int j, double v) {
    a[(std::size_t)i * n + j] = v;
    a[(std::size_t)j * n + i] = v;
  }
};

// Extreme eigenvalues and unit eigenvectors of a symmetric matrix.
// Conventions: x (top eigenvector) has nonnegative entry sum; z (bottom) has
// its largest-magnitude entry negative.  Ties in either rule are broken by the
// first nonzero entry.
struct SpectralPair {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  std::vector<double> x;
  std::vector<double> z;
  double spread = 0.0;  // lambda_max - lambda_min
};

// Small dense real matrix, not necessarily symmetric; k <= 8.  Used for
// quotient matrices of equitable partitions, whose spectra are real.
struct QuotientMatrix {
  int k = 0;
  std::vector<double> a;

  QuotientMatrix() = default;
  explicit QuotientMatrix(int k_) : k(k_), a((std::size_t)k_ * k_, 0.0) {}

  double at(int i, int j) const { return a[(std::size_t)i * k + j]; }
  void set(int i, int j, double v) { a[(std::size_t)i * k + j] = v; }
};

// Full symmetric eigendecomposition, eigenvalues sorted descending.  Cyclic
// Jacobi up to n=64, Householder tridiagonalization + implicit QL above.
std::vector<double> eigenvalues(const SymMatrix& m);

// {lambda_min, lambda_max} only, via tridiagonalization + eigenvalue-only QL.
// Much cheaper than a full decomposition with vectors; used for bulk scoring.
std::pair<double, double> extreme_eigenvalues(const SymMatrix& m);

namespace detail {
// workspace-reusing form of extreme_eigenvalues: a holds the symmetric matrix
// (n*n row-major, destroyed), d and e are length-n scratch.  No validation.
std::pair<double, double> extreme_eigs_inplace(std::vector<double>& a, int n,
                                               std::vector<double>& d, std::vector<double>& e);
}  // namespace detail

// Throws std::invalid_argument on non-finite entries.
SpectralPair extreme_eigs(const SymMatrix& m);

// All k eigenvalues sorted descending.  Characteristic polynomial for k <= 4,
// balanced Hessenberg QR iteration for k in 5..8.  Throws std::runtime_error
// when a complex pair with imaginary part > 1e-8 appears (an invalid
// quotient), std::invalid_argument for k out of range.
std::vector<double> real_eigs_small(const QuotientMatrix& q);

// D^{1/2} B D^{1/2} for block weights alpha and 0/1 symmetric pattern
// (diagonal entries = loops allowed).  Throws std::invalid_argument on a
// negative weight or when the weights are off the unit simplex by > 1e-9.
SymMatrix stepgraphon_matrix(const std::vector<double>& alpha, const SymMatrix& pattern);

// spread(g)/n for a 0/1 adjacency matrix; internally recomputed through the
// uniform-weight block path and cross-asserted to 1e-9.
double graphon_spread_of_graph(const SymMatrix& g);

}  // namespace spreadlab
