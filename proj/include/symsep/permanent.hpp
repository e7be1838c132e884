// Matrix permanents (Ryser with Gray-code updates, plus the n! reference
// sum) and Gram matrices of product-state factors.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "symsep/state.hpp"
#include "symsep/types.hpp"

namespace symsep {

template <class T = double>
struct GramMatrix {
  MatrixX<T> entries;  // a_ij = <phi_i|phi_j>

  Index size() const { return entries.rows(); }

  // Validates the Gram invariants: Hermitian, unit diagonal, PSD.
  static GramMatrix checked(MatrixX<T> m) {
    if (m.rows() != m.cols()) throw InvalidInput("Gram matrix must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > T(tol::kGramHermitian))
      throw InvalidInput("Gram matrix is not Hermitian");
    for (Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, i) - Complex<T>(1)) > T(tol::kNorm))
        throw InvalidInput("Gram matrix diagonal differs from 1");
    Eigen::SelfAdjointEigenSolver<MatrixX<T>> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < T(tol::kPsdFloor))
      throw InvalidInput("Gram matrix is not positive semi-definite");
    GramMatrix g;
    g.entries = std::move(m);
    return g;
  }
};

template <class T>
GramMatrix<T> gram_from_factors(const ProductState<T>& phi) {
  if (!phi.homogeneous_dims())
    throw InvalidInput("Gram matrix requires equal local dimensions");
  const int n = phi.parties();
  MatrixX<T> m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = Complex<T>(1);  // unit-norm factors
    for (int j = i + 1; j < n; ++j) {
      const Complex<T> a = phi.factors[i].dot(phi.factors[j]);
      m(i, j) = a;
      m(j, i) = std::conj(a);
    }
  }
  GramMatrix<T> g;
  g.entries = std::move(m);
  return g;
}

// Ryser inclusion-exclusion with Gray-code subset updates:
//   Perm(A) = (-1)^n sum_{S != empty} (-1)^|S| prod_i sum_{j in S} A(i, j).
// The subset sequence (and hence the accumulation order) is fixed.
template <class T>
Complex<T> permanent_ryser(const MatrixX<T>& m) {
  if (m.rows() != m.cols()) throw InvalidInput("permanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return Complex<T>(1);
  if (n > guard::kMaxRyserPermanent)
    throw GuardExceeded("permanent_ryser is guarded at n <= 24");

  VectorX<T> row_sums = VectorX<T>::Zero(n);
  Complex<T> total(0);
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t(1) << n); ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const int bit = std::countr_zero(gray ^ next);
    if (next & (std::uint64_t(1) << bit))
      row_sums += m.col(bit);
    else
      row_sums -= m.col(bit);
    gray = next;

    Complex<T> prod(1);
    for (int i = 0; i < n; ++i) prod *= row_sums[i];
    const int popcount = std::popcount(gray);
    total += ((n - popcount) % 2 == 0) ? prod : -prod;
  }
  return total;
}

// Reference n! sum, the oracle permanent_ryser is tested against.
template <class T>
Complex<T> permanent_naive(const MatrixX<T>& m) {
  if (m.rows() != m.cols()) throw InvalidInput("permanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return Complex<T>(1);
  if (n > guard::kMaxNaivePermanent)
    throw GuardExceeded("permanent_naive is guarded at n <= 9");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex<T> total(0);
  do {
    Complex<T> prod(1);
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

template <class T = double>
struct MarcusReport {
  T perm = T(0);
  bool lower_ok = false;  // perm >= 1 - 1e-9
  bool upper_ok = false;  // perm <= n! (1 + 1e-6)
};

// Permanent of a unit-diagonal Hermitian PSD Gram sits in [1, n!]. The
// imaginary residue is asserted before the real part is taken.
template <class T>
MarcusReport<T> marcus_bounds_check(const GramMatrix<T>& g) {
  GramMatrix<T>::checked(g.entries);
  const Complex<T> p = permanent_ryser(g.entries);
  if (std::abs(p.imag()) > T(tol::kNorm))
    throw InvalidInput("permanent of a Gram matrix has non-negligible imaginary part");

  T factorial = T(1);
  for (Index i = 2; i <= g.size(); ++i) factorial *= T(i);

  MarcusReport<T> report;
  report.perm = p.real();
  report.lower_ok = report.perm >= T(1) - T(tol::kNorm);
  report.upper_ok = report.perm <= factorial * (T(1) + T(1e-6));
  return report;
}

}  // namespace symsep
