// Permutation and translation machinery: invariance tests, the bosonic
// symmetrizer and its fermionic counterpart, translation eigenanalysis and
// the symmetric-subspace projector.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "symsep/state.hpp"
#include "symsep/types.hpp"

namespace symsep {

namespace detail {

// Visits all n! permutation arrays in lexicographic order together with
// their parity; the reference summation order for the symmetrizer.
template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> visited(n);
  do {
    std::fill(visited.begin(), visited.end(), 0);
    int transpositions = 0;
    for (int i = 0; i < n; ++i) {
      if (visited[i]) continue;
      int len = 0;
      for (int j = i; !visited[j]; j = perm[j]) {
        visited[j] = 1;
        ++len;
      }
      transpositions += len - 1;
    }
    fn(perm, transpositions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

inline void check_symmetrize_guard(int n) {
  if (n > guard::kMaxSymmetrizeParties)
    throw GuardExceeded("permutation-sum operations are guarded at n <= 10");
}

}  // namespace detail

inline Permutation adjacent_transposition(int i, int n) {
  Permutation sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::swap(sigma[i], sigma[i + 1]);
  return sigma;
}

// Translation on party labels: 1 -> 2, 2 -> 3, ..., n -> 1.
inline Permutation translation_permutation(int n) {
  Permutation sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = (i + 1) % n;
  return sigma;
}

// True iff ||sigma psi - psi|| <= tol for every adjacent transposition;
// those generate S_n, so the check extends to the whole group.
template <class T>
bool is_permutation_invariant(const PureState<T>& psi, T eps = T(tol::kSymmetry)) {
  if (!homogeneous(psi.dims))
    throw InvalidInput("permutation invariance requires equal local dimensions");
  for (int i = 0; i + 1 < psi.parties(); ++i) {
    const auto permuted = apply_party_permutation(psi, adjacent_transposition(i, psi.parties()));
    if ((permuted.amplitudes - psi.amplitudes).norm() > eps) return false;
  }
  return true;
}

template <class T>
bool is_antisymmetric(const PureState<T>& psi, T eps = T(tol::kSymmetry)) {
  if (!homogeneous(psi.dims))
    throw InvalidInput("antisymmetry check requires equal local dimensions");
  for (int i = 0; i + 1 < psi.parties(); ++i) {
    const auto permuted = apply_party_permutation(psi, adjacent_transposition(i, psi.parties()));
    if ((permuted.amplitudes + psi.amplitudes).norm() > eps) return false;
  }
  return true;
}

template <class T = double>
struct TranslationReport {
  bool is_eigenstate = false;
  T theta = T(0);  // phase of the eigenvalue, in (-pi, pi]; meaningful only
                   // when is_eigenstate
  T residual = T(0);
};

// Estimates theta as arg<psi|T psi> and accepts the eigenstate claim only
// when ||T psi - e^{i theta} psi|| stays below the symmetry tolerance.
template <class T>
TranslationReport<T> translation_analyze(const PureState<T>& psi) {
  if (!homogeneous(psi.dims))
    throw InvalidInput("translation analysis requires equal local dimensions");
  if (psi.parties() < 2) throw InvalidInput("translation analysis requires n >= 2");
  require_normalized(psi, "translation analysis");

  const auto shifted = apply_party_permutation(psi, translation_permutation(psi.parties()));
  const Complex<T> overlap = inner_product(psi, shifted);

  TranslationReport<T> report;
  report.theta = std::arg(overlap);
  if (report.theta <= -std::numbers::pi_v<T>) report.theta = std::numbers::pi_v<T>;
  const Complex<T> phase = std::polar(T(1), report.theta);
  report.residual = (shifted.amplitudes - phase * psi.amplitudes).norm();
  report.is_eigenstate =
      std::abs(overlap) >= T(1) - T(tol::kSymmetry) && report.residual <= T(tol::kSymmetry);
  return report;
}

// (1/n!) sum_sigma U_sigma |Phi> with c = 1; unnormalized, the squared norm
// travels alongside.
template <class T = double>
struct SymmetrizedState {
  PureState<T> state;
  T norm_squared = T(0);
};

namespace detail {

template <class T>
SymmetrizedState<T> permutation_average(const ProductState<T>& phi, bool signed_sum) {
  if (!phi.homogeneous_dims())
    throw InvalidInput("symmetrization requires equal local dimensions");
  const int n = phi.parties();
  check_symmetrize_guard(n);

  T inv_factorial = T(1);
  for (int i = 2; i <= n; ++i) inv_factorial *= T(i);
  inv_factorial = T(1) / inv_factorial;

  const Dims dims = phi.dims();
  VectorX<T> acc = VectorX<T>::Zero(product_of(dims));
  std::vector<VectorX<T>> ordered(n);
  for_each_permutation(n, [&](const std::vector<int>& perm, int parity) {
    for (int j = 0; j < n; ++j) ordered[j] = phi.factors[perm[j]];
    const VectorX<T> term = kron(ordered);
    if (signed_sum && parity < 0)
      acc -= term;
    else
      acc += term;
  });

  SymmetrizedState<T> out;
  out.state = PureState<T>(dims, acc * inv_factorial);
  out.norm_squared = out.state.norm_squared();
  return out;
}

}  // namespace detail

// Bosonic symmetrization; always nonzero for a valid product state, with
// norm_squared = Perm(Gram)/n!.
template <class T>
SymmetrizedState<T> symmetrize(const ProductState<T>& phi) {
  SymmetrizedState<T> out = detail::permutation_average(phi, /*signed_sum=*/false);
  if (out.norm_squared <= T(0))
    throw Error("symmetrization produced a zero state, violating the permanent lower bound");
  return out;
}

// Fermionic (sign-weighted) counterpart; norm_squared = det(Gram)/n! and may
// legitimately vanish (parallel factors).
template <class T>
SymmetrizedState<T> antisymmetrize(const ProductState<T>& phi) {
  return detail::permutation_average(phi, /*signed_sum=*/true);
}

// P_sym = (1/n!) sum_sigma U_sigma on n parties of local dimension d.
// Entries are exact class averages: P[r][q] = 1/|class| when r and q carry
// the same multiset of local indices, else 0.
template <class T = double>
MatrixX<T> symmetric_subspace_projector(int n, Index d) {
  if (n < 1 || d < 1) throw InvalidInput("projector needs n >= 1 and d >= 1");
  Index total = 1;
  for (int i = 0; i < n; ++i) {
    total *= d;
    if (total > guard::kMaxProjectorDim)
      throw GuardExceeded("symmetric projector is guarded at d^n <= 2^12");
  }

  const Dims dims(static_cast<std::size_t>(n), d);
  std::map<std::vector<Index>, std::vector<Index>> classes;
  std::vector<Index> digits(n);
  for (Index q = 0; q < total; ++q) {
    detail::decompose_index(q, dims, digits);
    std::vector<Index> key = digits;
    std::sort(key.begin(), key.end());
    classes[std::move(key)].push_back(q);
  }

  MatrixX<T> p = MatrixX<T>::Zero(total, total);
  for (const auto& [key, members] : classes) {
    const T w = T(1) / T(members.size());
    for (Index r : members)
      for (Index c : members) p(r, c) = w;
  }
  return p;
}

// dim of the symmetric subspace: C(n + d - 1, n).
inline double symmetric_subspace_dimension(int n, Index d) {
  double v = 1;
  for (int i = 1; i <= n; ++i) v = v * double(d - 1 + i) / double(i);
  return v;
}

}  // namespace symsep
