// Canonical state families: GHZ, Dicke/W, Slater determinants and
// translation eigenstates with a prescribed cyclic phase.

#pragma once

#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "symsep/random.hpp"
#include "symsep/state.hpp"
#include "symsep/symmetry.hpp"
#include "symsep/types.hpp"

namespace symsep {

// (1/sqrt(d)) sum_k |k>^n.
template <class T = double>
PureState<T> ghz_state(int n, Index d = 2) {
  if (n < 2 || d < 2) throw InvalidInput("GHZ needs n >= 2 and d >= 2");
  const Dims dims(static_cast<std::size_t>(n), d);
  const Index total = product_of(dims);
  VectorX<T> amps = VectorX<T>::Zero(total);
  Index stride = 0;
  for (const Index s : strides_of(dims)) stride += s;
  const T a = T(1) / std::sqrt(T(d));
  for (Index k = 0; k < d; ++k) amps[k * stride] = a;
  return PureState<T>(dims, std::move(amps));
}

// Equal-weight symmetric n-qubit state with exactly k excitations.
template <class T = double>
PureState<T> dicke_state(int n, int k) {
  if (n < 2 || k < 0 || k > n) throw InvalidInput("Dicke needs n >= 2 and 0 <= k <= n");
  const Dims dims(static_cast<std::size_t>(n), 2);
  const Index total = Index(1) << n;
  VectorX<T> amps = VectorX<T>::Zero(total);
  Index count = 0;
  for (Index q = 0; q < total; ++q)
    if (std::popcount(static_cast<std::uint64_t>(q)) == k) ++count;
  const T a = T(1) / std::sqrt(T(count));
  for (Index q = 0; q < total; ++q)
    if (std::popcount(static_cast<std::uint64_t>(q)) == k) amps[q] = a;
  return PureState<T>(dims, std::move(amps));
}

template <class T = double>
PureState<T> w_state(int n) {
  return dicke_state<T>(n, 1);
}

// Normalized antisymmetrization of the given factors; throws when the
// factors are linearly dependent (zero Slater determinant).
template <class T>
PureState<T> slater_state(const ProductState<T>& phi) {
  const SymmetrizedState<T> anti = antisymmetrize(phi);
  if (anti.norm_squared < T(tol::kZeroNorm))
    throw InvalidInput("Slater determinant vanishes: factors are linearly dependent");
  return PureState<T>(anti.state.dims, anti.state.amplitudes / std::sqrt(anti.norm_squared));
}

// Slater determinant of basis vectors |b_1>, ..., |b_n> in dimension d.
template <class T = double>
PureState<T> basis_slater_state(const std::vector<Index>& basis_indices, Index d) {
  const int n = static_cast<int>(basis_indices.size());
  if (n < 2 || d < n) throw InvalidInput("Slater needs n >= 2 distinct basis vectors and d >= n");
  std::vector<VectorX<T>> factors(n);
  for (int i = 0; i < n; ++i) {
    if (basis_indices[i] < 0 || basis_indices[i] >= d)
      throw InvalidInput("Slater basis index out of range");
    factors[i] = VectorX<T>::Zero(d);
    factors[i][basis_indices[i]] = Complex<T>(1);
  }
  return slater_state(ProductState<T>(std::move(factors)));
}

namespace detail {

inline Index rotate_flat_index(Index q, const Dims& dims) {
  const int n = static_cast<int>(dims.size());
  std::vector<Index> digits(n);
  decompose_index(q, dims, digits);
  const Dims strides = strides_of(dims);
  Index r = 0;
  for (int i = 0; i < n; ++i) r += digits[i] * strides[(i + 1) % n];
  return r;
}

}  // namespace detail

// Exact eigenstate of the party translation with eigenvalue e^{2 pi i k/n},
// built as a phased superposition over full-length translation orbits of
// random basis states. k must not be 0 mod n when a nontrivial phase is
// wanted.
inline PureState<double> translation_eigenstate(int n, Index d, int k, Rng& rng,
                                                int orbit_count = 2) {
  if (n < 2 || d < 2) throw InvalidInput("translation eigenstate needs n >= 2 and d >= 2");
  const Dims dims(static_cast<std::size_t>(n), d);
  const Index total = product_of(dims);
  VectorX<double> amps = VectorX<double>::Zero(total);
  const double theta = 2.0 * std::numbers::pi * double(((k % n) + n) % n) / double(n);

  std::set<Index> used;
  int placed = 0;
  for (int attempt = 0; placed < orbit_count && attempt < 10000; ++attempt) {
    Index base = Index(rng.integer(std::uint64_t(total)));
    // only full-length orbits keep the phased sum nonzero
    std::vector<Index> orbit{base};
    for (int j = 1; j < n; ++j) orbit.push_back(detail::rotate_flat_index(orbit.back(), dims));
    if (detail::rotate_flat_index(orbit.back(), dims) != base) continue;
    if (std::set<Index>(orbit.begin(), orbit.end()).size() != std::size_t(n)) continue;
    bool clashes = false;
    for (Index q : orbit) clashes = clashes || used.count(q) > 0;
    if (clashes) continue;

    const std::complex<double> c = rng.complex_normal();
    for (int j = 0; j < n; ++j) {
      amps[orbit[j]] += c * std::polar(1.0, -theta * double(j));
      used.insert(orbit[j]);
    }
    ++placed;
  }
  if (placed == 0) throw InvalidInput("no full-length translation orbit available");
  return PureState<double>(dims, amps / amps.norm());
}

}  // namespace symsep
