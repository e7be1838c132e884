// Seedable random state generation. All sampling is pinned to the
// mt19937_64 bit stream (uniforms from raw mantissa bits, Gaussians by
// Box-Muller), so a seed reproduces byte-identical states on any platform.

#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "symsep/state.hpp"
#include "symsep/types.hpp"

namespace symsep {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0, 1]; never zero, safe under log.
  double uniform() {
    return (double((engine_() >> 11)) + 1.0) * 0x1p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::uint64_t integer(std::uint64_t bound) {  // uniform in [0, bound)
    return engine_() % bound;
  }

  VectorX<double> complex_gaussian(Index d) {
    VectorX<double> v(d);
    for (Index i = 0; i < d; ++i) v[i] = complex_normal();
    return v;
  }

  // Haar-random unit vector.
  VectorX<double> haar_vector(Index d) {
    VectorX<double> v = complex_gaussian(d);
    const double n = v.norm();
    if (n < tol::kZeroNorm) return haar_vector(d);
    return v / n;
  }

  ProductState<double> random_product(int n, Index d) {
    std::vector<VectorX<double>> factors(n);
    for (int i = 0; i < n; ++i) factors[i] = haar_vector(d);
    return ProductState<double>(std::move(factors));
  }

  // Product state whose factors are all the same Haar-random vector.
  ProductState<double> random_identical_product(int n, Index d) {
    const VectorX<double> f = haar_vector(d);
    return ProductState<double>(std::vector<VectorX<double>>(n, f));
  }

  // n orthonormal vectors in C^d (d >= n), Haar-distributed: QR of a
  // Gaussian matrix with the R diagonal rotated real positive.
  std::vector<VectorX<double>> random_orthonormal(int n, Index d) {
    if (d < n) throw InvalidInput("orthonormal set needs dimension >= count");
    MatrixX<double> a(d, n);
    for (int j = 0; j < n; ++j) a.col(j) = complex_gaussian(d);
    Eigen::HouseholderQR<MatrixX<double>> qr(a);
    MatrixX<double> q = qr.householderQ() * MatrixX<double>::Identity(d, n);
    const MatrixX<double> r = q.adjoint() * a;
    std::vector<VectorX<double>> out(n);
    for (int j = 0; j < n; ++j) {
      const std::complex<double> rjj = r(j, j);
      const double m = std::abs(rjj);
      out[j] = m < tol::kZeroNorm ? VectorX<double>(q.col(j)) : VectorX<double>(q.col(j) * (rjj / m));
    }
    return out;
  }

  // Gaussian superposition over the multiset (Dicke-type) basis: exactly
  // permutation invariant by construction.
  PureState<double> random_symmetric(int n, Index d) {
    const Dims dims(static_cast<std::size_t>(n), d);
    const Index total = product_of(dims);

    std::map<std::vector<Index>, std::complex<double>> coeff;
    std::map<std::vector<Index>, Index> multiplicity;
    std::vector<Index> digits(n);
    for (Index q = 0; q < total; ++q) {
      detail::decompose_index(q, dims, digits);
      std::vector<Index> key = digits;
      std::sort(key.begin(), key.end());
      ++multiplicity[std::move(key)];
    }
    for (auto& [key, count] : multiplicity) coeff[key] = complex_normal() / std::sqrt(double(count));

    VectorX<double> amps(total);
    for (Index q = 0; q < total; ++q) {
      detail::decompose_index(q, dims, digits);
      std::vector<Index> key = digits;
      std::sort(key.begin(), key.end());
      amps[q] = coeff[key];
    }
    const double norm = amps.norm();
    if (norm < tol::kZeroNorm) return random_symmetric(n, d);
    return PureState<double>(dims, amps / norm);
  }

  // Full Haar-random pure state on the given dims.
  PureState<double> random_state(const Dims& dims) {
    return PureState<double>(dims, haar_vector(product_of(dims)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace symsep
