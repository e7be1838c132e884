// Mixed-state extensions: ensembles, Hilbert-Schmidt inner product,
// symmetric-subspace support, density-level symmetrization and
// certificate-preserving checks. Separability of arbitrary mixed states is
// out of scope; everything here works on explicit product certificates.

#pragma once

#include <cmath>
#include <variant>

#include "symsep/separability.hpp"
#include "symsep/state.hpp"
#include "symsep/symmetry.hpp"
#include "symsep/types.hpp"

namespace symsep {

template <class T = double>
struct Ensemble {
  using Member = std::variant<PureState<T>, ProductState<T>>;

  std::vector<T> weights;
  std::vector<Member> members;

  Ensemble() = default;
  Ensemble(std::vector<T> w, std::vector<Member> m)
      : weights(std::move(w)), members(std::move(m)) {
    if (weights.empty() || weights.size() != members.size())
      throw InvalidInput("ensemble needs matching nonempty weight and member lists");
    T sum = T(0);
    for (T p : weights) {
      if (p <= T(0)) throw InvalidInput("ensemble weights must be positive");
      sum += p;
    }
    if (std::abs(sum - T(1)) > T(tol::kNorm))
      throw InvalidInput("ensemble weights must sum to 1");
    const Dims d = member_dims(members.front());
    for (const Member& m2 : members) {
      if (member_dims(m2) != d) throw InvalidInput("ensemble members must share dims");
      if (const auto* pure = std::get_if<PureState<T>>(&m2); pure && !pure->is_normalized())
        throw InvalidInput("ensemble members must be normalized");
    }
  }

  static Dims member_dims(const Member& m) {
    return std::holds_alternative<PureState<T>>(m) ? std::get<PureState<T>>(m).dims
                                                   : std::get<ProductState<T>>(m).dims();
  }

  Dims dims() const { return member_dims(members.front()); }
  std::size_t size() const { return members.size(); }

  // A full-separability certificate requires every member to be a product.
  bool is_product_certificate() const {
    for (const Member& m : members)
      if (!std::holds_alternative<ProductState<T>>(m)) return false;
    return true;
  }

  PureState<T> member_state(std::size_t i) const {
    if (const auto* pure = std::get_if<PureState<T>>(&members[i])) return *pure;
    return tensor_product(std::get<ProductState<T>>(members[i]));
  }
};

template <class T>
DensityMatrix<T> ensemble_to_density(const Ensemble<T>& e) {
  const Dims dims = e.dims();
  const Index d = product_of(dims);
  MatrixX<T> rho = MatrixX<T>::Zero(d, d);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const PureState<T> psi = e.member_state(i);
    rho += e.weights[i] * (psi.amplitudes * psi.amplitudes.adjoint());
  }
  return DensityMatrix<T>(dims, std::move(rho));
}

// Tr(a^dagger b); real and nonnegative-up-to-rounding for PSD inputs.
template <class T>
T hs_inner(const DensityMatrix<T>& a, const DensityMatrix<T>& b) {
  if (a.dims != b.dims) throw InvalidInput("Hilbert-Schmidt inner product requires equal dims");
  return a.matrix.conjugate().cwiseProduct(b.matrix).sum().real();
}

template <class T = double>
struct SupportReport {
  bool in_subspace = false;
  T overlap = T(0);  // Tr(rho P_sym)
};

// Overlap with and membership of the symmetric subspace.
template <class T>
SupportReport<T> symmetric_support_check(const DensityMatrix<T>& rho) {
  if (!homogeneous(rho.dims))
    throw InvalidInput("symmetric support check requires equal local dimensions");
  const MatrixX<T> p = symmetric_subspace_projector<T>(rho.parties(), rho.dims[0]);
  SupportReport<T> report;
  report.overlap = rho.matrix.cwiseProduct(p.transpose()).sum().real();
  report.in_subspace = ((p * rho.matrix * p) - rho.matrix).cwiseAbs().maxCoeff() <= T(tol::kSymmetry);
  return report;
}

template <class T = double>
struct NonorthogonalityReport {
  T overlap = T(0);  // Tr(rho P_sym)
  T floor = T(0);    // (min_i p_i) / n!
  bool holds = false;
};

// A product-certificate ensemble can never be orthogonal to the symmetric
// subspace: Tr(rho P_sym) = sum_i p_i <Phi_i|P_sym|Phi_i> is bounded below
// by (min p_i)/n! through the permanent lower bound.
template <class T>
NonorthogonalityReport<T> verify_mixed_nonorthogonality(const Ensemble<T>& e) {
  if (!e.is_product_certificate())
    throw InvalidInput("non-product member in a separability certificate");

  NonorthogonalityReport<T> report;
  T min_weight = e.weights.front();
  for (std::size_t i = 0; i < e.size(); ++i) {
    report.overlap +=
        e.weights[i] * symmetrize(std::get<ProductState<T>>(e.members[i])).norm_squared;
    min_weight = std::min(min_weight, e.weights[i]);
  }
  const int n = static_cast<int>(e.dims().size());
  T factorial = T(1);
  for (int i = 2; i <= n; ++i) factorial *= T(i);
  report.floor = min_weight / factorial;
  report.holds = report.overlap >= report.floor - T(tol::kNorm);
  return report;
}

// rho' = (1/n!) sum_sigma U_sigma rho U_sigma^dagger.
template <class T>
DensityMatrix<T> symmetrize_density(const DensityMatrix<T>& rho) {
  if (!homogeneous(rho.dims))
    throw InvalidInput("density symmetrization requires equal local dimensions");
  const int n = rho.parties();
  detail::check_symmetrize_guard(n);

  T inv_factorial = T(1);
  for (int i = 2; i <= n; ++i) inv_factorial *= T(i);
  inv_factorial = T(1) / inv_factorial;

  MatrixX<T> out = MatrixX<T>::Zero(rho.dim(), rho.dim());
  detail::for_each_permutation(n, [&](const std::vector<int>& sigma, int) {
    const std::vector<Index> image = permutation_basis_map(rho.dims, sigma);
    for (Index r = 0; r < rho.dim(); ++r)
      for (Index c = 0; c < rho.dim(); ++c)
        out(image[r], image[c]) += inv_factorial * rho.matrix(r, c);
  });
  return DensityMatrix<T>(rho.dims, std::move(out));
}

// Symmetrization of a product certificate stays a product certificate: each
// member is replaced by its n! party-relabelings at weight p_i/n!.
template <class T>
Ensemble<T> symmetrize_certificate(const Ensemble<T>& e) {
  if (!e.is_product_certificate())
    throw InvalidInput("non-product member in a separability certificate");
  const int n = static_cast<int>(e.dims().size());
  detail::check_symmetrize_guard(n);

  T inv_factorial = T(1);
  for (int i = 2; i <= n; ++i) inv_factorial *= T(i);
  inv_factorial = T(1) / inv_factorial;

  std::vector<T> weights;
  std::vector<typename Ensemble<T>::Member> members;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& phi = std::get<ProductState<T>>(e.members[i]);
    detail::for_each_permutation(n, [&](const std::vector<int>& sigma, int) {
      std::vector<VectorX<T>> permuted(n);
      for (int j = 0; j < n; ++j) permuted[sigma[j]] = phi.factors[j];
      weights.push_back(e.weights[i] * inv_factorial);
      members.emplace_back(ProductState<T>(std::move(permuted)));
    });
  }
  return Ensemble<T>(std::move(weights), std::move(members));
}

}  // namespace symsep
