// Dense multipartite pure states and density matrices: tensor products,
// inner products, partial trace, party permutations, spectral decomposition.
//
// Amplitude ordering convention: basis state |p_1 p_2 ... p_n> lives at flat
// index ((p_1*d_2 + p_2)*d_3 + ...), i.e. row-major with party 1 as the
// slowest-varying index. Everything in this library assumes that layout.

#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "symsep/types.hpp"

namespace symsep {

template <class T = double>
struct PureState {
  Dims dims;
  VectorX<T> amplitudes;

  PureState() = default;
  PureState(Dims d, VectorX<T> amps) : dims(std::move(d)), amplitudes(std::move(amps)) {
    if (dims.empty()) throw InvalidInput("state needs at least one party");
    for (Index di : dims)
      if (di < 2 && dims.size() > 1)
        throw InvalidInput("local dimensions must be >= 2 for multi-party states");
    if (dims.size() == 1 && dims[0] < 1) throw InvalidInput("local dimension must be >= 1");
    if (amplitudes.size() != product_of(dims))
      throw InvalidInput("amplitude count does not match product of local dimensions");
  }

  int parties() const { return static_cast<int>(dims.size()); }
  Index dim() const { return amplitudes.size(); }
  T norm_squared() const { return amplitudes.squaredNorm(); }

  bool is_normalized(T eps = T(tol::kNorm)) const {
    return std::abs(norm_squared() - T(1)) <= eps;
  }

  // Validating constructor for states that must be unit norm.
  static PureState normalized(Dims d, VectorX<T> amps) {
    PureState psi(std::move(d), std::move(amps));
    if (psi.amplitudes.norm() < T(tol::kZeroNorm))
      throw InvalidInput("zero vector cannot be a normalized state");
    if (!psi.is_normalized())
      throw InvalidInput("state is not normalized: |norm^2 - 1| > 1e-9");
    return psi;
  }
};

template <class T>
void require_normalized(const PureState<T>& psi, const char* what) {
  if (!psi.is_normalized()) throw InvalidInput(std::string(what) + " requires a normalized state");
}

template <class T = double>
struct ProductState {
  std::vector<VectorX<T>> factors;

  ProductState() = default;
  explicit ProductState(std::vector<VectorX<T>> f) : factors(std::move(f)) {
    if (factors.empty()) throw InvalidInput("product state needs at least one factor");
    for (const auto& v : factors) {
      if (v.size() < 1) throw InvalidInput("empty factor");
      if (factors.size() > 1 && v.size() < 2)
        throw InvalidInput("local dimensions must be >= 2 for multi-party states");
      if (std::abs(v.squaredNorm() - T(1)) > T(tol::kNorm))
        throw InvalidInput("product-state factors must be unit norm");
    }
  }

  int parties() const { return static_cast<int>(factors.size()); }
  Dims dims() const {
    Dims d(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) d[i] = factors[i].size();
    return d;
  }
  bool homogeneous_dims() const { return homogeneous(dims()); }
};

// Kronecker product of a factor list, party 0 slowest.
template <class T>
VectorX<T> kron(const std::vector<VectorX<T>>& factors) {
  VectorX<T> out = VectorX<T>::Ones(1);
  for (const auto& f : factors) {
    VectorX<T> next(out.size() * f.size());
    for (Index i = 0; i < out.size(); ++i)
      next.segment(i * f.size(), f.size()) = out[i] * f;
    out.swap(next);
  }
  return out;
}

template <class T>
PureState<T> tensor_product(const ProductState<T>& phi) {
  return PureState<T>(phi.dims(), kron(phi.factors));
}

// <a|b>, conjugating a.
template <class T>
Complex<T> inner_product(const PureState<T>& a, const PureState<T>& b) {
  if (a.dims != b.dims) throw InvalidInput("inner product requires identical dims");
  return a.amplitudes.dot(b.amplitudes);
}

namespace detail {

inline void decompose_index(Index flat, const Dims& dims, std::vector<Index>& digits) {
  for (std::size_t i = dims.size(); i-- > 0;) {
    digits[i] = flat % dims[i];
    flat /= dims[i];
  }
}

inline std::vector<int> checked_keep_set(const Dims& dims, std::vector<int> keep) {
  if (keep.empty()) throw InvalidInput("keep set must be nonempty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw InvalidInput("duplicate party index in keep set");
  if (keep.front() < 0 || keep.back() >= static_cast<int>(dims.size()))
    throw InvalidInput("party index out of range in keep set");
  return keep;
}

}  // namespace detail

// Partial trace over the complement of `keep` (0-based party indices), on a
// raw matrix in the standard layout. Kept parties retain their relative
// order. No trace normalization is assumed or enforced.
template <class T>
MatrixX<T> partial_trace_matrix(const Dims& dims, const MatrixX<T>& m, std::vector<int> keep) {
  const Index total = product_of(dims);
  if (m.rows() != total || m.cols() != total)
    throw InvalidInput("matrix side does not match product of dims");
  keep = detail::checked_keep_set(dims, keep);

  const int n = static_cast<int>(dims.size());
  std::vector<int> traced;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

  const Dims strides = strides_of(dims);
  Dims keep_dims, traced_dims;
  for (int i : keep) keep_dims.push_back(dims[i]);
  for (int i : traced) traced_dims.push_back(dims[i]);
  const Index dk = product_of(keep_dims);
  const Index dt = product_of(traced_dims);

  // Base flat offsets contributed by the kept (resp. traced) multi-indices.
  std::vector<Index> keep_offsets(dk, 0), traced_offsets(dt, 0);
  std::vector<Index> digits;
  digits.assign(keep_dims.size(), 0);
  for (Index k = 0; k < dk; ++k) {
    detail::decompose_index(k, keep_dims, digits);
    Index off = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) off += digits[i] * strides[keep[i]];
    keep_offsets[k] = off;
  }
  digits.assign(traced_dims.size(), 0);
  for (Index t = 0; t < dt; ++t) {
    detail::decompose_index(t, traced_dims, digits);
    Index off = 0;
    for (std::size_t i = 0; i < traced.size(); ++i) off += digits[i] * strides[traced[i]];
    traced_offsets[t] = off;
  }

  MatrixX<T> out = MatrixX<T>::Zero(dk, dk);
  for (Index r = 0; r < dk; ++r)
    for (Index c = 0; c < dk; ++c) {
      Complex<T> acc(0);
      for (Index t = 0; t < dt; ++t)
        acc += m(keep_offsets[r] + traced_offsets[t], keep_offsets[c] + traced_offsets[t]);
      out(r, c) = acc;
    }
  return out;
}

template <class T = double>
struct DensityMatrix {
  Dims dims;
  MatrixX<T> matrix;

  DensityMatrix() = default;

  // Structural constructor: shape, Hermiticity and unit trace are checked;
  // positivity is trusted (for operations that preserve it exactly).
  DensityMatrix(Dims d, MatrixX<T> m) : dims(std::move(d)), matrix(std::move(m)) {
    const Index total = product_of(dims);
    if (dims.empty() || matrix.rows() != total || matrix.cols() != total)
      throw InvalidInput("density matrix side does not match product of dims");
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > T(tol::kHermitian))
      throw InvalidInput("density matrix is not Hermitian");
    if (std::abs(matrix.trace() - Complex<T>(1)) > T(tol::kNorm))
      throw InvalidInput("density matrix trace differs from 1");
  }

  // Fully validating factory for externally supplied matrices; also checks
  // the spectrum against the PSD floor.
  static DensityMatrix checked(Dims d, MatrixX<T> m) {
    DensityMatrix rho(std::move(d), std::move(m));
    if (rho.min_eigenvalue() < T(tol::kPsdFloor))
      throw InvalidInput("density matrix has a negative eigenvalue");
    return rho;
  }

  static DensityMatrix pure(const PureState<T>& psi) {
    require_normalized(psi, "density matrix construction");
    return DensityMatrix(psi.dims, psi.amplitudes * psi.amplitudes.adjoint());
  }

  int parties() const { return static_cast<int>(dims.size()); }
  Index dim() const { return matrix.rows(); }

  T min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<MatrixX<T>> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
};

// Partial trace with result renormalization left untouched: trace and
// Hermiticity carry over from the input.
template <class T>
DensityMatrix<T> partial_trace(const DensityMatrix<T>& rho, const std::vector<int>& keep) {
  const std::vector<int> k = detail::checked_keep_set(rho.dims, keep);
  Dims kept_dims;
  for (int i : k) kept_dims.push_back(rho.dims[i]);
  MatrixX<T> m = partial_trace_matrix(rho.dims, rho.matrix, k);
  m = ((m + m.adjoint()) / T(2)).eval();  // scrub rounding asymmetry
  return DensityMatrix<T>(std::move(kept_dims), std::move(m));
}

// U_sigma |psi>, where sigma[i] is the destination of party i's subsystem:
// the translation 1->2->...->n->1 is sigma[i] = (i+1) mod n.
template <class T>
PureState<T> apply_party_permutation(const PureState<T>& psi, const Permutation& sigma) {
  if (!homogeneous(psi.dims))
    throw InvalidInput("party permutation requires equal local dimensions");
  check_permutation(sigma, psi.parties());

  const int n = psi.parties();
  const Dims strides = strides_of(psi.dims);
  VectorX<T> out(psi.dim());
  std::vector<Index> digits(n);
  for (Index r = 0; r < psi.dim(); ++r) {
    detail::decompose_index(r, psi.dims, digits);
    Index src = 0;
    for (int i = 0; i < n; ++i) src += digits[sigma[i]] * strides[i];
    out[r] = psi.amplitudes[src];
  }
  return PureState<T>(psi.dims, std::move(out));
}

// Basis relabeling map of U_sigma: basis index q goes to image[q].
inline std::vector<Index> permutation_basis_map(const Dims& dims, const Permutation& sigma) {
  if (!homogeneous(dims)) throw InvalidInput("party permutation requires equal local dimensions");
  const int n = static_cast<int>(dims.size());
  check_permutation(sigma, n);
  const Dims strides = strides_of(dims);
  const Index total = product_of(dims);
  std::vector<Index> image(total);
  std::vector<Index> digits(n);
  for (Index q = 0; q < total; ++q) {
    detail::decompose_index(q, dims, digits);
    Index r = 0;
    for (int i = 0; i < n; ++i) r += digits[i] * strides[sigma[i]];
    image[q] = r;
  }
  return image;
}

template <class T = double>
struct SpectralDecomposition {
  RealVectorX<T> eigenvalues;  // descending
  MatrixX<T> unitary;          // columns are eigenvectors

  MatrixX<T> reconstruct() const {
    return unitary * eigenvalues.template cast<Complex<T>>().asDiagonal() * unitary.adjoint();
  }
};

// Eigendecomposition of a Hermitian PSD matrix, eigenvalues descending.
// Eigenvalues within the PSD floor of zero are clipped to exactly zero.
template <class T>
SpectralDecomposition<T> spectral_decompose(const MatrixX<T>& h) {
  if (h.rows() != h.cols()) throw InvalidInput("spectral decomposition needs a square matrix");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > T(tol::kHermitian))
    throw InvalidInput("spectral decomposition needs a Hermitian matrix");

  Eigen::SelfAdjointEigenSolver<MatrixX<T>> es(h);
  const Index n = h.rows();
  SpectralDecomposition<T> out;
  out.eigenvalues.resize(n);
  out.unitary.resize(n, n);
  for (Index k = 0; k < n; ++k) {  // Eigen sorts ascending
    T lambda = es.eigenvalues()[n - 1 - k];
    if (lambda < T(0) && lambda >= T(tol::kPsdFloor)) lambda = T(0);
    out.eigenvalues[k] = lambda;
    out.unitary.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return out;
}

// Rotate the global phase so the largest-magnitude entry is real positive.
template <class T>
VectorX<T> fix_phase(const VectorX<T>& v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex<T> z = v[imax];
  if (std::abs(z) < T(tol::kZeroNorm)) return v;
  return v * (std::conj(z) / std::abs(z));
}

// |<a|b>| >= 1 - tol for unit vectors: equal up to a global phase.
template <class T>
bool identical_up_to_phase(const VectorX<T>& a, const VectorX<T>& b,
                           T eps = T(tol::kPhaseIdentical)) {
  if (a.size() != b.size()) return false;
  return std::abs(a.dot(b)) >= T(1) - eps;
}

}  // namespace symsep
