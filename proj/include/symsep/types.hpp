// Shared scalar/vector/matrix aliases, tolerances, size guards and the
// error types used across the library.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace symsep {

template <class T>
using Complex = std::complex<T>;

// Dense column vector / matrix of complex amplitudes with real scalar T.
template <class T>
using VectorX = Eigen::Matrix<Complex<T>, Eigen::Dynamic, 1>;
template <class T>
using MatrixX = Eigen::Matrix<Complex<T>, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using RealVectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using Dims = std::vector<Index>;

// Permutation of party labels, 0-based: perm[i] is the new location of
// party i's subsystem.
using Permutation = std::vector<int>;

namespace tol {
// Absolute tolerance on |norm^2 - 1| for states that must be normalized.
inline constexpr double kNorm = 1e-9;
// Below this norm a vector counts as zero and cannot be normalized.
inline constexpr double kZeroNorm = 1e-12;
// Max elementwise deviation allowed from Hermiticity for density matrices.
inline constexpr double kHermitian = 1e-9;
// Gram matrices are Hermitian by construction; tighter check.
inline constexpr double kGramHermitian = 1e-12;
// Eigenvalues of PSD inputs may dip this far below zero before rejection.
inline constexpr double kPsdFloor = -1e-9;
// Residual threshold for symmetry / eigenstate decisions.
inline constexpr double kSymmetry = 1e-8;
// Default relative cutoff on singular values in Schmidt-rank counting.
inline constexpr double kSchmidtRel = 1e-10;
// Two unit vectors count as identical up to phase when |<a|b>| >= 1 - this.
inline constexpr double kPhaseIdentical = 1e-9;
}  // namespace tol

namespace guard {
inline constexpr int kMaxSymmetrizeParties = 10;  // n! enumeration
inline constexpr int kMaxNaivePermanent = 9;      // n! enumeration
inline constexpr int kMaxRyserPermanent = 24;     // 2^n subsets
inline constexpr Index kMaxProjectorDim = Index(1) << 12;  // dense d^n x d^n
inline constexpr int kDefaultMaxQubits = 12;

// Largest total Hilbert-space dimension accepted by classification and by
// the CLI. SYMSEP_MAX_QUBITS overrides the default qubit-equivalent bound.
inline Index max_state_dim() {
  static const Index dim = [] {
    int qubits = kDefaultMaxQubits;
    if (const char* env = std::getenv("SYMSEP_MAX_QUBITS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0 && v < 62) qubits = static_cast<int>(v);
    }
    return Index(1) << qubits;
  }();
  return dim;
}
}  // namespace guard

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid input: dimension mismatches, malformed permutations, broken
// invariants, unparseable files. CLI exit code 2.
struct InvalidInput : Error {
  using Error::Error;
};

// A resource guard was exceeded. CLI exit code 3.
struct GuardExceeded : Error {
  using Error::Error;
};

inline Index product_of(const Dims& dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

// strides[i] = prod of dims[i+1..n-1]; party 0 is the slowest index.
inline Dims strides_of(const Dims& dims) {
  Dims s(dims.size());
  Index acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

inline bool homogeneous(const Dims& dims) {
  for (Index d : dims)
    if (d != dims.front()) return false;
  return !dims.empty();
}

inline void check_permutation(const Permutation& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n)
    throw InvalidInput("permutation size does not match party count");
  std::vector<bool> seen(n, false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) throw InvalidInput("not a permutation of party labels");
    seen[v] = true;
  }
}

}  // namespace symsep
