// Bipartition sweeps, Schmidt ranks, the three-way classification
// (fully separable / globally entangled / partially separable) and the
// reduced-density-matrix cross-check for symmetrized product states.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "symsep/permanent.hpp"
#include "symsep/state.hpp"
#include "symsep/symmetry.hpp"
#include "symsep/types.hpp"

namespace symsep {

// Canonical bipartition: side_a is the side containing party 1 (bit 0),
// which deduplicates A:B against B:A.
struct Bipartition {
  int n = 0;
  std::uint32_t mask_a = 0;

  std::vector<int> side_a() const {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask_a & (1u << i)) s.push_back(i);
    return s;
  }
  std::vector<int> side_b() const {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (!(mask_a & (1u << i))) s.push_back(i);
    return s;
  }

  bool operator==(const Bipartition&) const = default;
};

// All 2^(n-1) - 1 canonical bipartitions, in ascending mask order.
inline std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2) throw InvalidInput("bipartitions require n >= 2");
  if (n > 30) throw GuardExceeded("bipartition enumeration is guarded at n <= 30");
  std::vector<Bipartition> cuts;
  cuts.reserve((std::size_t(1) << (n - 1)) - 1);
  for (std::uint32_t s = 0; s + 1 < (1u << (n - 1)); ++s)
    cuts.push_back({n, 1u | (s << 1)});
  return cuts;
}

// Amplitudes reshaped into a (prod_{i in A} d_i) x (prod_{i in B} d_i)
// matrix, both sides ordered by ascending party index.
template <class T>
MatrixX<T> reshape_for_cut(const PureState<T>& psi, std::uint32_t mask_a) {
  const int n = psi.parties();
  Index rows = 1, cols = 1;
  for (int i = 0; i < n; ++i) (mask_a & (1u << i) ? rows : cols) *= psi.dims[i];

  MatrixX<T> m(rows, cols);
  std::vector<Index> digits(n);
  for (Index q = 0; q < psi.dim(); ++q) {
    detail::decompose_index(q, psi.dims, digits);
    Index r = 0, c = 0;
    for (int i = 0; i < n; ++i) {
      if (mask_a & (1u << i))
        r = r * psi.dims[i] + digits[i];
      else
        c = c * psi.dims[i] + digits[i];
    }
    m(r, c) = psi.amplitudes[q];
  }
  return m;
}

template <class T = double>
struct SchmidtResult {
  int rank = 0;
  std::vector<T> singular_values;  // descending
};

template <class T>
SchmidtResult<T> schmidt_rank(const PureState<T>& psi, const Bipartition& cut,
                              T rel_tol = T(tol::kSchmidtRel)) {
  if (cut.n != psi.parties() || cut.mask_a == 0 ||
      cut.mask_a >= (1u << psi.parties()) - 1u || !(cut.mask_a & 1u))
    throw InvalidInput("bipartition does not match the state");
  require_normalized(psi, "Schmidt decomposition");

  Eigen::JacobiSVD<MatrixX<T>> svd(reshape_for_cut(psi, cut.mask_a));
  SchmidtResult<T> out;
  out.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());
  const T cutoff = rel_tol * out.singular_values.front();
  for (T s : out.singular_values)
    if (s >= cutoff) ++out.rank;
  return out;
}

enum class Verdict { FullySeparable, GloballyEntangled, PartiallySeparable };

inline std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::FullySeparable: return "FullySeparable";
    case Verdict::GloballyEntangled: return "GloballyEntangled";
    case Verdict::PartiallySeparable: return "PartiallySeparable";
  }
  return "?";
}

template <class T = double>
struct CutEvidence {
  Bipartition cut;
  int rank = 0;
  std::vector<T> singular_values;
};

template <class T = double>
struct Classification {
  Verdict verdict = Verdict::GloballyEntangled;
  std::optional<Bipartition> witness;       // a separable cut, iff PartiallySeparable
  std::optional<ProductState<T>> factors;   // iff FullySeparable
  std::vector<CutEvidence<T>> evidence;     // canonical cut order
};

namespace detail {

// Dominant left singular vector of the {party}:{rest} reshape, phase-fixed.
template <class T>
VectorX<T> recover_factor(const PureState<T>& psi, int party) {
  const std::uint32_t mask = 1u << party;
  Eigen::JacobiSVD<MatrixX<T>> svd(reshape_for_cut(psi, mask), Eigen::ComputeThinU);
  VectorX<T> f = svd.matrixU().col(0);
  return fix_phase(f);
}

}  // namespace detail

// Sweeps every bipartition. Full separability is certified by the n
// single-party cuts being rank one; the whole sweep is still recorded as
// evidence, since the dichotomy statement is about arbitrary cuts.
template <class T>
Classification<T> classify(const PureState<T>& psi, T rel_tol = T(tol::kSchmidtRel)) {
  if (psi.parties() < 2) throw InvalidInput("classification requires n >= 2");
  require_normalized(psi, "classification");
  if (psi.dim() > guard::max_state_dim())
    throw GuardExceeded("state dimension exceeds the classification guard");

  Classification<T> result;
  bool all_rank_one = true, all_entangled = true;
  for (const Bipartition& cut : enumerate_bipartitions(psi.parties())) {
    SchmidtResult<T> sr = schmidt_rank(psi, cut, rel_tol);
    if (sr.rank == 1) {
      all_entangled = false;
      if (!result.witness) result.witness = cut;
    } else {
      all_rank_one = false;
    }
    result.evidence.push_back({cut, sr.rank, std::move(sr.singular_values)});
  }

  if (all_rank_one) {
    result.verdict = Verdict::FullySeparable;
    result.witness.reset();
    std::vector<VectorX<T>> factors(psi.parties());
    for (int i = 0; i < psi.parties(); ++i) factors[i] = detail::recover_factor(psi, i);
    ProductState<T> product(std::move(factors));
    const T fidelity = std::abs(inner_product(tensor_product(product), psi));
    if (fidelity < T(1) - T(tol::kSymmetry))
      throw Error("factor recovery lost fidelity on a rank-one state");
    result.factors = std::move(product);
  } else if (all_entangled) {
    result.verdict = Verdict::GloballyEntangled;
  } else {
    result.verdict = Verdict::PartiallySeparable;
  }
  return result;
}

template <class T = double>
struct Result1Report {
  bool holds = false;
  Classification<T> detail;
  bool premise_permutation_invariant = false;
  bool premise_translation_eigenstate = false;
  T translation_theta = T(0);
};

// Checks the dichotomy on a state that is permutation invariant or a
// translation eigenstate; anything else is rejected, not reported false.
// For permutation-invariant separable states the recovered factors must
// additionally agree pairwise up to phase.
template <class T>
Result1Report<T> verify_result1(const PureState<T>& psi, T rel_tol = T(tol::kSchmidtRel)) {
  Result1Report<T> report;
  report.premise_permutation_invariant = is_permutation_invariant(psi);
  const TranslationReport<T> tr = translation_analyze(psi);
  report.premise_translation_eigenstate = tr.is_eigenstate;
  report.translation_theta = tr.theta;
  if (!report.premise_permutation_invariant && !report.premise_translation_eigenstate)
    throw InvalidInput("state is neither permutation invariant nor a translation eigenstate");

  report.detail = classify(psi, rel_tol);
  report.holds = report.detail.verdict != Verdict::PartiallySeparable;
  if (report.premise_permutation_invariant &&
      report.detail.verdict == Verdict::FullySeparable) {
    const auto& factors = report.detail.factors->factors;
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (std::size_t j = i + 1; j < factors.size(); ++j)
        if (!identical_up_to_phase(factors[i], factors[j])) report.holds = false;
  }
  return report;
}

template <class T>
bool factors_identical_up_to_phase(const ProductState<T>& phi,
                                   T eps = T(tol::kPhaseIdentical)) {
  for (int i = 0; i < phi.parties(); ++i)
    for (int j = i + 1; j < phi.parties(); ++j)
      if (!identical_up_to_phase(phi.factors[i], phi.factors[j], eps)) return false;
  return true;
}

template <class T = double>
struct Result2Report {
  bool nonzero = false;
  Classification<T> classification;
  bool factors_identical = false;
  T norm_squared = T(0);
  bool holds = false;
};

// Symmetrizes a product state and classifies the outcome: nonzero always,
// globally entangled exactly when the factors are not all identical.
template <class T>
Result2Report<T> verify_result2(const ProductState<T>& phi, T rel_tol = T(tol::kSchmidtRel)) {
  const int n = phi.parties();
  if (n < 2) throw InvalidInput("result-2 verification requires n >= 2");

  const SymmetrizedState<T> sym = symmetrize(phi);
  T inv_factorial = T(1);
  for (int i = 2; i <= n; ++i) inv_factorial *= T(i);
  inv_factorial = T(1) / inv_factorial;

  Result2Report<T> report;
  report.norm_squared = sym.norm_squared;
  report.nonzero = sym.norm_squared >= inv_factorial - T(tol::kNorm);
  report.factors_identical = factors_identical_up_to_phase(phi);

  PureState<T> normalized(sym.state.dims,
                          sym.state.amplitudes / std::sqrt(sym.norm_squared));
  report.classification = classify(normalized, rel_tol);

  bool verdict_ok;
  if (report.factors_identical) {
    verdict_ok = report.classification.verdict == Verdict::FullySeparable;
    if (verdict_ok)
      for (const auto& f : report.classification.factors->factors)
        if (!identical_up_to_phase(f, phi.factors[0])) verdict_ok = false;
  } else {
    verdict_ok = report.classification.verdict == Verdict::GloballyEntangled;
  }
  report.holds = report.nonzero && verdict_ok;
  return report;
}

template <class T = double>
struct CrossCheckReport {
  MatrixX<T> direct_rdm;                 // Tr_{2..n} |Phi_S><Phi_S|, unnormalized
  MatrixX<T> gram_rdm;                   // (1/n!)^2 sum_k lambda_k |alpha_k><alpha_k|
  SpectralDecomposition<T> spectral;     // of <psi_j|psi_i>
  std::vector<VectorX<T>> alpha_vectors; // |alpha_k> = sum_i conj(U_ik) |phi_i>
  T max_deviation = T(0);
};

// Rebuilds the single-party reduced state of |Phi_S> two ways: direct
// partial trace versus the spectral decomposition of the Gram of the
// (n-1)-party companion states psi_k.
template <class T>
CrossCheckReport<T> rdm_crosscheck(const ProductState<T>& phi) {
  const int n = phi.parties();
  if (n < 2) throw InvalidInput("RDM cross-check requires n >= 2");
  if (!phi.homogeneous_dims())
    throw InvalidInput("RDM cross-check requires equal local dimensions");
  detail::check_symmetrize_guard(n);

  const SymmetrizedState<T> sym = symmetrize(phi);
  CrossCheckReport<T> report;
  report.direct_rdm = partial_trace_matrix(
      sym.state.dims,
      MatrixX<T>(sym.state.amplitudes * sym.state.amplitudes.adjoint()), {0});

  // psi_k: the unnormalized permutation sum of all factors except k, in the
  // cyclic order k+1, ..., n, 1, ..., k-1.
  T sub_factorial = T(1);
  for (int i = 2; i <= n - 1; ++i) sub_factorial *= T(i);
  std::vector<VectorX<T>> companions(n);
  for (int k = 0; k < n; ++k) {
    std::vector<VectorX<T>> rest;
    rest.reserve(n - 1);
    for (int j = 1; j < n; ++j) rest.push_back(phi.factors[(k + j) % n]);
    companions[k] =
        detail::permutation_average(ProductState<T>(std::move(rest)), false).state.amplitudes *
        sub_factorial;
  }

  MatrixX<T> companion_gram(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) companion_gram(j, i) = companions[j].dot(companions[i]);
  report.spectral = spectral_decompose(companion_gram);

  T factorial = sub_factorial * T(n);
  const T scale = T(1) / (factorial * factorial);
  const Index d = phi.factors[0].size();
  report.gram_rdm = MatrixX<T>::Zero(d, d);
  report.alpha_vectors.resize(n);
  for (int k = 0; k < n; ++k) {
    VectorX<T> alpha = VectorX<T>::Zero(d);
    for (int i = 0; i < n; ++i) alpha += std::conj(report.spectral.unitary(i, k)) * phi.factors[i];
    report.gram_rdm += scale * report.spectral.eigenvalues[k] * (alpha * alpha.adjoint());
    report.alpha_vectors[k] = std::move(alpha);
  }

  report.max_deviation = (report.direct_rdm - report.gram_rdm).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace symsep
