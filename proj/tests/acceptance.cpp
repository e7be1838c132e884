// Acceptance runner: end-to-end guarantees exercised at fixed seeds, one
// [PASS]/[FAIL] line per criterion. The exit status is the number of failed
// criteria. The command-line binary used by the determinism criterion is
// injected by the build as SYMSEP_CLI_PATH.

#include <sys/wait.h>

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "symsep/families.hpp"
#include "symsep/mixed.hpp"
#include "symsep/permanent.hpp"
#include "symsep/random.hpp"
#include "symsep/separability.hpp"
#include "symsep/symmetry.hpp"

using namespace symsep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream oss;
  oss.precision(3);
  oss << x;
  return oss.str();
}

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

PureState<double> normalized(const SymmetrizedState<double>& sym) {
  return PureState<double>(sym.state.dims,
                           sym.state.amplitudes / std::sqrt(sym.norm_squared));
}

MatrixX<double> random_matrix(Rng& rng, Index n) {
  MatrixX<double> m(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) m(r, c) = rng.complex_normal();
  return m;
}

Ensemble<double> random_certificate(Rng& rng, int n, Index d, int members) {
  std::vector<double> weights(members);
  double total = 0;
  for (double& w : weights) {
    w = rng.uniform();
    total += w;
  }
  std::vector<Ensemble<double>::Member> list;
  for (int i = 0; i < members; ++i) {
    weights[i] /= total;
    list.emplace_back(rng.random_product(n, d));
  }
  return Ensemble<double>(std::move(weights), std::move(list));
}

// --- criteria -------------------------------------------------------------

// Ryser's formula agrees with the n!-term reference sum on dense complex
// matrices of every supported small size.
Outcome ryser_matches_reference() {
  Rng rng(1001);
  double worst = 0;
  for (int t = 0; t < 500; ++t) {
    const Index n = 2 + t % 7;
    const MatrixX<double> m = random_matrix(rng, n);
    const auto ryser = permanent_ryser(m);
    const auto naive = permanent_naive(m);
    const double dev = std::abs(ryser - naive) / std::max(1.0, std::abs(naive));
    worst = std::max(worst, dev);
    if (dev > 1e-10) return {false, "trial " + std::to_string(t) + " rel dev " + fmt(dev)};
  }
  return {true, "500 trials, worst rel dev " + fmt(worst)};
}

// The permanent of a unit-factor Gram matrix is real and sits in [1, n!],
// reaching the ends exactly for orthonormal and for identical factors.
Outcome gram_permanent_bounds() {
  Rng rng(1002);
  double lo = 1e300, hi_ratio = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 7;
    const Index d = 2 + t % 3;
    const auto report = marcus_bounds_check(gram_from_factors(rng.random_product(n, d)));
    if (!report.lower_ok || !report.upper_ok)
      return {false, "trial " + std::to_string(t) + " perm " + fmt(report.perm) + " outside bounds"};
    lo = std::min(lo, report.perm);
    hi_ratio = std::max(hi_ratio, report.perm / factorial(n));
  }
  for (int n = 2; n <= 8; ++n) {
    for (int t = 0; t < 25; ++t) {
      const auto ortho = marcus_bounds_check(
          gram_from_factors(ProductState<double>(rng.random_orthonormal(n, n + t % 2))));
      if (std::abs(ortho.perm - 1.0) > 1e-9)
        return {false, "orthonormal n=" + std::to_string(n) + " perm " + fmt(ortho.perm)};
      const auto same =
          marcus_bounds_check(gram_from_factors(rng.random_identical_product(n, 2 + t % 3)));
      if (std::abs(same.perm - factorial(n)) > 1e-6 * factorial(n))
        return {false, "identical n=" + std::to_string(n) + " perm " + fmt(same.perm)};
    }
  }
  return {true, "1350 Grams, min perm " + fmt(lo) + ", max perm/n! " + fmt(hi_ratio)};
}

// n! times the squared norm of the symmetrized product equals the Gram
// permanent.
Outcome symmetrizer_norm_identity() {
  Rng rng(1003);
  double worst = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + t % 6;
    const ProductState<double> phi = rng.random_product(n, 2 + t % 2);
    const double lhs = factorial(n) * symmetrize(phi).norm_squared;
    const double rhs = permanent_ryser(gram_from_factors(phi).entries).real();
    const double dev = std::abs(lhs - rhs);
    worst = std::max(worst, dev);
    if (dev > 1e-9) return {false, "trial " + std::to_string(t) + " dev " + fmt(dev)};
  }
  return {true, "300 products, worst |n! norm^2 - perm| " + fmt(worst)};
}

// Permutation-invariant states are never partially separable, and the fully
// separable ones factor into pairwise-identical parties.
Outcome symmetric_dichotomy() {
  Rng rng(1004);
  int fully_separable = 0;
  double worst_overlap = 1;
  for (int t = 0; t < 500; ++t) {
    const int n = 3 + t % 4;
    PureState<double> psi =
        t % 10 == 0 ? normalized(symmetrize(rng.random_identical_product(n, 2)))
        : t % 2 == 0 ? rng.random_symmetric(n, 2)
                     : normalized(symmetrize(rng.random_product(n, 2)));
    const Classification<double> c = classify(psi);
    if (c.verdict == Verdict::PartiallySeparable)
      return {false, "trial " + std::to_string(t) + " classified PartiallySeparable"};
    if (c.verdict == Verdict::FullySeparable) {
      ++fully_separable;
      const auto& f = c.factors->factors;
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
          const double overlap = std::abs(f[i].dot(f[j]));
          worst_overlap = std::min(worst_overlap, overlap);
          if (overlap < 1.0 - 1e-9)
            return {false, "trial " + std::to_string(t) + " separable with factor overlap " +
                               fmt(overlap)};
        }
    }
  }
  return {true, "500 states, " + std::to_string(fully_separable) +
                    " fully separable, min factor overlap " + fmt(worst_overlap)};
}

// Every antisymmetric basis state and every random Slater determinant has
// Schmidt rank >= 2 across every bipartition.
Outcome antisymmetric_entanglement() {
  Rng rng(1005);
  int states = 0, min_rank = 1 << 20;
  for (int n = 2; n <= 3; ++n) {
    for (Index d = n; d <= n + 2; ++d) {
      std::vector<std::vector<Index>> subsets;
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        if (std::popcount(mask) != n) continue;
        std::vector<Index> idx;
        for (Index b = 0; b < d; ++b)
          if (mask & (1u << b)) idx.push_back(b);
        subsets.push_back(std::move(idx));
      }
      std::vector<PureState<double>> batch;
      for (const auto& idx : subsets) batch.push_back(basis_slater_state<double>(idx, d));
      for (int t = 0; t < 5; ++t)
        batch.push_back(slater_state(ProductState<double>(rng.random_orthonormal(n, d))));
      for (const PureState<double>& psi : batch) {
        ++states;
        const Classification<double> c = classify(psi);
        if (c.verdict != Verdict::GloballyEntangled)
          return {false, "Slater state classified " + verdict_string(c.verdict)};
        for (const auto& ev : c.evidence) {
          min_rank = std::min(min_rank, ev.rank);
          if (ev.rank < 2) return {false, "Slater cut with Schmidt rank " + std::to_string(ev.rank)};
        }
      }
    }
  }
  return {true, std::to_string(states) + " Slater states, min cut rank " +
                    std::to_string(min_rank)};
}

// Translation eigenstates with a nonzero phase are globally entangled.
Outcome cyclic_phase_entanglement() {
  Rng rng(1006);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + t % 3;
    const int k = 1 + t % (n - 1);
    const PureState<double> psi = translation_eigenstate(n, 2 + t % 2, k, rng);
    const Classification<double> c = classify(psi);
    if (c.verdict != Verdict::GloballyEntangled)
      return {false, "trial " + std::to_string(t) + " classified " + verdict_string(c.verdict)};
  }
  return {true, "100 cyclic-phase states, all globally entangled"};
}

// Symmetrizing a product with at least two non-parallel factors yields a
// nonzero, globally entangled state; identical factors stay fully separable.
Outcome symmetrized_product_entanglement() {
  Rng rng(1007);
  double worst_norm_margin = 1e300;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 3;
    ProductState<double> phi = rng.random_product(n, 2 + t % 2);
    while (factors_identical_up_to_phase(phi)) phi = rng.random_product(n, 2 + t % 2);
    const Result2Report<double> r = verify_result2(phi);
    worst_norm_margin =
        std::min(worst_norm_margin, r.norm_squared - (1.0 / factorial(n) - 1e-9));
    if (!r.holds || !r.nonzero || r.classification.verdict != Verdict::GloballyEntangled)
      return {false, "trial " + std::to_string(t) + " verdict " +
                         verdict_string(r.classification.verdict) + ", norm^2 " +
                         fmt(r.norm_squared)};
  }
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + t % 3;
    const Result2Report<double> r = verify_result2(rng.random_identical_product(n, 2 + t % 2));
    if (!r.holds || r.classification.verdict != Verdict::FullySeparable)
      return {false, "identical trial " + std::to_string(t) + " verdict " +
                         verdict_string(r.classification.verdict)};
  }
  return {true, "200 non-parallel + 50 identical products, worst norm margin " +
                    fmt(worst_norm_margin)};
}

// The single-party reduced state of a symmetrized product matches its
// reconstruction from the spectral decomposition of the companion Gram.
Outcome rdm_cross_check() {
  Rng rng(1008);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 4;
    const auto report = rdm_crosscheck(rng.random_product(n, 2 + t % 2));
    worst = std::max(worst, report.max_deviation);
    if (report.max_deviation > 1e-8)
      return {false, "trial " + std::to_string(t) + " max dev " + fmt(report.max_deviation)};
  }
  return {true, "100 products, worst elementwise deviation " + fmt(worst)};
}

// Product-certificate ensembles keep a guaranteed overlap with the symmetric
// subspace: Tr(rho P_sym) >= (min p_i)/n!.
Outcome mixed_nonorthogonality() {
  Rng rng(1009);
  double worst_margin = 1e300;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 3;
    const auto report =
        verify_mixed_nonorthogonality(random_certificate(rng, n, 2 + t % 2, 1 + t % 3));
    worst_margin = std::min(worst_margin, report.overlap - report.floor + 1e-9);
    if (!report.holds)
      return {false, "trial " + std::to_string(t) + " overlap " + fmt(report.overlap) +
                         " below floor " + fmt(report.floor)};
  }
  return {true, "200 ensembles, worst overlap margin " + fmt(worst_margin)};
}

// Symmetrizing a certificate ensemble reproduces the symmetrized density.
Outcome certificate_preservation() {
  Rng rng(1010);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 3;
    const Ensemble<double> e = random_certificate(rng, n, 2 + t % 2, 1 + t % 2);
    const DensityMatrix<double> direct = symmetrize_density(ensemble_to_density(e));
    const DensityMatrix<double> via_cert = ensemble_to_density(symmetrize_certificate(e));
    const double dev = (direct.matrix - via_cert.matrix).cwiseAbs().maxCoeff();
    worst = std::max(worst, dev);
    if (dev > 1e-9) return {false, "trial " + std::to_string(t) + " max dev " + fmt(dev)};
  }
  return {true, "100 certificates, worst reconstruction deviation " + fmt(worst)};
}

// Two identically-seeded CLI verification runs emit byte-identical reports
// once timing lines are removed, and both succeed.
Outcome cli_determinism() {
  auto run = []() -> std::pair<int, std::string> {
    FILE* pipe = popen(SYMSEP_CLI_PATH " verify --suite all --seed 42 2>/dev/null", "r");
    if (pipe == nullptr) return {-1, ""};
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  };
  auto strip = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
      if (line.find("timing_ms") == std::string::npos) out += line + "\n";
    return out;
  };
  const auto [code_a, out_a] = run();
  const auto [code_b, out_b] = run();
  if (code_a != 0 || code_b != 0)
    return {false, "exit codes " + std::to_string(code_a) + ", " + std::to_string(code_b)};
  if (strip(out_a) != strip(out_b)) return {false, "reports differ beyond timing fields"};
  return {true, "two seeded runs byte-identical modulo timing, exit 0"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"permanent-oracle-agreement", ryser_matches_reference},
      {"gram-permanent-bounds", gram_permanent_bounds},
      {"symmetrizer-norm-identity", symmetrizer_norm_identity},
      {"symmetric-dichotomy", symmetric_dichotomy},
      {"antisymmetric-entanglement", antisymmetric_entanglement},
      {"cyclic-phase-entanglement", cyclic_phase_entanglement},
      {"symmetrized-product-entanglement", symmetrized_product_entanglement},
      {"rdm-cross-check", rdm_cross_check},
      {"mixed-nonorthogonality", mixed_nonorthogonality},
      {"certificate-preservation", certificate_preservation},
      {"cli-determinism", cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += outcome.pass ? 0 : 1;
    std::printf("[%s] %02zu %-34s %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str(), secs);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures;
}
