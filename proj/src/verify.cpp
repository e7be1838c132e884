#include "symsep/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "symsep/families.hpp"
#include "symsep/mixed.hpp"
#include "symsep/permanent.hpp"
#include "symsep/random.hpp"
#include "symsep/separability.hpp"
#include "symsep/symmetry.hpp"

namespace symsep::verify {

namespace {

// Deterministic per-property stream: the user seed is mixed with a fixed
// salt so a property draws the same inputs whether run alone or via "all".
Rng property_rng(std::uint64_t seed, std::uint64_t salt) {
  return Rng(seed * 0x9E3779B97F4A7C15ull + salt);
}

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Keeps the minimum margin across trials; a property passes iff no trial
// went negative and nothing threw.
class Recorder {
 public:
  Recorder(std::string suite, std::string name, int trials) {
    r_.suite = std::move(suite);
    r_.name = std::move(name);
    r_.trials = trials;
    r_.worst_margin = std::numeric_limits<double>::infinity();
    r_.pass = trials > 0;
    if (trials <= 0) r_.detail = "no trials";
  }

  void record(double margin, const std::string& note) {
    if (margin < r_.worst_margin) {
      r_.worst_margin = margin;
      r_.detail = note;
    }
    if (!(margin >= 0)) r_.pass = false;
  }

  void fail(const std::string& why) { record(-1.0, why); }

  PropertyResult take() const { return r_; }

 private:
  PropertyResult r_;
};

std::string note(int trial, int n, Index d, const char* key, double value) {
  std::ostringstream oss;
  oss.precision(3);
  oss << std::scientific << "trial " << trial << ": n=" << n;
  if (d > 0) oss << " d=" << d;
  oss << " " << key << "=" << value;
  return oss.str();
}

// Second-to-first singular value ratio, the quantity the Schmidt rank
// decision thresholds against kSchmidtRel.
double cut_ratio(const CutEvidence<double>& ev) {
  if (ev.singular_values.empty() || ev.singular_values[0] <= 0) return 0.0;
  return ev.singular_values.size() > 1 ? ev.singular_values[1] / ev.singular_values[0] : 0.0;
}

double min_cut_ratio(const Classification<double>& c) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& ev : c.evidence) m = std::min(m, cut_ratio(ev));
  return m;
}

double max_cut_ratio(const Classification<double>& c) {
  double m = 0;
  for (const auto& ev : c.evidence) m = std::max(m, cut_ratio(ev));
  return m;
}

// Signed distance of the classification from the rank decision boundary:
// positive when every cut sits cleanly on the side its verdict claims,
// negative (closest boundary distance) for the forbidden mixed outcome.
double dichotomy_margin(const Classification<double>& c) {
  switch (c.verdict) {
    case Verdict::FullySeparable: return tol::kSchmidtRel - max_cut_ratio(c);
    case Verdict::GloballyEntangled: return min_cut_ratio(c) - tol::kSchmidtRel;
    case Verdict::PartiallySeparable: {
      double closest = std::numeric_limits<double>::infinity();
      for (const auto& ev : c.evidence)
        closest = std::min(closest, std::abs(cut_ratio(ev) - tol::kSchmidtRel));
      return -closest;
    }
  }
  return -1;
}

template <class Fn>
void run_trials(Recorder& rec, int trials, Fn&& body) {
  for (int t = 0; t < trials; ++t) {
    try {
      body(t);
    } catch (const Error& e) {
      std::ostringstream oss;
      oss << "trial " << t << ": " << e.what();
      rec.fail(oss.str());
    }
  }
}

Ensemble<double> random_certificate(Rng& rng, int n, Index d, int members) {
  std::vector<double> w(members);
  double total = 0;
  for (double& x : w) {
    x = rng.uniform();
    total += x;
  }
  for (double& x : w) x /= total;
  std::vector<Ensemble<double>::Member> ms;
  ms.reserve(members);
  for (int i = 0; i < members; ++i) ms.emplace_back(rng.random_product(n, d));
  return Ensemble<double>(std::move(w), std::move(ms));
}

// --- permanent suite --------------------------------------------------------

// Margin: 1e-10 minus the relative deviation between the inclusion-
// exclusion permanent and the n!-term reference sum.
PropertyResult ryser_matches_naive(int trials, std::uint64_t seed) {
  Recorder rec("permanent", "ryser_matches_naive", trials);
  Rng rng = property_rng(seed, 0x101);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 6;
    MatrixX<double> m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
    const Complex<double> reference = permanent_naive(m);
    const double err =
        std::abs(permanent_ryser(m) - reference) / std::max(1.0, std::abs(reference));
    rec.record(1e-10 - err, note(t, n, 0, "rel_dev", err));
  });
  return rec.take();
}

// Margin: smallest slack across the lower bound (absolute), the upper
// bound (relative to n!) and both bound booleans of the report.
PropertyResult marcus_bounds_random(int trials, std::uint64_t seed) {
  Recorder rec("permanent", "marcus_bounds_random", trials);
  Rng rng = property_rng(seed, 0x102);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 5;
    const Index d = 2 + t % 3;
    const MarcusReport<double> rep = marcus_bounds_check(gram_from_factors(rng.random_product(n, d)));
    const double nf = factorial(n);
    double margin = std::min(rep.perm - (1.0 - 1e-9), (nf * (1.0 + 1e-6) - rep.perm) / nf);
    if (!rep.lower_ok || !rep.upper_ok) margin = std::min(margin, -1.0);
    rec.record(margin, note(t, n, d, "perm", rep.perm));
  });
  return rec.take();
}

// Margin: 1e-9 minus |Perm - 1| for orthonormal factor sets (the lower
// Marcus equality case).
PropertyResult marcus_equality_orthonormal(int trials, std::uint64_t seed) {
  Recorder rec("permanent", "marcus_equality_orthonormal", trials);
  Rng rng = property_rng(seed, 0x103);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 5;
    const Index d = n + t % 2;
    const ProductState<double> phi(rng.random_orthonormal(n, d));
    const MarcusReport<double> rep = marcus_bounds_check(gram_from_factors(phi));
    rec.record(1e-9 - std::abs(rep.perm - 1.0), note(t, n, d, "perm", rep.perm));
  });
  return rec.take();
}

// Margin: 1e-6 minus |Perm - n!|/n! for identical factors (the upper
// Marcus equality case).
PropertyResult marcus_equality_identical(int trials, std::uint64_t seed) {
  Recorder rec("permanent", "marcus_equality_identical", trials);
  Rng rng = property_rng(seed, 0x104);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 5;
    const Index d = 2 + t % 3;
    const MarcusReport<double> rep =
        marcus_bounds_check(gram_from_factors(rng.random_identical_product(n, d)));
    const double nf = factorial(n);
    rec.record(1e-6 - std::abs(rep.perm - nf) / nf, note(t, n, d, "perm", rep.perm));
  });
  return rec.take();
}

// Margin: 1e-9 minus |n! * <Phi_S|Phi_S> - Perm(Gram)|, tying the
// symmetrizer's norm to the permanent of the factor Gram matrix.
PropertyResult symmetrizer_norm_identity(int trials, std::uint64_t seed) {
  Recorder rec("permanent", "symmetrizer_norm_identity", trials);
  Rng rng = property_rng(seed, 0x105);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 4;
    const Index d = 2 + t % 2;
    const ProductState<double> phi = rng.random_product(n, d);
    const double lhs = factorial(n) * symmetrize(phi).norm_squared;
    const Complex<double> perm = permanent_ryser(gram_from_factors(phi).entries);
    const double err = std::abs(lhs - perm);
    rec.record(1e-9 - err, note(t, n, d, "abs_dev", err));
  });
  return rec.take();
}

// --- result1 suite ----------------------------------------------------------

// Margin: signed distance of every cut's singular-value ratio from the
// rank decision boundary; negative exactly when a symmetric state came out
// PartiallySeparable or a separable one had non-identical factors.
PropertyResult symmetric_dichotomy(int trials, std::uint64_t seed) {
  Recorder rec("result1", "symmetric_dichotomy", trials);
  Rng rng = property_rng(seed, 0x201);
  run_trials(rec, trials, [&](int t) {
    const int n = 3 + t % 3;
    const Index d = (n == 3 && t % 2 == 0) ? 3 : 2;
    const Result1Report<double> rep = verify_result1(rng.random_symmetric(n, d));
    double margin = dichotomy_margin(rep.detail);
    if (!rep.holds) margin = std::min(margin, -1.0);
    rec.record(margin, note(t, n, d, "boundary_dist", margin));
  });
  return rec.take();
}

// Margin: smallest cut ratio minus the rank boundary; translation
// eigenstates with a nontrivial phase must be entangled across every cut.
PropertyResult translation_entangled(int trials, std::uint64_t seed) {
  Recorder rec("result1", "translation_entangled", trials);
  Rng rng = property_rng(seed, 0x202);
  run_trials(rec, trials, [&](int t) {
    const int n = 3 + t % 3;
    const Index d = 2 + t % 2;
    const int k = 1 + t % (n - 1);
    const PureState<double> psi = translation_eigenstate(n, d, k, rng);
    const Result1Report<double> rep = verify_result1(psi);
    double margin = min_cut_ratio(rep.detail) - tol::kSchmidtRel;
    if (!rep.holds || rep.detail.verdict != Verdict::GloballyEntangled)
      margin = std::min(margin, -1.0);
    rec.record(margin, note(t, n, d, "min_ratio", min_cut_ratio(rep.detail)));
  });
  return rec.take();
}

// Margin: smallest cut ratio minus the rank boundary on random Slater
// states; antisymmetry must force rank >= 2 on every bipartition.
PropertyResult antisymmetric_entangled(int trials, std::uint64_t seed) {
  Recorder rec("result1", "antisymmetric_entangled", trials);
  Rng rng = property_rng(seed, 0x203);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 2;
    const Index d = n + t % 3;
    const PureState<double> psi = slater_state(ProductState<double>(rng.random_orthonormal(n, d)));
    double margin = is_antisymmetric(psi) ? 0.0 : -1.0;
    const Classification<double> c = classify(psi);
    margin = margin < 0 ? margin : min_cut_ratio(c) - tol::kSchmidtRel;
    if (c.verdict != Verdict::GloballyEntangled) margin = std::min(margin, -1.0);
    rec.record(margin, note(t, n, d, "min_ratio", min_cut_ratio(c)));
  });
  return rec.take();
}

// --- result2 suite ----------------------------------------------------------

// Margin: min of (norm_squared slack above the 1/n! floor) and (smallest
// cut ratio minus the rank boundary); both must stay positive for
// symmetrized non-identical products.
PropertyResult nonparallel_product_entangled(int trials, std::uint64_t seed) {
  Recorder rec("result2", "nonparallel_product_entangled", trials);
  Rng rng = property_rng(seed, 0x301);
  run_trials(rec, trials, [&](int t) {
    const int n = 3 + t % 3;
    const Index d = 2 + t % 2;
    ProductState<double> phi = rng.random_product(n, d);
    while (factors_identical_up_to_phase(phi)) phi = rng.random_product(n, d);
    const Result2Report<double> rep = verify_result2(phi);
    double margin = std::min(rep.norm_squared - (1.0 / factorial(n) - 1e-9),
                             min_cut_ratio(rep.classification) - tol::kSchmidtRel);
    if (!rep.holds || !rep.nonzero ||
        rep.classification.verdict != Verdict::GloballyEntangled)
      margin = std::min(margin, -1.0);
    rec.record(margin, note(t, n, d, "norm_sq", rep.norm_squared));
  });
  return rec.take();
}

// Margin: rank boundary minus the largest cut ratio; identical-factor
// products must symmetrize to themselves and stay fully separable.
PropertyResult identical_product_separable(int trials, std::uint64_t seed) {
  Recorder rec("result2", "identical_product_separable", trials);
  Rng rng = property_rng(seed, 0x302);
  run_trials(rec, trials, [&](int t) {
    const int n = 3 + t % 3;
    const Index d = 2 + t % 2;
    const Result2Report<double> rep = verify_result2(rng.random_identical_product(n, d));
    double margin = tol::kSchmidtRel - max_cut_ratio(rep.classification);
    if (!rep.holds || !rep.factors_identical ||
        rep.classification.verdict != Verdict::FullySeparable)
      margin = std::min(margin, -1.0);
    rec.record(margin, note(t, n, d, "max_ratio", max_cut_ratio(rep.classification)));
  });
  return rec.take();
}

// Margin: 1e-8 minus the elementwise deviation between the direct partial
// trace of |Phi_S><Phi_S| and its Gram-spectral reconstruction.
PropertyResult rdm_crosscheck_agrees(int trials, std::uint64_t seed) {
  Recorder rec("result2", "rdm_crosscheck_agrees", trials);
  Rng rng = property_rng(seed, 0x303);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 3;
    const Index d = 2 + t % 2;
    const CrossCheckReport<double> rep = rdm_crosscheck(rng.random_product(n, d));
    rec.record(1e-8 - rep.max_deviation, note(t, n, d, "max_dev", rep.max_deviation));
  });
  return rec.take();
}

// --- mixed suite ------------------------------------------------------------

// Margin: Tr(rho P_sym) minus its theoretical floor (min_i p_i)/n! less
// the 1e-9 slack; certificate ensembles can never be orthogonal to the
// symmetric subspace.
PropertyResult nonorthogonality_floor(int trials, std::uint64_t seed) {
  Recorder rec("mixed", "nonorthogonality_floor", trials);
  Rng rng = property_rng(seed, 0x401);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 3;
    const Index d = 2 + t % 2;
    const Ensemble<double> e = random_certificate(rng, n, d, 1 + t % 4);
    const NonorthogonalityReport<double> rep = verify_mixed_nonorthogonality(e);
    double margin = rep.overlap - (rep.floor - 1e-9);
    if (!rep.holds) margin = std::min(margin, -1.0);
    rec.record(margin, note(t, n, d, "overlap", rep.overlap));
  });
  return rec.take();
}

// Margin: 1e-8 minus the gap between Tr(rho P_sym) computed through the
// projector and through the per-member symmetrizer norms.
PropertyResult support_overlap_consistency(int trials, std::uint64_t seed) {
  Recorder rec("mixed", "support_overlap_consistency", trials);
  Rng rng = property_rng(seed, 0x402);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 3;
    const Index d = 2 + t % 2;
    const Ensemble<double> e = random_certificate(rng, n, d, 1 + t % 4);
    const double via_projector = symmetric_support_check(ensemble_to_density(e)).overlap;
    const double via_symmetrizer = verify_mixed_nonorthogonality(e).overlap;
    const double err = std::abs(via_projector - via_symmetrizer);
    rec.record(1e-8 - err, note(t, n, d, "abs_dev", err));
  });
  return rec.take();
}

// Margin: 1e-9 minus the elementwise deviation between symmetrizing the
// density matrix and rebuilding it from the symmetrized certificate.
PropertyResult certificate_preservation(int trials, std::uint64_t seed) {
  Recorder rec("mixed", "certificate_preservation", trials);
  Rng rng = property_rng(seed, 0x403);
  run_trials(rec, trials, [&](int t) {
    const int n = 2 + t % 3;
    const Index d = 2 + t % 2;
    const Ensemble<double> e = random_certificate(rng, n, d, 1 + t % 4);
    const DensityMatrix<double> direct = symmetrize_density(ensemble_to_density(e));
    const Ensemble<double> cert = symmetrize_certificate(e);
    if (!cert.is_product_certificate()) {
      rec.fail("symmetrized certificate lost product form");
      return;
    }
    const double dev =
        (direct.matrix - ensemble_to_density(cert).matrix).cwiseAbs().maxCoeff();
    rec.record(1e-9 - dev, note(t, n, d, "max_dev", dev));
  });
  return rec.take();
}

void run_permanent(std::vector<PropertyResult>& out, int trials, std::uint64_t seed) {
  out.push_back(ryser_matches_naive(trials, seed));
  out.push_back(marcus_bounds_random(trials, seed));
  out.push_back(marcus_equality_orthonormal(trials, seed));
  out.push_back(marcus_equality_identical(trials, seed));
  out.push_back(symmetrizer_norm_identity(trials, seed));
}

void run_result1(std::vector<PropertyResult>& out, int trials, std::uint64_t seed) {
  out.push_back(symmetric_dichotomy(trials, seed));
  out.push_back(translation_entangled(trials, seed));
  out.push_back(antisymmetric_entangled(trials, seed));
}

void run_result2(std::vector<PropertyResult>& out, int trials, std::uint64_t seed) {
  out.push_back(nonparallel_product_entangled(trials, seed));
  out.push_back(identical_product_separable(trials, seed));
  out.push_back(rdm_crosscheck_agrees(trials, seed));
}

void run_mixed(std::vector<PropertyResult>& out, int trials, std::uint64_t seed) {
  out.push_back(nonorthogonality_floor(trials, seed));
  out.push_back(support_overlap_consistency(trials, seed));
  out.push_back(certificate_preservation(trials, seed));
}

}  // namespace

std::vector<PropertyResult> run_suite(const std::string& suite, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("trials must be >= 1");
  std::vector<PropertyResult> out;
  if (suite == "permanent") {
    run_permanent(out, trials, seed);
  } else if (suite == "result1") {
    run_result1(out, trials, seed);
  } else if (suite == "result2") {
    run_result2(out, trials, seed);
  } else if (suite == "mixed") {
    run_mixed(out, trials, seed);
  } else if (suite == "all") {
    run_permanent(out, trials, seed);
    run_result1(out, trials, seed);
    run_result2(out, trials, seed);
    run_mixed(out, trials, seed);
  } else {
    throw InvalidInput("unknown suite: " + suite);
  }
  return out;
}

bool all_pass(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace symsep::verify
