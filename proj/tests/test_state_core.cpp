// State construction, tensor products, index conventions, partial trace
// and party permutations, each checked against hand-expanded values.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symsep/random.hpp"
#include "symsep/state.hpp"

using namespace symsep;
using C = std::complex<double>;

namespace {

VectorX<double> vec(std::initializer_list<C> xs) {
  VectorX<double> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const C& x : xs) v[i++] = x;
  return v;
}

const VectorX<double> e0 = vec({1, 0});
const VectorX<double> e1 = vec({0, 1});

}  // namespace

TEST_CASE("kron puts party 1 in the slowest index position") {
  // (a0|0> + a1|1>) x (b0|0> + b1|1>) -> [a0b0, a0b1, a1b0, a1b1]
  const VectorX<double> a = vec({2, 3});
  const VectorX<double> b = vec({5, 7});
  const VectorX<double> k = kron<double>({a, b});
  REQUIRE(k.size() == 4);
  CHECK(k[0] == C(10));  // |00>
  CHECK(k[1] == C(14));  // |01>
  CHECK(k[2] == C(15));  // |10>
  CHECK(k[3] == C(21));  // |11>
}

TEST_CASE("tensor_product carries dims in party order") {
  const ProductState<double> phi({e0, vec({0, 0, 1})});
  const PureState<double> psi = tensor_product(phi);
  CHECK(psi.dims == Dims{2, 3});
  CHECK(psi.amplitudes[2] == C(1));  // |0>|2> sits at 0*3 + 2
}

TEST_CASE("pure state validation") {
  CHECK_THROWS_AS(PureState<double>({2, 2}, vec({1, 0})), InvalidInput);
  CHECK_THROWS_AS(PureState<double>({}, vec({1})), InvalidInput);
  CHECK_THROWS_AS(PureState<double>({2, 1}, vec({1, 0})), InvalidInput);
  CHECK_THROWS_AS(PureState<double>::normalized({2}, vec({0, 0})), InvalidInput);
  CHECK_THROWS_AS(PureState<double>::normalized({2}, vec({1, 1})), InvalidInput);
  CHECK(PureState<double>::normalized({2}, vec({0, 1})).is_normalized());
}

TEST_CASE("product state factors must be unit norm") {
  CHECK_THROWS_AS(ProductState<double>({vec({1, 1})}), InvalidInput);
  CHECK_THROWS_AS(ProductState<double>(std::vector<VectorX<double>>{}), InvalidInput);
  const ProductState<double> phi({e0, e1});
  CHECK(phi.parties() == 2);
  CHECK(phi.dims() == Dims{2, 2});
}

TEST_CASE("inner product conjugates the first argument") {
  const double s = 1.0 / std::sqrt(2.0);
  const PureState<double> a({2}, vec({s, C(0, s)}));
  const PureState<double> b({2}, vec({0, 1}));
  CHECK(std::abs(inner_product(a, b) - C(0, -s)) < 1e-15);
  CHECK_THROWS_AS(inner_product(a, PureState<double>({3}, vec({1, 0, 0}))), InvalidInput);
}

TEST_CASE("party swap maps |01> to |10>") {
  PureState<double> psi({2, 2}, vec({0, 1, 0, 0}));
  const PureState<double> out = apply_party_permutation(psi, {1, 0});
  CHECK(out.amplitudes[2] == C(1));
  CHECK(out.amplitudes[1] == C(0));
}

TEST_CASE("cyclic permutation 1->2->3->1 maps |001> to |100>") {
  // sigma[i] is the destination of party i's content
  PureState<double> psi({2, 2, 2}, vec({0, 1, 0, 0, 0, 0, 0, 0}));
  const PureState<double> out = apply_party_permutation(psi, {1, 2, 0});
  CHECK(out.amplitudes[4] == C(1));  // |100>
  CHECK(out.amplitudes.cwiseAbs().sum() == 1.0);
}

TEST_CASE("party permutations preserve norm and compose") {
  Rng rng(7);
  const PureState<double> psi = rng.random_state({2, 2, 2});
  const Permutation sigma{2, 0, 1};
  const PureState<double> once = apply_party_permutation(psi, sigma);
  CHECK(once.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  // applying a 3-cycle three times is the identity
  const PureState<double> thrice =
      apply_party_permutation(apply_party_permutation(once, sigma), sigma);
  CHECK((thrice.amplitudes - psi.amplitudes).norm() < 1e-15);
  CHECK_THROWS_AS(apply_party_permutation(psi, {0, 0, 1}), InvalidInput);
  CHECK_THROWS_AS(apply_party_permutation(psi, {0, 1}), InvalidInput);
}

TEST_CASE("permutation_basis_map agrees with apply_party_permutation") {
  Rng rng(11);
  const PureState<double> psi = rng.random_state({2, 2, 2});
  const Permutation sigma{1, 2, 0};
  const std::vector<Index> image = permutation_basis_map(psi.dims, sigma);
  const PureState<double> direct = apply_party_permutation(psi, sigma);
  VectorX<double> mapped = VectorX<double>::Zero(psi.dim());
  for (Index q = 0; q < psi.dim(); ++q) mapped[image[q]] = psi.amplitudes[q];
  CHECK((mapped - direct.amplitudes).norm() < 1e-15);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  const double s = 1.0 / std::sqrt(2.0);
  const auto bell = PureState<double>::normalized({2, 2}, vec({s, 0, 0, s}));
  const DensityMatrix<double> rho = DensityMatrix<double>::pure(bell);
  const DensityMatrix<double> reduced = partial_trace(rho, {0});
  CHECK((reduced.matrix - MatrixX<double>::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace matches a direct index-sum oracle") {
  Rng rng(23);
  const PureState<double> psi = rng.random_state({2, 3, 2});
  const MatrixX<double> full = psi.amplitudes * psi.amplitudes.adjoint();
  const MatrixX<double> traced = partial_trace_matrix(psi.dims, full, {1});

  // oracle: rho_B(q, q') = sum_{p, r} <p q r| rho |p q' r>
  MatrixX<double> oracle = MatrixX<double>::Zero(3, 3);
  for (Index p = 0; p < 2; ++p)
    for (Index r = 0; r < 2; ++r)
      for (Index q = 0; q < 3; ++q)
        for (Index q2 = 0; q2 < 3; ++q2)
          oracle(q, q2) += full((p * 3 + q) * 2 + r, (p * 3 + q2) * 2 + r);
  CHECK((traced - oracle).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace keeps party order and validates the keep set") {
  const PureState<double> psi({2, 2}, vec({0, 1, 0, 0}));  // |01>
  const DensityMatrix<double> rho = DensityMatrix<double>::pure(psi);
  const DensityMatrix<double> kept = partial_trace(rho, {1});
  CHECK(kept.matrix(1, 1).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(partial_trace(rho, {}), InvalidInput);
  CHECK_THROWS_AS(partial_trace(rho, {0, 0}), InvalidInput);
  CHECK_THROWS_AS(partial_trace(rho, {2}), InvalidInput);
}

TEST_CASE("density matrix validation") {
  MatrixX<double> m(2, 2);
  m << C(0.5), C(0, 0.3), C(0, 0.3), C(0.5);  // not Hermitian (equal off-diagonals)
  CHECK_THROWS_AS(DensityMatrix<double>({2}, m), InvalidInput);

  m << C(0.9), C(0), C(0), C(0.9);  // trace != 1
  CHECK_THROWS_AS(DensityMatrix<double>({2}, m), InvalidInput);

  m << C(1.5), C(0), C(0), C(-0.5);  // negative eigenvalue
  CHECK_THROWS_AS(DensityMatrix<double>::checked({2}, m), InvalidInput);
  CHECK_NOTHROW(DensityMatrix<double>({2}, m));  // structural ctor trusts PSD
}

TEST_CASE("spectral decomposition reconstructs and sorts descending") {
  Rng rng(31);
  const VectorX<double> v = rng.haar_vector(4);
  const VectorX<double> w = rng.haar_vector(4);
  MatrixX<double> h = 0.7 * (v * v.adjoint()) + 0.3 * (w * w.adjoint());
  h = ((h + h.adjoint()) / 2.0).eval();

  const SpectralDecomposition<double> sd = spectral_decompose(h);
  CHECK((sd.reconstruct() - h).cwiseAbs().maxCoeff() < 1e-12);
  for (Index k = 0; k + 1 < sd.eigenvalues.size(); ++k)
    CHECK(sd.eigenvalues[k] >= sd.eigenvalues[k + 1]);
  CHECK(sd.eigenvalues.minCoeff() >= 0.0);  // floor-clipped
  CHECK_THROWS_AS(spectral_decompose(MatrixX<double>(MatrixX<double>::Ones(2, 3))), InvalidInput);
}

TEST_CASE("fix_phase rotates the dominant entry real positive") {
  const VectorX<double> v = vec({C(0, 0.8), C(0.1, 0)});
  const VectorX<double> fixed = fix_phase(v);
  CHECK(fixed[0].real() == doctest::Approx(0.8));
  CHECK(std::abs(fixed[0].imag()) < 1e-15);
}

TEST_CASE("identical_up_to_phase ignores a global phase only") {
  const VectorX<double> a = vec({1, 0});
  CHECK(identical_up_to_phase(a, VectorX<double>(a * C(0, 1))));
  CHECK(!identical_up_to_phase<double>(a, e1));
}
