#include <cmath>
#include <stdexcept>

#include "catalytic/catalyst.hpp"
#include "catalytic/eigen.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace catalytic;

namespace {

// (1/(n-1)) sum_{r=lo}^{hi} rho^r (x) sigma^(n-r), built by explicit Kronecker products.
CMatrix catalyst_oracle(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n, std::size_t lo,
                        std::size_t hi) {
  CMatrix sum;
  for (std::size_t r = lo; r <= hi; ++r) {
    std::vector<CMatrix> factors;
    for (std::size_t i = 0; i < n; ++i) factors.push_back(i < r ? rho.entries() : sigma.entries());
    CMatrix term = oracle::kron_chain(factors);
    if (sum.side() == 0)
      sum = term;
    else
      sum += term;
  }
  sum *= complex(1.0 / static_cast<double>(n - 1));
  return sum;
}

DensityMatrix diag_state(std::vector<double> p) {
  const std::size_t d = p.size();
  return DensityMatrix::from_diagonal({d}, p);
}

}  // namespace

TEST_CASE("catalyst words") {
  const auto rho = DensityMatrix::basis_state(2, 0);
  const auto sigma = DensityMatrix::maximally_mixed(2);
  const auto g = build_catalyst(rho, sigma, 4);
  REQUIRE(g.terms().size() == 3);
  CHECK(g.word_length() == 4);
  CHECK(g.terms()[0].word == Word{kRho, kSigma, kSigma, kSigma});
  CHECK(g.terms()[2].word == Word{kRho, kRho, kRho, kSigma});
  CHECK(g.is_state());
  CHECK(catalyst_order(g) == 4);

  const auto gs = shift_catalyst(g);
  CHECK(gs.terms()[0].word == Word{kRho, kRho, kSigma, kSigma});
  CHECK(gs.terms()[2].word == Word{kRho, kRho, kRho, kRho});
  CHECK_THROWS(catalyst_order(gs));

  CHECK_THROWS_AS(build_catalyst(rho, sigma, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_catalyst(rho, DensityMatrix::maximally_mixed(3), 3), std::invalid_argument);
}

TEST_CASE("densified catalysts match explicit Kronecker sums") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto rho = sample_random_state(2, 2, 100 + n);
    const auto sigma = sample_random_state(2, 1, 200 + n);
    const auto g = build_catalyst(rho, sigma, n);
    CHECK(max_abs_difference(densify(g), catalyst_oracle(rho, sigma, n, 1, n - 1)) < 1e-15);
    CHECK(max_abs_difference(densify(shift_catalyst(g)), catalyst_oracle(rho, sigma, n, 2, n)) < 1e-15);
    CHECK(validate(densify_state(g)).ok());
  }
}

TEST_CASE("difference telescopes to two words") {
  const auto rho = sample_random_state(3, 3, 1);
  const auto sigma = sample_random_state(3, 2, 2);
  const std::size_t n = 4;
  const auto g = build_catalyst(rho, sigma, n);
  const auto diff = catalyst_difference(g, shift_catalyst(g));
  CHECK(diff.terms().size() == 2);
  CHECK(diff.total_weight() == doctest::Approx(0.0).epsilon(1e-15));

  const CMatrix want = (1.0 / 3.0) * (oracle::kron_chain({rho.entries(), sigma.entries(), sigma.entries(),
                                                          sigma.entries()}) -
                                      oracle::kron_chain({rho.entries(), rho.entries(), rho.entries(), rho.entries()}));
  CHECK(max_abs_difference(densify(diff), want) < 1e-15);
  CHECK(max_abs_difference(densify(g) - densify(shift_catalyst(g)), want) < 1e-15);

  CHECK_THROWS(catalyst_difference(g, g));
}

TEST_CASE("desk-scale catalyst error is three quarters") {
  const auto rho = DensityMatrix::basis_state(2, 0);
  const auto sigma = DensityMatrix::maximally_mixed(2);
  // (1/2) |0><0| (x) (I/4 - |00><00|): eigenvalues 1/8 (x3) and -3/8
  const double want = 0.75;
  CHECK(std::abs(catalyst_trace_distance(rho, sigma, 3, DistanceMethod::dense) - want) < 1e-12);
  CHECK(std::abs(catalyst_trace_distance(rho, sigma, 3, DistanceMethod::typeclass) - want) < 1e-12);
  const auto g = build_catalyst(rho, sigma, 3);
  CHECK(std::abs(catalyst_trace_distance(g, shift_catalyst(g)) - want) < 1e-12);
}

TEST_CASE("pure0 against mixed has a closed form") {
  // ||rho (x) sigma^(m) - rho^(m+1)||_1 = 2 (1 - 2^-m) for m = n-1
  const auto rho = DensityMatrix::basis_state(2, 0);
  const auto sigma = DensityMatrix::maximally_mixed(2);
  for (const std::size_t n : {2u, 5u, 17u, 1000u, 100000u}) {
    const double m = static_cast<double>(n - 1);
    const double want = 2.0 * (1.0 - std::pow(2.0, -m)) / m;
    CHECK(catalyst_trace_distance(rho, sigma, n) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("typeclass and dense agree on commuting pairs") {
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs{
      {{1.0, 0.0}, {0.5, 0.5}}, {{0.9, 0.1}, {0.2, 0.8}}, {{0.5, 0.3, 0.2}, {0.1, 0.1, 0.8}}, {{1, 0, 0}, {0, 0, 1}}};
  for (const auto& [p, q] : pairs)
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto rho = diag_state(p);
      const auto sigma = diag_state(q);
      const double dense = catalyst_trace_distance(rho, sigma, n, DistanceMethod::dense);
      const double tc = catalyst_trace_distance(rho, sigma, n, DistanceMethod::typeclass);
      CHECK(std::abs(dense - tc) < 1e-12);
    }

  // commuting but not diagonal: rotate both by the same unitary
  CMatrix u(2);
  const double c = std::cos(0.3), s = std::sin(0.3);
  u(0, 0) = c;
  u(0, 1) = complex(0, s);
  u(1, 0) = complex(0, s);
  u(1, 1) = c;
  const std::vector<double> p{0.8, 0.2}, q{0.35, 0.65};
  const DensityMatrix rho({2}, oracle::conjugate(u, CMatrix::diagonal(p)));
  const DensityMatrix sigma({2}, oracle::conjugate(u, CMatrix::diagonal(q)));
  CHECK(commutator_norm(rho, sigma) < 1e-12);
  const auto spec = joint_diagonalize(rho, sigma);
  REQUIRE(spec.has_value());
  for (std::size_t n = 2; n <= 7; ++n)
    CHECK(std::abs(catalyst_trace_distance(rho, sigma, n, DistanceMethod::dense) -
                   catalyst_trace_distance(rho, sigma, n, DistanceMethod::typeclass)) < 1e-10);
}

TEST_CASE("non-commuting pairs refuse the typeclass route") {
  const auto rho = sample_random_state(2, 2, 1);
  const auto sigma = sample_random_state(2, 2, 2);
  CHECK(commutator_norm(rho, sigma) > 1e-3);
  CHECK_FALSE(joint_diagonalize(rho, sigma).has_value());
  CHECK_THROWS_AS(catalyst_trace_distance(rho, sigma, 3, DistanceMethod::typeclass), std::invalid_argument);
  CHECK(catalyst_trace_distance(rho, sigma, 3) == catalyst_trace_distance(rho, sigma, 3, DistanceMethod::dense));
  CHECK_THROWS_AS(catalyst_trace_distance(rho, sigma, 20), std::invalid_argument);
}

TEST_CASE("protocol identity and bound on random pairs") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t d = 2 + seed % 2;
    const std::size_t n = 2 + seed % 4;
    const auto rho = sample_random_state(d, 1 + seed % d, 10 * seed + 1);
    const auto sigma = sample_random_state(d, d, 10 * seed + 2);
    const auto res = apply_protocol(rho, sigma, n);
    CHECK(res.structural_match);
    CHECK(res.dense_checked);
    CHECK(res.exactness_residual <= 1e-10);
    CHECK(res.achieved_error <= res.bound + 1e-9);
    CHECK(res.ok());

    // the same rotation as an explicit unitary
    const CMatrix in = densify(res.input);
    const Shape shape(n + 1, d);
    std::vector<std::size_t> image(n + 1);
    for (std::size_t i = 0; i <= n; ++i) image[i] = (i + 1) % (n + 1);
    const CMatrix out = oracle::conjugate(oracle::permutation_unitary(shape, image), in);
    const CMatrix want = oracle::kron(sigma.entries(), catalyst_oracle(rho, sigma, n, 2, n));
    CHECK(max_abs_difference(out, want) < 1e-14);
  }
}

TEST_CASE("protocol edge cases") {
  const auto rho = DensityMatrix::basis_state(2, 0);
  const auto res = apply_protocol(rho, rho, 5);
  CHECK(res.achieved_error == doctest::Approx(0.0));
  CHECK(res.ok());
  CHECK_THROWS_AS(apply_protocol(rho, rho, 1), std::invalid_argument);
  CHECK_THROWS_AS(apply_protocol(rho, rho, kMaxWordLevelN + 1), std::invalid_argument);

  // word-level check past the dense cap
  const auto big = apply_protocol(rho, DensityMatrix::maximally_mixed(2), 40);
  CHECK_FALSE(big.dense_checked);
  CHECK(big.structural_match);
  CHECK(big.ok());
}

TEST_CASE("per-party cycles") {
  const Partition part = Partition::bipartite({2, 2});
  const auto cyc = per_party_cycle(part, 3);
  // every register is cycled, so the composition is the copy rotation
  CHECK(cyc == copy_rotation(2, 3));

  const Partition one_sided({2, 2}, {0, 0}, 2);
  const auto p = per_party_cycle(one_sided, 2);
  CHECK(p == Permutation({2, 3, 0, 1}));

  const auto rho = sample_random_state(Shape{2, 2}, 4, 1);
  const auto sigma = sample_random_state(Shape{2, 2}, 2, 2);
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto g = build_catalyst(rho, sigma, n);
    const auto out = per_party_cyclic_shift(densify_state(prepend(kRho, g)), part, n + 1);
    CHECK(trace_norm(out.entries() - densify(prepend(kSigma, shift_catalyst(g)))) <= 1e-10);
  }
  CHECK_THROWS(per_party_cyclic_shift(rho, part, 2));
}
