// Randomized checks of the structural invariants over seeded sweeps.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "catalytic/catalyst.hpp"
#include "catalytic/continuity.hpp"
#include "catalytic/eigen.hpp"
#include "catalytic/measures.hpp"
#include "doctest.h"

using namespace catalytic;

namespace {

Permutation random_permutation(std::size_t k, std::mt19937_64& gen) {
  std::vector<std::size_t> image(k);
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), gen);
  return Permutation(image);
}

Shape random_shape(std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> regs(1, 3), dim(2, 3);
  Shape s(regs(gen));
  for (auto& d : s) d = dim(gen);
  return s;
}

}  // namespace

TEST_CASE("trace distance is symmetric and obeys the triangle inequality") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t d = 2 + seed % 4;
    const auto a = sample_random_state(d, 1 + seed % d, 3 * seed);
    const auto b = sample_random_state(d, d, 3 * seed + 1);
    const auto c = sample_random_state(d, 1, 3 * seed + 2);
    const double ab = trace_distance(a, b).one_norm;
    CHECK(std::abs(ab - trace_distance(b, a).one_norm) <= 1e-9);
    CHECK(trace_distance(a, c).one_norm <= ab + trace_distance(b, c).one_norm + 1e-9);
  }
}

TEST_CASE("entropy is additive and permutation invariant; trace norm is permutation invariant") {
  std::mt19937_64 gen(99);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Shape sa = random_shape(gen), sb = random_shape(gen);
    if (shape_dimension(sa) * shape_dimension(sb) > 200) continue;
    const auto a = sample_random_state(sa, 1 + seed % shape_dimension(sa), 2 * seed);
    const auto b = sample_random_state(sb, shape_dimension(sb), 2 * seed + 1);
    const auto ab = tensor(a, b);
    CHECK(std::abs(entropy(ab) - entropy(a) - entropy(b)) <= 1e-8);

    const auto p = random_permutation(ab.registers(), gen);
    const auto moved = permute_registers(ab, p);
    CHECK(std::abs(entropy(moved) - entropy(ab)) <= 1e-9);
    CHECK(permute_registers(moved, p.inverse()) == ab);

    const CMatrix diff = ab.entries() - tensor(b, a).reshaped(ab.shape()).entries();
    const DensityMatrix diff_state(ab.shape(), diff);
    CHECK(std::abs(trace_norm(permute_registers(diff_state, p).entries()) - trace_norm(diff)) <= 1e-9);
  }
}

TEST_CASE("permutations compose as a group action") {
  std::mt19937_64 gen(5);
  const Shape shape{2, 3, 2, 2};
  const auto m = sample_random_state(shape, 7, 1);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_permutation(4, gen);
    const auto q = random_permutation(4, gen);
    CHECK(permute_registers(permute_registers(m, p), q) == permute_registers(m, p.then(q)));
  }
}

TEST_CASE("qubit entropy obeys the Audenaert-Fannes bound") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto mu = sample_random_state(2, 1 + seed % 2, 2 * seed);
    const auto nu = sample_random_state(2, 1 + (seed / 2) % 2, 2 * seed + 1);
    const double t = trace_distance(mu, nu).half;
    CHECK(std::abs(entropy(mu) - entropy(nu)) <= binary_entropy(t) + 1e-8);
  }
}

TEST_CASE("catalyst error decreases along doubling n") {
  const auto rho = DensityMatrix::basis_state(2, 0);
  const auto sigma = DensityMatrix::maximally_mixed(2);
  for (std::size_t k = 4; k <= 65536; k *= 2) {
    const double a = catalyst_trace_distance(rho, sigma, k);
    const double b = catalyst_trace_distance(rho, sigma, 2 * k);
    CHECK(b < a + 1e-12);
    CHECK(a <= 2.0 / static_cast<double>(k - 1) + 1e-9);
  }
}

TEST_CASE("catalyst bound on non-commuting random pairs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t d = 2 + seed % 2;
    const std::size_t n = 2 + seed % 5;
    if (std::pow(static_cast<double>(d), static_cast<double>(n)) > kDefaultDenseCap) continue;
    const auto rho = sample_random_state(d, 1 + seed % d, 7 * seed);
    const auto sigma = sample_random_state(d, 1 + (seed / 2) % d, 7 * seed + 3);
    CHECK(catalyst_trace_distance(rho, sigma, n) <= 2.0 / static_cast<double>(n - 1) + 1e-9);
  }
}

TEST_CASE("word mixture operations preserve total weight") {
  const auto rho = sample_random_state(2, 2, 1);
  const auto sigma = sample_random_state(2, 1, 2);
  std::mt19937_64 gen(3);
  for (std::size_t n = 2; n <= 9; ++n) {
    const auto g = build_catalyst(rho, sigma, n);
    const auto gs = shift_catalyst(g);
    CHECK(g.total_weight() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gs.total_weight() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prepend(kSigma, g).total_weight() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(permute_words(g, random_permutation(n, gen)).total_weight() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(canonicalized(g).is_state());
    CHECK(std::abs(catalyst_difference(g, gs).total_weight()) <= 1e-15);
  }
}

TEST_CASE("word-level permutation matches dense permutation") {
  std::mt19937_64 gen(8);
  const auto rho = sample_random_state(2, 2, 4);
  const auto sigma = sample_random_state(2, 2, 5);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto g = build_catalyst(rho, sigma, n);
    const auto p = random_permutation(n, gen);
    const auto dense = permute_registers(densify_state(g), p);
    CHECK(max_abs_difference(dense.entries(), densify(permute_words(g, p))) <= 1e-15);
  }
}

TEST_CASE("entropy of catalyst states: additivity shortcut matches dense") {
  const auto s = *find_measure("entropy");
  const auto rho = DensityMatrix::basis_state(2, 0);
  const auto sigma = DensityMatrix::maximally_mixed(2);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto g = build_catalyst(rho, sigma, n);
    const double f_gamma = s.evaluate(densify_state(g));
    const double lhs = s.evaluate(densify_state(prepend(kSigma, g)));
    CHECK(std::abs(lhs - (s.evaluate(sigma) + f_gamma)) <= 1e-8);
    const double rhs = s.evaluate(densify_state(prepend(kRho, g)));
    CHECK(std::abs(rhs - (s.evaluate(rho) + f_gamma)) <= 1e-8);
  }
}

TEST_CASE("builtin measures are non-negative on sampled states") {
  for (const auto& f : builtin_measures())
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Shape shape{2, 2};
      const auto m = sample_random_state(shape, 1 + seed % 4, seed);
      CHECK(f.evaluate({m, Partition::bipartite(shape)}) >= 0.0);
    }
}

TEST_CASE("broken measure fails exactly the claims it lacks") {
  for (const auto& f : builtin_measures()) {
    const auto a = audit_hypotheses(f, 11);
    CHECK(a.additivity.pass() == f.claims.additive);
    CHECK(a.permutation_invariance.pass());
    CHECK(a.witness.has_value());
  }
}

TEST_CASE("demo rows satisfy their invariants for several K and pairs") {
  const auto s = *find_measure("entropy");
  const std::vector<std::size_t> ns{2, 3, 5, 9, 40, 300, 4096};
  for (const double K : {0.5, 1.0, 3.0})
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const std::vector<double> p{0.9 - 0.2 * seed, 0.1 + 0.2 * seed};
      const std::vector<double> q{0.2, 0.8};
      DemoOptions opts;
      opts.K = K;
      const auto table =
          theorem_demo(DensityMatrix::from_diagonal({2}, p), DensityMatrix::from_diagonal({2}, q), s, ns, opts);
      CHECK(check_demo_rows(table).empty());
      for (const auto& r : table.rows) {
        CHECK(r.rhs <= r.rhs_paper * (1 + 1e-9));
        CHECK(r.rhs_paper == doctest::Approx(K * r.bound_T * std::pow(r.log2_dim, r.alpha)).epsilon(1e-12));
      }
      for (const auto& dc : table.dense_checks) {
        CHECK(std::abs(dc.gap_rho_sigma - table.c) <= 1e-8);
        CHECK(dc.gap_permuted <= 1e-8);
      }
    }
}

TEST_CASE("rhs_paper eventually decreases for alpha below one") {
  for (const double alpha : {0.25, 0.5, 0.75, 0.9}) {
    double prev = 1e300;
    bool decreasing_tail = true;
    for (std::size_t n = 1024; n <= (1u << 20); n *= 2) {
      const double v = 2.0 * std::pow(n + 1.0, alpha) / (n - 1.0);
      decreasing_tail = decreasing_tail && v < prev;
      prev = v;
    }
    CHECK(decreasing_tail);
    CHECK(prev < 1.0);
  }
}
