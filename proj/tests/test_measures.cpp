#include <cmath>
#include <stdexcept>

#include "catalytic/eigen.hpp"
#include "catalytic/measures.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace catalytic;

TEST_CASE("registry") {
  const auto names = measure_names();
  CHECK(names == std::vector<std::string>{"entropy", "marginal-entropy", "entropy-squared"});
  CHECK_FALSE(find_measure("nope").has_value());
  const auto sq = find_measure("entropy-squared");
  REQUIRE(sq);
  CHECK_FALSE(sq->claims.additive);
  CHECK(find_measure("marginal-entropy")->partition_aware);
}

TEST_CASE("measure values") {
  const auto s = *find_measure("entropy");
  const auto sq = *find_measure("entropy-squared");
  const auto m = DensityMatrix::maximally_mixed(4);
  CHECK(s.evaluate(m) == doctest::Approx(2.0));
  CHECK(sq.evaluate(m) == doctest::Approx(4.0));

  // marginal entropy reads only the registers of party 0
  const auto marg = *find_measure("marginal-entropy");
  const auto pure = DensityMatrix::basis_state(2, 0);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  const auto state = tensor(mixed, pure);
  const Partition part = Partition::bipartite({2, 2});
  CHECK(marg.evaluate({state, part}) == doctest::Approx(1.0));
  CHECK(marg.evaluate({tensor(pure, mixed), part}) == doctest::Approx(0.0));
}

TEST_CASE("negative measure values are rejected") {
  MeasureDescriptor f{"negative", [](const DensityMatrix&, const Partition&) { return -1.0; }, {}, false};
  CHECK_THROWS_AS(f.evaluate(DensityMatrix::maximally_mixed(2)), std::domain_error);
}

TEST_CASE("entropy audits pass") {
  const auto a = audit_hypotheses(*find_measure("entropy"), 7);
  CHECK(a.additivity.pass());
  CHECK(a.additivity.max_residual <= kAdditivityTol);
  CHECK(a.permutation_invariance.pass());
  CHECK(a.permutation_invariance.max_residual <= kPermutationTol);
  REQUIRE(a.witness.has_value());
  CHECK(a.witness->c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy-squared fails additivity on the maximally mixed pair") {
  const auto sq = *find_measure("entropy-squared");
  const auto m = PartitionedState::whole(DensityMatrix::maximally_mixed(2));
  const std::vector<StatePair> pairs{{m, m}};
  // (1 + 1)^2 - 1 - 1 = 2
  const auto rep = audit_additivity(sq, pairs);
  CHECK(rep.max_residual == doctest::Approx(2.0));
  CHECK_FALSE(rep.pass());
  CHECK(audit_hypotheses(sq, 7).additivity.max_residual >= 1.0);
}

TEST_CASE("additivity audit detects a planted defect") {
  MeasureDescriptor f{"bumped",
                      [](const DensityMatrix& m, const Partition&) {
                        return entropy(m) + (m.dimension() > 4 ? 1e-6 : 0.0);
                      },
                      {true, true, true},
                      false};
  const auto pairs = random_pair_battery(Partition::single_party({3}), 4, 1);
  const auto rep = audit_additivity(f, pairs);
  CHECK(rep.max_residual == doctest::Approx(1e-6).epsilon(1e-6));
  CHECK_FALSE(rep.pass());
}

TEST_CASE("permutation audit detects an order-sensitive measure") {
  MeasureDescriptor f{"first-register",
                      [](const DensityMatrix& m, const Partition&) {
                        return entropy(partial_trace(m, std::vector<std::size_t>{0}));
                      },
                      {false, true, true},
                      false};
  const auto state = PartitionedState::whole(tensor(DensityMatrix::basis_state(2, 0), DensityMatrix::maximally_mixed(2)));
  const std::vector<Permutation> swap{Permutation({1, 0})};
  CHECK(audit_permutation_invariance(f, state, swap).max_residual == doctest::Approx(1.0));
}

TEST_CASE("marginal entropy is invariant under per-party cyclic shifts") {
  const auto marg = *find_measure("marginal-entropy");
  const Partition part = Partition::bipartite({2, 2});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto mu = sample_random_state(Shape{2, 2, 2, 2}, 16, seed);
    const auto shifted = per_party_cyclic_shift(mu, part, 2);
    const Partition big = part.copies(2);
    CHECK(std::abs(marg.evaluate({shifted, big}) - marg.evaluate({mu, big})) <= 1e-9);
  }
  const auto a = audit_hypotheses(marg, 3);
  CHECK(a.additivity.pass());
  CHECK(a.permutation_invariance.pass());
}

TEST_CASE("witness search") {
  const auto s = *find_measure("entropy");
  const auto w = find_nonconstancy_witness(s, 2, 16, 5);
  REQUIRE(w);
  CHECK(w->c > 0.5);
  CHECK(w->c == doctest::Approx(std::abs(entropy(w->rho) - entropy(w->sigma))));

  MeasureDescriptor constant{"constant", [](const DensityMatrix&, const Partition&) { return 3.0; }, {}, false};
  CHECK_FALSE(find_nonconstancy_witness(constant, 3, 16, 5).has_value());
}

TEST_CASE("pair batteries are seeded") {
  const auto part = Partition::single_party({2});
  const auto a = random_pair_battery(part, 5, 11);
  const auto b = random_pair_battery(part, 5, 11);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first.state == b[i].first.state);
    CHECK(a[i].second.state == b[i].second.state);
  }
  CHECK_FALSE(random_pair_battery(part, 1, 12)[0].first.state == a[0].first.state);
}
