#include "catalytic/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "catalytic/eigen.hpp"

namespace catalytic {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over (seed, index)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_matching(const DensityMatrix& m, const Partition& p) {
  if (m.shape() != p.shape())
    throw std::invalid_argument("state shape " + shape_string(m.shape()) + " does not match partition shape " +
                                shape_string(p.shape()));
}

DensityMatrix basis_state_on(const Shape& shape, std::size_t k) {
  const std::size_t d = shape_dimension(shape);
  return DensityMatrix::basis_state(d, k).reshaped(shape);
}

DensityMatrix maximally_mixed_on(const Shape& shape) {
  return DensityMatrix::maximally_mixed(shape_dimension(shape)).reshaped(shape);
}

std::vector<Permutation> all_permutations(std::size_t k) {
  std::vector<std::size_t> img(k);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace

PartitionedState PartitionedState::whole(DensityMatrix state) {
  Partition p = Partition::single_party(state.shape());
  return {std::move(state), std::move(p)};
}

PartitionedState tensor(const PartitionedState& a, const PartitionedState& b) {
  return {tensor(a.state, b.state), tensor(a.partition, b.partition)};
}

double MeasureDescriptor::evaluate(const PartitionedState& s) const {
  const double v = fn(s.state, s.partition);
  if (!(v >= 0.0)) throw std::domain_error("measure " + name + " returned " + std::to_string(v) + ", outside R_+");
  return v;
}

double MeasureDescriptor::evaluate(const DensityMatrix& m) const { return evaluate(PartitionedState::whole(m)); }

std::vector<MeasureDescriptor> builtin_measures() {
  std::vector<MeasureDescriptor> out;
  out.push_back({"entropy", [](const DensityMatrix& m, const Partition&) { return entropy(m); },
                 {.additive = true, .permutation_invariant = true, .nonconstant = true}, false});
  out.push_back({"marginal-entropy",
                 [](const DensityMatrix& m, const Partition& p) {
                   require_matching(m, p);
                   const auto keep = p.registers_of(0);
                   if (keep.empty()) throw std::invalid_argument("marginal entropy: party 0 owns no registers");
                   return entropy(partial_trace(m, keep));
                 },
                 {.additive = true, .permutation_invariant = true, .nonconstant = true}, true});
  out.push_back({"entropy-squared",
                 [](const DensityMatrix& m, const Partition&) {
                   const double s = entropy(m);
                   return s * s;
                 },
                 {.additive = false, .permutation_invariant = true, .nonconstant = true}, false});
  return out;
}

std::optional<MeasureDescriptor> find_measure(const std::string& name) {
  for (auto& m : builtin_measures())
    if (m.name == name) return m;
  return std::nullopt;
}

std::vector<std::string> measure_names() {
  std::vector<std::string> names;
  for (const auto& m : builtin_measures()) names.push_back(m.name);
  return names;
}

std::optional<NonconstancyWitness> find_nonconstancy_witness(const MeasureDescriptor& f,
                                                             std::span<const PartitionedState> candidates) {
  if (candidates.size() < 2) return std::nullopt;
  std::size_t lo = 0, hi = 0;
  double vlo = 0.0, vhi = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double v = f.evaluate(candidates[i]);
    if (i == 0 || v < vlo) {
      lo = i;
      vlo = v;
    }
    if (i == 0 || v > vhi) {
      hi = i;
      vhi = v;
    }
  }
  const double c = vhi - vlo;
  if (!(c > kNonconstancyFloor)) return std::nullopt;
  // Report rho as the lower-valued state.
  return NonconstancyWitness{candidates[lo].state.dimension(), candidates[lo].state, candidates[hi].state, c};
}

std::optional<NonconstancyWitness> find_nonconstancy_witness(const MeasureDescriptor& f, const Partition& partition,
                                                             std::size_t samples, std::uint64_t seed) {
  const std::size_t d = shape_dimension(partition.shape());
  std::vector<PartitionedState> candidates;
  candidates.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t rank = 1 + i % d;
    candidates.push_back({sample_random_state(partition.shape(), rank, mix_seed(seed, i)), partition});
  }
  return find_nonconstancy_witness(f, candidates);
}

std::optional<NonconstancyWitness> find_nonconstancy_witness(const MeasureDescriptor& f, std::size_t d,
                                                             std::size_t samples, std::uint64_t seed) {
  return find_nonconstancy_witness(f, Partition::single_party({d}), samples, seed);
}

AuditReport audit_additivity(const MeasureDescriptor& f, std::span<const StatePair> pairs, std::size_t dense_cap) {
  AuditReport rep{.property = "additivity", .tolerance = kAdditivityTol};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [mu, nu] = pairs[i];
    const std::size_t dim = mu.state.dimension() * nu.state.dimension();
    if (dim > dense_cap)
      throw std::invalid_argument("additivity audit: composite dimension " + std::to_string(dim) +
                                  " exceeds dense cap " + std::to_string(dense_cap));
    const double r = std::abs(f.evaluate(tensor(mu, nu)) - f.evaluate(mu) - f.evaluate(nu));
    if (i == 0 || r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst_index = i;
    }
    ++rep.evaluated;
  }
  return rep;
}

AuditReport audit_permutation_invariance(const MeasureDescriptor& f, const PartitionedState& state,
                                         std::span<const Permutation> permutations) {
  AuditReport rep{.property = "permutation-invariance", .tolerance = kPermutationTol};
  const double base = f.evaluate(state);
  for (std::size_t i = 0; i < permutations.size(); ++i) {
    const DensityMatrix moved = permute_registers(state.state, permutations[i]);
    const Partition labels(moved.shape(), state.partition.party_of(), state.partition.parties());
    const double r = std::abs(f.evaluate({moved, labels}) - base);
    if (i == 0 || r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst_index = i;
    }
    ++rep.evaluated;
  }
  return rep;
}

std::vector<StatePair> random_pair_battery(const Partition& partition, std::size_t count, std::uint64_t seed) {
  const std::size_t d = shape_dimension(partition.shape());
  std::vector<StatePair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t rank_mu = 1 + i % d;
    const std::size_t rank_nu = d - i % d;
    out.emplace_back(PartitionedState{sample_random_state(partition.shape(), rank_mu, mix_seed(seed, 2 * i)), partition},
                     PartitionedState{sample_random_state(partition.shape(), rank_nu, mix_seed(seed, 2 * i + 1)),
                                      partition});
  }
  return out;
}

HypothesisAudit audit_hypotheses(const MeasureDescriptor& f, std::uint64_t seed,
                                 const std::optional<Partition>& partition) {
  const Partition part = partition.value_or(f.partition_aware ? Partition({2, 2}, {0, 1}, 2)
                                                              : Partition::single_party({2}));
  const Shape& shape = part.shape();

  std::vector<StatePair> pairs = random_pair_battery(part, 8, seed);
  pairs.emplace_back(PartitionedState{maximally_mixed_on(shape), part}, PartitionedState{maximally_mixed_on(shape), part});
  pairs.emplace_back(PartitionedState{basis_state_on(shape, 0), part}, PartitionedState{maximally_mixed_on(shape), part});

  HypothesisAudit out{.additivity = audit_additivity(f, pairs), .permutation_invariance = {}, .witness = {}};

  // Generic (entangled, mixed) state across copies; copies chosen so the
  // dense dimension stays small.
  const std::size_t copies = shape_dimension(shape) <= 2 ? 3 : 2;
  const Partition composite = part.copies(copies);
  const PartitionedState across{sample_random_state(composite.shape(), shape_dimension(composite.shape()),
                                                    mix_seed(seed, 1000)),
                                composite};
  std::vector<Permutation> perms;
  if (f.partition_aware) {
    Permutation p = per_party_cycle(part, copies);
    perms.push_back(p);
    for (std::size_t s = 2; s < copies; ++s) perms.push_back(perms.back().then(p));
  } else {
    perms = all_permutations(composite.registers());
  }
  out.permutation_invariance = audit_permutation_invariance(f, across, perms);

  std::vector<PartitionedState> candidates{{basis_state_on(shape, 0), part}, {maximally_mixed_on(shape), part}};
  const std::size_t d = shape_dimension(shape);
  for (std::size_t i = 0; i < 32; ++i)
    candidates.push_back({sample_random_state(shape, 1 + i % d, mix_seed(seed, 2000 + i)), part});
  out.witness = find_nonconstancy_witness(f, candidates);
  return out;
}

}  // namespace catalytic
