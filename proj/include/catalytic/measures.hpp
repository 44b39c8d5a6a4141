#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catalytic/catalyst.hpp"
#include "catalytic/density.hpp"
#include "catalytic/partition.hpp"

namespace catalytic {

struct MeasureClaims {
  bool additive = false;
  bool permutation_invariant = false;
  bool nonconstant = false;
};

// A state together with the party split it is measured against.
struct PartitionedState {
  DensityMatrix state;
  Partition partition;

  // Single-party partition over the state's registers.
  static PartitionedState whole(DensityMatrix state);
};

PartitionedState tensor(const PartitionedState& a, const PartitionedState& b);

/// A quantity f : D(*) -> R_+ with the structural properties it claims.
/// Partition-aware measures read the party split; the others ignore it.
struct MeasureDescriptor {
  std::string name;
  std::function<double(const DensityMatrix&, const Partition&)> fn;
  MeasureClaims claims;
  bool partition_aware = false;

  // Throws std::domain_error if fn returns a negative value.
  double evaluate(const PartitionedState& s) const;
  double evaluate(const DensityMatrix& m) const;
};

// entropy, marginal-entropy, entropy-squared
std::vector<MeasureDescriptor> builtin_measures();
std::optional<MeasureDescriptor> find_measure(const std::string& name);
std::vector<std::string> measure_names();

struct NonconstancyWitness {
  std::size_t d;
  DensityMatrix rho;
  DensityMatrix sigma;
  double c;  // |f(rho) - f(sigma)|
};

inline constexpr double kNonconstancyFloor = 1e-9;

// Best pair among the candidates; nullopt unless its gap exceeds kNonconstancyFloor.
std::optional<NonconstancyWitness> find_nonconstancy_witness(const MeasureDescriptor& f,
                                                             std::span<const PartitionedState> candidates);

// Samples `samples` seeded states of dimension d (ranks cycling 1..d) on a
// single register.
std::optional<NonconstancyWitness> find_nonconstancy_witness(const MeasureDescriptor& f, std::size_t d,
                                                             std::size_t samples, std::uint64_t seed);

// Same, with states on `partition.shape()` measured against `partition`.
std::optional<NonconstancyWitness> find_nonconstancy_witness(const MeasureDescriptor& f, const Partition& partition,
                                                             std::size_t samples, std::uint64_t seed);

struct AuditReport {
  std::string property;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t worst_index = 0;
  std::size_t evaluated = 0;

  bool pass() const noexcept { return max_residual <= tolerance; }
};

inline constexpr double kAdditivityTol = 1e-8;
inline constexpr double kPermutationTol = 1e-9;

using StatePair = std::pair<PartitionedState, PartitionedState>;

// max |f(mu (x) nu) - f(mu) - f(nu)|. Throws if a composite exceeds dense_cap.
AuditReport audit_additivity(const MeasureDescriptor& f, std::span<const StatePair> pairs,
                             std::size_t dense_cap = kDefaultDenseCap);

// max |f(U_p mu U_p^dagger) - f(mu)|; the permuted state is measured against
// the same party labels by register position.
AuditReport audit_permutation_invariance(const MeasureDescriptor& f, const PartitionedState& state,
                                         std::span<const Permutation> permutations);

// Seeded battery of random pairs, the same for every call with equal arguments.
// For partition-aware measures both sides live on `partition`.
std::vector<StatePair> random_pair_battery(const Partition& partition, std::size_t count, std::uint64_t seed);

struct HypothesisAudit {
  AuditReport additivity;
  AuditReport permutation_invariance;
  std::optional<NonconstancyWitness> witness;
};

// Dense battery used to license additivity shortcuts. Partition-aware
// measures are audited on `partition` (a 2-party qubit split by default) with
// per-party cyclic shifts; the others on `partition.shape()` with all register
// permutations of two copies.
HypothesisAudit audit_hypotheses(const MeasureDescriptor& f, std::uint64_t seed,
                                 const std::optional<Partition>& partition = std::nullopt);

}  // namespace catalytic
