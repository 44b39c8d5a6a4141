#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "catalytic/density.hpp"
#include "catalytic/partition.hpp"
#include "catalytic/word_mixture.hpp"

namespace catalytic {

inline constexpr std::size_t kDefaultDenseCap = 4096;

// Symbols used by catalyst mixtures.
inline constexpr Symbol kRho = 0;
inline constexpr Symbol kSigma = 1;

/// Gamma = 1/(n-1) sum_{r=1}^{n-1} rho^{(x)r} (x) sigma^{(x)n-r}, on n registers.
/// Throws on n < 2 or when rho and sigma have different shapes.
WordMixture build_catalyst(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n);

// n of a mixture in the exact form produced by build_catalyst; throws otherwise.
std::size_t catalyst_order(const WordMixture& gamma);

/// Gamma' = 1/(n-1) sum_{r=2}^{n} rho^{(x)r} (x) sigma^{(x)n-r}.
WordMixture shift_catalyst(const WordMixture& gamma);

/// Gamma - Gamma' as a signed mixture:
///   +1/(n-1) rho (x) sigma^{(x)n-1}  and  -1/(n-1) rho^{(x)n}
/// Throws if gamma_shifted is not shift_catalyst(gamma).
WordMixture catalyst_difference(const WordMixture& gamma, const WordMixture& gamma_shifted);

enum class DistanceMethod { dense, typeclass, automatic };

/// ||Gamma - Gamma'||_1.
/// dense: densifies both, needs d^n <= dense_cap.
/// typeclass: needs rho sigma = sigma rho; sums over symbol-count classes.
/// automatic: typeclass when the pair commutes, dense otherwise.
double catalyst_trace_distance(const WordMixture& gamma, const WordMixture& gamma_shifted,
                               DistanceMethod method = DistanceMethod::automatic,
                               std::size_t dense_cap = kDefaultDenseCap);

// Same quantity straight from the pair, without materializing O(n^2) word
// symbols; the only route for large n.
double catalyst_trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                               DistanceMethod method = DistanceMethod::automatic,
                               std::size_t dense_cap = kDefaultDenseCap);

// apply_protocol works on explicit words and refuses larger n.
inline constexpr std::size_t kMaxWordLevelN = 4096;

struct ProtocolOptions {
  std::size_t dense_cap = kDefaultDenseCap;
  DistanceMethod method = DistanceMethod::automatic;
};

struct ProtocolResult {
  std::size_t n = 0;
  WordMixture input;   // rho (x) Gamma
  WordMixture output;  // rotated input, equal to sigma (x) Gamma'
  double achieved_error = 0.0;  // ||Gamma' - Gamma||_1
  double bound = 0.0;           // 2/(n-1)
  double exactness_residual = 0.0;
  bool structural_match = false;  // output == sigma (x) Gamma' term for term
  bool dense_checked = false;      // exactness_residual came from dense matrices

  bool ok() const noexcept {
    return structural_match && achieved_error <= bound + 1e-9 && exactness_residual <= 1e-10;
  }
};

/// Runs rho (x) Gamma -> U (rho (x) Gamma) U^dagger with U cycling all n+1
/// base-state slots i -> i+1 (mod n+1), checks it against sigma (x) Gamma',
/// and measures the catalyst error.
ProtocolResult apply_protocol(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                              const ProtocolOptions& opts = {});

// Register permutation moving copy c of a k-register block to copy c+1 (mod copies).
Permutation copy_rotation(std::size_t registers_per_copy, std::size_t copies);

// Composition over parties j of the cycle R_j^(1) -> R_j^(2) -> ... -> R_j^(n) -> R_j^(1).
Permutation per_party_cycle(const Partition& partition, std::size_t n_copies);

/// Applies per_party_cycle to a state on n_copies copies of partition.shape(),
/// registers grouped by copy.
DensityMatrix per_party_cyclic_shift(const DensityMatrix& state, const Partition& partition, std::size_t n_copies);

// --- commuting pairs ---

struct JointSpectrum {
  std::vector<double> p;  // spectrum of rho
  std::vector<double> q;  // spectrum of sigma, same eigenbasis
};

// Frobenius norm of rho sigma - sigma rho.
double commutator_norm(const DensityMatrix& rho, const DensityMatrix& sigma);

// nullopt when the commutator norm exceeds commute_tol.
std::optional<JointSpectrum> joint_diagonalize(const DensityMatrix& rho, const DensityMatrix& sigma,
                                               double commute_tol = 1e-10);

// ||rho (x) sigma^{(x)n-1} - rho^{(x)n}||_1 / (n-1) for a joint spectrum.
double typeclass_catalyst_distance(const JointSpectrum& spec, std::size_t n);

}  // namespace catalytic
