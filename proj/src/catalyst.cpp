#include "catalytic/catalyst.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "catalytic/eigen.hpp"

namespace catalytic {

namespace {

Word catalyst_word(std::size_t rho_count, std::size_t n) {
  Word w(n, kSigma);
  for (std::size_t i = 0; i < rho_count; ++i) w[i] = kRho;
  return w;
}

// d^slots <= cap
bool fits_dense(std::size_t d, std::size_t slots, std::size_t cap) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    if (dim > cap / d) return false;
    dim *= d;
  }
  return dim <= cap;
}

}  // namespace

WordMixture build_catalyst(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (rho.shape() != sigma.shape())
    throw std::invalid_argument("rho has shape " + shape_string(rho.shape()) + " but sigma has shape " +
                                shape_string(sigma.shape()));
  const double weight = 1.0 / static_cast<double>(n - 1);
  std::vector<WordTerm> terms;
  terms.reserve(n - 1);
  for (std::size_t r = 1; r <= n - 1; ++r) terms.push_back({weight, catalyst_word(r, n)});
  return WordMixture({rho, sigma}, std::move(terms));
}

std::size_t catalyst_order(const WordMixture& gamma) {
  const std::size_t n = gamma.word_length();
  if (gamma.bases().size() != 2 || n < 2 || gamma.terms().size() != n - 1)
    throw std::invalid_argument("mixture is not a catalyst built by build_catalyst");
  const double weight = 1.0 / static_cast<double>(n - 1);
  for (std::size_t r = 1; r <= n - 1; ++r) {
    const auto& t = gamma.terms()[r - 1];
    if (t.weight != weight || t.word != catalyst_word(r, n))
      throw std::invalid_argument("mixture is not a catalyst built by build_catalyst");
  }
  return n;
}

WordMixture shift_catalyst(const WordMixture& gamma) {
  const std::size_t n = catalyst_order(gamma);
  std::vector<WordTerm> terms;
  terms.reserve(n - 1);
  for (const auto& t : gamma.terms()) {
    // rho^r sigma^{n-r} -> rho^{r+1} sigma^{n-r-1}
    Word w = t.word;
    std::size_t r = 0;
    while (r < n && w[r] == kRho) ++r;
    w[r] = kRho;
    terms.push_back({t.weight, std::move(w)});
  }
  return WordMixture(gamma.bases(), std::move(terms));
}

WordMixture catalyst_difference(const WordMixture& gamma, const WordMixture& gamma_shifted) {
  const WordMixture expected = shift_catalyst(gamma);
  if (gamma_shifted.bases() != gamma.bases() || gamma_shifted.terms() != expected.terms())
    throw std::invalid_argument("catalyst difference: second argument is not the shifted catalyst of the first");

  std::vector<WordTerm> terms = gamma.terms();
  for (const auto& t : gamma_shifted.terms()) terms.push_back({-t.weight, t.word});
  return canonicalized(WordMixture(gamma.bases(), std::move(terms)));
}

double catalyst_trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                               DistanceMethod method, std::size_t dense_cap) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (rho.shape() != sigma.shape())
    throw std::invalid_argument("rho has shape " + shape_string(rho.shape()) + " but sigma has shape " +
                                shape_string(sigma.shape()));
  if (method == DistanceMethod::automatic || method == DistanceMethod::typeclass) {
    if (const auto spec = joint_diagonalize(rho, sigma)) return typeclass_catalyst_distance(*spec, n);
    if (method == DistanceMethod::typeclass)
      throw std::invalid_argument("typeclass method needs commuting rho and sigma (commutator norm " +
                                  std::to_string(commutator_norm(rho, sigma)) + ")");
  }
  if (!fits_dense(rho.dimension(), n, dense_cap))
    throw std::invalid_argument("dense catalyst distance at n = " + std::to_string(n) + " exceeds the dense cap " +
                                std::to_string(dense_cap));
  const WordMixture gamma = build_catalyst(rho, sigma, n);
  return trace_norm(densify(gamma) - densify(shift_catalyst(gamma)));
}

double catalyst_trace_distance(const WordMixture& gamma, const WordMixture& gamma_shifted, DistanceMethod method,
                               std::size_t dense_cap) {
  const std::size_t n = catalyst_order(gamma);
  catalyst_difference(gamma, gamma_shifted);  // provenance check
  return catalyst_trace_distance(gamma.bases()[kRho], gamma.bases()[kSigma], n, method, dense_cap);
}

ProtocolResult apply_protocol(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                              const ProtocolOptions& opts) {
  if (n > kMaxWordLevelN)
    throw std::invalid_argument("protocol runs on explicit words up to n = " + std::to_string(kMaxWordLevelN));
  const WordMixture gamma = build_catalyst(rho, sigma, n);
  const WordMixture gamma_shifted = shift_catalyst(gamma);

  ProtocolResult res{.n = n,
                     .input = prepend(kRho, gamma),
                     .output = prepend(kRho, gamma),
                     .bound = 2.0 / static_cast<double>(n - 1)};
  res.output = permute_words(res.input, Permutation::cyclic(n + 1));
  const WordMixture expected = prepend(kSigma, gamma_shifted);
  res.structural_match = equivalent(res.output, expected);

  if (fits_dense(rho.dimension(), n + 1, opts.dense_cap)) {
    const DensityMatrix rotated =
        permute_registers(densify_state(res.input), copy_rotation(rho.registers(), n + 1));
    res.exactness_residual = trace_norm(rotated.entries() - densify(expected));
    res.dense_checked = true;
  } else {
    res.exactness_residual = res.structural_match ? 0.0 : std::numeric_limits<double>::infinity();
  }
  res.achieved_error = catalyst_trace_distance(gamma, gamma_shifted, opts.method, opts.dense_cap);
  return res;
}

Permutation copy_rotation(std::size_t registers_per_copy, std::size_t copies) {
  return Permutation::cyclic(registers_per_copy * copies, registers_per_copy);
}

Permutation per_party_cycle(const Partition& partition, std::size_t n_copies) {
  if (n_copies == 0) throw std::invalid_argument("per-party cycle needs at least one copy");
  const std::size_t k = partition.registers();
  Permutation composed = Permutation::identity(k * n_copies);
  for (std::size_t j = 0; j < partition.parties(); ++j) {
    std::vector<std::size_t> image(k * n_copies);
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
    for (const std::size_t r : partition.registers_of(j))
      for (std::size_t c = 0; c < n_copies; ++c) image[c * k + r] = ((c + 1) % n_copies) * k + r;
    composed = composed.then(Permutation(std::move(image)));
  }
  return composed;
}

DensityMatrix per_party_cyclic_shift(const DensityMatrix& state, const Partition& partition, std::size_t n_copies) {
  const Shape expected = partition.copies(n_copies).shape();
  if (state.shape() != expected)
    throw std::invalid_argument("state shape " + shape_string(state.shape()) + " is not " +
                                std::to_string(n_copies) + " copies of partition shape " +
                                shape_string(partition.shape()));
  return permute_registers(state, per_party_cycle(partition, n_copies));
}

}  // namespace catalytic
