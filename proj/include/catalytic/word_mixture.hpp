#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "catalytic/density.hpp"

namespace catalytic {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

struct WordTerm {
  double weight;
  Word word;

  friend bool operator==(const WordTerm&, const WordTerm&) = default;
};

/// Weighted sum of tensor words over a small alphabet of base states:
///   sum_t weight_t * bases[w_t(0)] (x) bases[w_t(1)] (x) ... (x) bases[w_t(L-1)]
/// States have positive weights summing to 1; differences of states are
/// represented with signed weights summing to 0. Only densify() ever forms
/// Kronecker products.
class WordMixture {
 public:
  // `length` is required only when `terms` is empty (a zero mixture).
  WordMixture(std::vector<DensityMatrix> bases, std::vector<WordTerm> terms, std::size_t length = 0);

  const std::vector<DensityMatrix>& bases() const noexcept { return bases_; }
  const std::vector<WordTerm>& terms() const noexcept { return terms_; }
  std::size_t word_length() const noexcept { return length_; }
  std::size_t base_dimension() const noexcept { return bases_.front().dimension(); }
  const Shape& base_shape() const noexcept { return bases_.front().shape(); }

  // Concatenation of word_length() copies of base_shape().
  Shape shape() const;
  // d^L; throws std::overflow_error when it does not fit.
  std::size_t total_dimension() const;
  // log2(d^L), valid at any length.
  double log2_total_dimension() const;

  double total_weight() const;
  // Positive weights summing to 1 within `tol`.
  bool is_state(double tol = 1e-12) const;

 private:
  std::vector<DensityMatrix> bases_;
  std::vector<WordTerm> terms_;
  std::size_t length_ = 0;
};

CMatrix densify(const WordMixture& w);
DensityMatrix densify_state(const WordMixture& w);

// Word-level image of permute_registers: symbol i moves to position p[i].
WordMixture permute_words(const WordMixture& w, const Permutation& p);

// bases[symbol] (x) w
WordMixture prepend(Symbol symbol, const WordMixture& w);

// Merges entrywise-equal bases, combines terms with equal words, drops zero
// weights, and orders terms by word.
WordMixture canonicalized(const WordMixture& w);

// Term-for-term equality of the canonical forms, weights within `tol`.
bool equivalent(const WordMixture& a, const WordMixture& b, double tol = 1e-15);

}  // namespace catalytic
