#include "catalytic/word_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "catalytic/kernels.hpp"

namespace catalytic {

WordMixture::WordMixture(std::vector<DensityMatrix> bases, std::vector<WordTerm> terms, std::size_t length)
    : bases_(std::move(bases)), terms_(std::move(terms)), length_(length) {
  if (bases_.empty()) throw std::invalid_argument("word mixture needs at least one base state");
  if (bases_.size() > 256) throw std::invalid_argument("word mixture supports at most 256 base states");
  for (const auto& b : bases_)
    if (b.shape() != bases_.front().shape())
      throw std::invalid_argument("base states must share one shape, got " + shape_string(b.shape()) + " and " +
                                  shape_string(bases_.front().shape()));
  if (!terms_.empty()) length_ = terms_.front().word.size();
  for (const auto& t : terms_) {
    if (t.word.size() != length_) throw std::invalid_argument("words of a mixture must share one length");
    for (const Symbol s : t.word)
      if (s >= bases_.size()) throw std::invalid_argument("word symbol out of range");
    if (!std::isfinite(t.weight)) throw std::invalid_argument("non-finite word weight");
  }
}

Shape WordMixture::shape() const {
  Shape s;
  for (std::size_t i = 0; i < length_; ++i) s.insert(s.end(), base_shape().begin(), base_shape().end());
  return s;
}

std::size_t WordMixture::total_dimension() const { return shape_dimension(shape()); }

double WordMixture::log2_total_dimension() const {
  return static_cast<double>(length_) * std::log2(static_cast<double>(base_dimension()));
}

double WordMixture::total_weight() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.weight;
  return s;
}

bool WordMixture::is_state(double tol) const {
  for (const auto& t : terms_)
    if (t.weight <= 0.0) return false;
  return std::abs(total_weight() - 1.0) <= tol;
}

CMatrix densify(const WordMixture& w) {
  if (w.word_length() == 0) throw std::invalid_argument("cannot densify an empty mixture");
  const std::size_t dim = w.total_dimension();
  CMatrix out(dim);
  for (const auto& t : w.terms()) {
    CMatrix prod = w.bases()[t.word[0]].entries();
    for (std::size_t i = 1; i < t.word.size(); ++i)
      prod = kernels::parallel::kron(prod, w.bases()[t.word[i]].entries());
    out.axpy(t.weight, prod);
  }
  return out;
}

DensityMatrix densify_state(const WordMixture& w) { return DensityMatrix(w.shape(), densify(w)); }

WordMixture permute_words(const WordMixture& w, const Permutation& p) {
  if (p.size() != w.word_length())
    throw std::invalid_argument("word permutation of length " + std::to_string(p.size()) + " on words of length " +
                                std::to_string(w.word_length()));
  std::vector<WordTerm> terms;
  terms.reserve(w.terms().size());
  for (const auto& t : w.terms()) {
    Word out(t.word.size());
    for (std::size_t i = 0; i < t.word.size(); ++i) out[p[i]] = t.word[i];
    terms.push_back({t.weight, std::move(out)});
  }
  return WordMixture(w.bases(), std::move(terms), w.word_length());
}

WordMixture prepend(Symbol symbol, const WordMixture& w) {
  std::vector<WordTerm> terms;
  terms.reserve(w.terms().size());
  for (const auto& t : w.terms()) {
    Word out{symbol};
    out.insert(out.end(), t.word.begin(), t.word.end());
    terms.push_back({t.weight, std::move(out)});
  }
  return WordMixture(w.bases(), std::move(terms), w.word_length() + 1);
}

WordMixture canonicalized(const WordMixture& w) {
  // First occurrence wins among entrywise-equal bases.
  std::vector<Symbol> remap(w.bases().size());
  std::vector<DensityMatrix> bases;
  for (std::size_t i = 0; i < w.bases().size(); ++i) {
    std::size_t j = 0;
    while (j < bases.size() && !(bases[j].entries() == w.bases()[i].entries())) ++j;
    if (j == bases.size()) bases.push_back(w.bases()[i]);
    remap[i] = static_cast<Symbol>(j);
  }

  std::map<Word, double> merged;
  for (const auto& t : w.terms()) {
    Word word = t.word;
    for (auto& s : word) s = remap[s];
    merged[word] += t.weight;
  }
  std::vector<WordTerm> terms;
  for (auto& [word, weight] : merged)
    if (weight != 0.0) terms.push_back({weight, word});
  return WordMixture(std::move(bases), std::move(terms), w.word_length());
}

bool equivalent(const WordMixture& a, const WordMixture& b, double tol) {
  const WordMixture ca = canonicalized(a), cb = canonicalized(b);
  if (ca.bases() != cb.bases() || ca.terms().size() != cb.terms().size()) return false;
  for (std::size_t i = 0; i < ca.terms().size(); ++i) {
    const auto& x = ca.terms()[i];
    const auto& y = cb.terms()[i];
    if (x.word != y.word || std::abs(x.weight - y.weight) > tol) return false;
  }
  return true;
}

}  // namespace catalytic
