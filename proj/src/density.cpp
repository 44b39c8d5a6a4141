#include "catalytic/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "catalytic/eigen.hpp"
#include "catalytic/kernels.hpp"

namespace catalytic {

std::size_t shape_dimension(const Shape& shape) {
  std::size_t d = 1;
  for (const std::size_t r : shape) {
    if (r == 0) throw std::invalid_argument("register dimension must be positive");
    if (d > std::numeric_limits<std::size_t>::max() / r)
      throw std::overflow_error("total dimension of shape " + shape_string(shape) + " overflows");
    d *= r;
  }
  return d;
}

std::string shape_string(const Shape& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

DensityMatrix::DensityMatrix(Shape shape, CMatrix entries) : shape_(std::move(shape)), entries_(std::move(entries)) {
  if (shape_.empty()) throw std::invalid_argument("shape must have at least one register");
  const std::size_t d = shape_dimension(shape_);
  if (d != entries_.side())
    throw std::invalid_argument("shape " + shape_string(shape_) + " has dimension " + std::to_string(d) +
                                " but matrix side is " + std::to_string(entries_.side()));
}

DensityMatrix DensityMatrix::from_diagonal(Shape shape, std::span<const double> diag) {
  return DensityMatrix(std::move(shape), CMatrix::diagonal(diag));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  const std::vector<double> diag(d, 1.0 / static_cast<double>(d));
  return from_diagonal({d}, diag);
}

DensityMatrix DensityMatrix::basis_state(std::size_t d, std::size_t k) {
  if (k >= d) throw std::invalid_argument("basis index out of range");
  std::vector<double> diag(d, 0.0);
  diag[k] = 1.0;
  return from_diagonal({d}, diag);
}

DensityMatrix DensityMatrix::pure(Shape shape, std::span<const complex> amplitudes) {
  const std::size_t d = amplitudes.size();
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (norm2 == 0.0) throw std::invalid_argument("zero state vector");
  CMatrix m(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]) / norm2;
  return DensityMatrix(std::move(shape), std::move(m));
}

DensityMatrix DensityMatrix::reshaped(Shape shape) const { return DensityMatrix(std::move(shape), entries_); }

ValidationReport validate(const Shape& shape, const CMatrix& entries, const Tolerances& tol) {
  ValidationReport rep;
  try {
    rep.shape_ok = !shape.empty() && shape_dimension(shape) == entries.side();
  } catch (const std::exception&) {
    rep.shape_ok = false;
  }
  rep.hermitian_residual = entries.hermiticity_residual();
  rep.trace_residual = std::abs(entries.trace() - 1.0);

  // Spectrum of the Hermitian part, so a report is produced for any input.
  CMatrix herm = entries + entries.adjoint();
  herm *= 0.5;
  const auto eig = hermitian_eigenvalues(herm, EigenMethod::automatic, std::numeric_limits<double>::infinity());
  rep.min_eigenvalue = eig.empty() ? 0.0 : eig.back();

  rep.hermitian = rep.hermitian_residual <= tol.hermitian;
  rep.psd = rep.min_eigenvalue >= -tol.psd;
  rep.unit_trace = rep.trace_residual <= tol.trace;
  return rep;
}

ValidationReport validate(const DensityMatrix& m, const Tolerances& tol) {
  return validate(m.shape(), m.entries(), tol);
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (const std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) throw std::invalid_argument("permutation image is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<std::size_t> img(k);
  for (std::size_t i = 0; i < k; ++i) img[i] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::cyclic(std::size_t k, std::size_t shift) {
  std::vector<std::size_t> img(k);
  for (std::size_t i = 0; i < k; ++i) img[i] = (i + shift) % k;
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> img(size());
  for (std::size_t i = 0; i < size(); ++i) img[i] = next[image_[i]];
  return Permutation(std::move(img));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Shape shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  shape_dimension(shape);
  return DensityMatrix(std::move(shape), kernels::parallel::kron(a.entries(), b.entries()));
}

DensityMatrix tensor(std::span<const DensityMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of no factors");
  DensityMatrix acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = tensor(acc, factors[i]);
  return acc;
}

DensityMatrix tensor_power(const DensityMatrix& a, std::size_t copies) {
  if (copies == 0) throw std::invalid_argument("tensor power needs at least one copy");
  const std::vector<DensityMatrix> factors(copies, a);
  return tensor(factors);
}

DensityMatrix permute_registers(const DensityMatrix& m, const Permutation& p) {
  if (p.size() != m.registers())
    throw std::invalid_argument("permutation of " + std::to_string(p.size()) + " registers applied to state with " +
                                std::to_string(m.registers()));
  Shape out_shape(m.registers());
  for (std::size_t i = 0; i < p.size(); ++i) out_shape[p[i]] = m.shape()[i];
  return DensityMatrix(std::move(out_shape), kernels::parallel::permute_registers(m.entries(), m.shape(), p.image()));
}

DensityMatrix partial_trace(const DensityMatrix& m, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("partial trace needs a nonempty keep set");
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("partial trace keep set has duplicates");
  if (sorted.back() >= m.registers()) throw std::invalid_argument("partial trace keep index out of range");

  Shape out_shape;
  for (const std::size_t r : sorted) out_shape.push_back(m.shape()[r]);
  return DensityMatrix(std::move(out_shape), kernels::parallel::partial_trace(m.entries(), m.shape(), sorted));
}

DensityMatrix sample_random_state(const Shape& shape, std::size_t rank, std::uint64_t seed) {
  const std::size_t d = shape_dimension(shape);
  if (rank < 1 || rank > d)
    throw std::invalid_argument("rank " + std::to_string(rank) + " out of range [1, " + std::to_string(d) + "]");

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<complex> g(d * rank);
  for (auto& z : g) {
    const double re = normal(gen);
    const double im = normal(gen);
    z = complex(re, im);
  }

  CMatrix m(d);
  double tr = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      complex acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k) acc += g[r * rank + k] * std::conj(g[c * rank + k]);
      m(r, c) = acc;
      m(c, r) = std::conj(acc);
    }
    m(r, r) = m(r, r).real();
    tr += m(r, r).real();
  }
  m *= 1.0 / tr;
  return DensityMatrix(shape, std::move(m));
}

DensityMatrix sample_random_state(std::size_t d, std::size_t rank, std::uint64_t seed) {
  return sample_random_state(Shape{d}, rank, seed);
}

}  // namespace catalytic
