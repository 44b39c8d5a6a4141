#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "catalytic/matrix.hpp"

namespace catalytic {

struct Tolerances {
  double hermitian = 1e-10;
  double psd = 1e-8;
  double trace = 1e-10;
  double eigen = 1e-9;
};

// Product of register dimensions; throws std::overflow_error past size_t.
std::size_t shape_dimension(const Shape& shape);
std::string shape_string(const Shape& shape);

/// A state on registers of dimensions `shape`. Construction only checks that
/// the shape matches the matrix side; use validate() for the density-matrix
/// conditions.
class DensityMatrix {
 public:
  DensityMatrix(Shape shape, CMatrix entries);

  static DensityMatrix from_diagonal(Shape shape, std::span<const double> diag);
  static DensityMatrix maximally_mixed(std::size_t d);
  // |k><k| on one register of dimension d
  static DensityMatrix basis_state(std::size_t d, std::size_t k);
  static DensityMatrix pure(Shape shape, std::span<const complex> amplitudes);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t dimension() const noexcept { return entries_.side(); }
  std::size_t registers() const noexcept { return shape_.size(); }
  const CMatrix& entries() const noexcept { return entries_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

  // Same entries viewed with a different register split of equal product.
  DensityMatrix reshaped(Shape shape) const;

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  Shape shape_;
  CMatrix entries_;
};

struct ValidationReport {
  bool shape_ok = true;
  double hermitian_residual = 0.0;
  double min_eigenvalue = 0.0;
  double trace_residual = 0.0;
  bool hermitian = false;
  bool psd = false;
  bool unit_trace = false;

  bool ok() const noexcept { return shape_ok && hermitian && psd && unit_trace; }
};

ValidationReport validate(const DensityMatrix& m, const Tolerances& tol = {});
// Entry point for raw data: reports shape_ok = false instead of throwing.
ValidationReport validate(const Shape& shape, const CMatrix& entries, const Tolerances& tol = {});

/// Bijection on register indices: register i moves to position image[i].
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> image);

  static Permutation identity(std::size_t k);
  // i -> i + shift (mod k)
  static Permutation cyclic(std::size_t k, std::size_t shift = 1);

  std::size_t size() const noexcept { return image_.size(); }
  std::size_t operator[](std::size_t i) const { return image_[i]; }
  std::span<const std::size_t> image() const noexcept { return image_; }

  Permutation inverse() const;
  // Apply *this first, then `next`.
  Permutation then(const Permutation& next) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix tensor(std::span<const DensityMatrix> factors);
DensityMatrix tensor_power(const DensityMatrix& a, std::size_t copies);

// U_p M U_p^dagger by mixed-radix index relabeling.
DensityMatrix permute_registers(const DensityMatrix& m, const Permutation& p);

// Reduced state on `keep` (register indices, any order; result keeps
// ascending register order). Throws on an empty or invalid keep set.
DensityMatrix partial_trace(const DensityMatrix& m, std::span<const std::size_t> keep);

// G G^dagger / tr(G G^dagger) with G a d x rank complex Gaussian matrix drawn
// from mt19937_64(seed).
DensityMatrix sample_random_state(std::size_t d, std::size_t rank, std::uint64_t seed);
DensityMatrix sample_random_state(const Shape& shape, std::size_t rank, std::uint64_t seed);

}  // namespace catalytic
