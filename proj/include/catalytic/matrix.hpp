#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace catalytic {

using complex = std::complex<double>;

// Register dimensions (d_1, ..., d_k); register 0 is the most significant digit.
using Shape = std::vector<std::size_t>;

/// Dense square complex matrix stored row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t side) : side_(side), data_(side * side) {}
  CMatrix(std::size_t side, std::vector<complex> data);

  static CMatrix identity(std::size_t side);
  static CMatrix diagonal(std::span<const double> diag);

  std::size_t side() const noexcept { return side_; }
  std::size_t size() const noexcept { return data_.size(); }

  complex& operator()(std::size_t r, std::size_t c) { return data_[r * side_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * side_ + c]; }

  std::span<complex> data() noexcept { return data_; }
  std::span<const complex> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  // max_ij |a_ij - conj(a_ji)|
  double hermiticity_residual() const;
  bool is_diagonal() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(complex s);
  // this += s * other
  CMatrix& axpy(complex s, const CMatrix& other);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t side_ = 0;
  std::vector<complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(complex s, CMatrix a);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
double max_abs_difference(const CMatrix& a, const CMatrix& b);

}  // namespace catalytic
