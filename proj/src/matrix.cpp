#include "catalytic/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace catalytic {

namespace {

void require_same_side(const CMatrix& a, const CMatrix& b) {
  if (a.side() != b.side())
    throw std::invalid_argument("matrix side mismatch: " + std::to_string(a.side()) + " vs " +
                                std::to_string(b.side()));
}

}  // namespace

CMatrix::CMatrix(std::size_t side, std::vector<complex> data) : side_(side), data_(std::move(data)) {
  if (data_.size() != side_ * side_)
    throw std::invalid_argument("matrix data has " + std::to_string(data_.size()) +
                                " entries, expected " + std::to_string(side_ * side_));
}

CMatrix CMatrix::identity(std::size_t side) {
  CMatrix m(side);
  for (std::size_t i = 0; i < side; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(side_);
  for (std::size_t r = 0; r < side_; ++r)
    for (std::size_t c = 0; c < side_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

complex CMatrix::trace() const {
  complex t = 0.0;
  for (std::size_t i = 0; i < side_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::hermiticity_residual() const {
  double m = 0.0;
  for (std::size_t r = 0; r < side_; ++r)
    for (std::size_t c = r; c < side_; ++c)
      m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return m;
}

bool CMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < side_; ++r)
    for (std::size_t c = 0; c < side_; ++c)
      if (r != c && (*this)(r, c) != 0.0) return false;
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_side(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_side(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix& CMatrix::axpy(complex s, const CMatrix& other) {
  require_same_side(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(complex s, CMatrix a) { return a *= s; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  require_same_side(a, b);
  const std::size_t n = a.side();
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_difference(const CMatrix& a, const CMatrix& b) {
  require_same_side(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace catalytic
