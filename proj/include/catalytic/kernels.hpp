#pragma once

// Hot loops of the library. Each kernel exists twice: a `serial` reference
// written for obviousness, and a `parallel` OpenMP version used by the
// public API. The serial versions are kept for tests and benchmarks only.

#include <cstddef>
#include <span>
#include <vector>

#include "catalytic/matrix.hpp"

namespace catalytic::kernels {

// Real symmetric tridiagonal matrix: `diag` has D entries, `off` has D-1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

namespace serial {

CMatrix kron(const CMatrix& a, const CMatrix& b);

// out(y, y') = in(x, x') where digit image[i] of y is digit i of x.
CMatrix permute_registers(const CMatrix& in, const Shape& shape, std::span<const std::size_t> image);

CMatrix partial_trace(const CMatrix& in, const Shape& shape, std::span<const std::size_t> keep);

// Householder reduction of a Hermitian matrix to a real tridiagonal matrix
// with the same spectrum.
Tridiagonal tridiagonalize(CMatrix a);

// sum over compositions c of `total` into p.size() parts of
//   multinomial(total; c) * |prod q_i^c_i - prod p_i^c_i|
double typeclass_sum(std::span<const double> p, std::span<const double> q, std::size_t total);

}  // namespace serial

namespace parallel {

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix permute_registers(const CMatrix& in, const Shape& shape, std::span<const std::size_t> image);
CMatrix partial_trace(const CMatrix& in, const Shape& shape, std::span<const std::size_t> keep);
Tridiagonal tridiagonalize(CMatrix a);
double typeclass_sum(std::span<const double> p, std::span<const double> q, std::size_t total);

}  // namespace parallel

// Eigenvalues of a symmetric tridiagonal matrix by implicit QL, ascending.
std::vector<double> tridiagonal_eigenvalues(Tridiagonal t);

}  // namespace catalytic::kernels
