#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catalytic/catalyst.hpp"
#include "catalytic/eigen.hpp"
#include "catalytic/kernels.hpp"

namespace catalytic {

namespace {

// Spectral mixing weight for rho + c sigma; generic enough to split the
// joint eigenvalues of typical pairs.
constexpr double kMixing = 0.37;
constexpr double kOffDiagonalTol = 1e-9;
constexpr double kClusterTol = 1e-8;

// V^H A V
CMatrix conjugate_by(const CMatrix& v, const CMatrix& a) { return matmul(v.adjoint(), matmul(a, v)); }

double max_off_diagonal(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.side(); ++r)
    for (std::size_t c = 0; c < a.side(); ++c)
      if (r != c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

std::vector<double> clamped_diagonal(const CMatrix& a) {
  std::vector<double> out(a.side());
  for (std::size_t i = 0; i < a.side(); ++i) out[i] = std::max(0.0, a(i, i).real());
  return out;
}

// Eigenbasis of rho, refined inside each (near-)degenerate eigenspace by
// diagonalizing the compression of sigma.
CMatrix refined_basis(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Eigensystem er = jacobi_eigensystem(rho.entries());
  const std::size_t n = er.values.size();
  CMatrix basis = er.vectors;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && std::abs(er.values[end] - er.values[start]) <= kClusterTol) ++end;
    const std::size_t m = end - start;
    if (m > 1) {
      CMatrix block(m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          complex acc = 0.0;
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
              acc += std::conj(er.vectors(r, start + i)) * sigma(r, c) * er.vectors(c, start + j);
          block(i, j) = acc;
        }
      const Eigensystem eb = jacobi_eigensystem(block);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < m; ++j) {
          complex acc = 0.0;
          for (std::size_t i = 0; i < m; ++i) acc += er.vectors(r, start + i) * eb.vectors(i, j);
          basis(r, start + j) = acc;
        }
    }
    start = end;
  }
  return basis;
}

}  // namespace

double commutator_norm(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension()) throw std::invalid_argument("commutator of different dimensions");
  return (matmul(rho.entries(), sigma.entries()) - matmul(sigma.entries(), rho.entries())).frobenius_norm();
}

std::optional<JointSpectrum> joint_diagonalize(const DensityMatrix& rho, const DensityMatrix& sigma,
                                               double commute_tol) {
  if (commutator_norm(rho, sigma) > commute_tol) return std::nullopt;
  if (rho.entries().is_diagonal() && sigma.entries().is_diagonal())
    return JointSpectrum{clamped_diagonal(rho.entries()), clamped_diagonal(sigma.entries())};

  CMatrix mix = rho.entries();
  mix.axpy(kMixing, sigma.entries());
  CMatrix basis = jacobi_eigensystem(mix).vectors;
  CMatrix r = conjugate_by(basis, rho.entries());
  CMatrix s = conjugate_by(basis, sigma.entries());
  if (std::max(max_off_diagonal(r), max_off_diagonal(s)) > kOffDiagonalTol) {
    basis = refined_basis(rho, sigma);
    r = conjugate_by(basis, rho.entries());
    s = conjugate_by(basis, sigma.entries());
  }
  return JointSpectrum{clamped_diagonal(r), clamped_diagonal(s)};
}

double typeclass_catalyst_distance(const JointSpectrum& spec, std::size_t n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (spec.p.size() != spec.q.size() || spec.p.empty()) throw std::invalid_argument("malformed joint spectrum");
  // The first register factors out: sum_b p_b times the class sum over the
  // remaining n-1 registers.
  double first = 0.0;
  for (const double x : spec.p) first += x;
  const double classes = kernels::parallel::typeclass_sum(spec.p, spec.q, n - 1);
  return first * classes / static_cast<double>(n - 1);
}

}  // namespace catalytic
