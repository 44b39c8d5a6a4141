#pragma once

#include <cstddef>
#include <vector>

#include "catalytic/density.hpp"
#include "catalytic/matrix.hpp"

namespace catalytic {

struct JacobiOptions {
  double relative_threshold = 1e-12;  // off-diagonal Frobenius norm vs ||M||_F
  int max_sweeps = 100;
};

struct Eigensystem {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column j is the eigenvector of values[j]
  int sweeps = 0;
};

// Cyclic Jacobi rotations on a Hermitian matrix.
Eigensystem jacobi_eigensystem(const CMatrix& m, const JacobiOptions& opts = {});

enum class EigenMethod { automatic, jacobi, tridiagonal };

// Largest side for which `automatic` uses Jacobi; beyond it the Householder
// tridiagonal path runs.
inline constexpr std::size_t kJacobiCutoff = 48;

// Real eigenvalues in descending order. Throws std::invalid_argument if m is
// not Hermitian within `hermitian_tol`.
std::vector<double> hermitian_eigenvalues(const CMatrix& m, EigenMethod method = EigenMethod::automatic,
                                          double hermitian_tol = 1e-10);

// Schatten 1-norm of a Hermitian matrix.
double trace_norm(const CMatrix& a, double hermitian_tol = 1e-10);

struct TraceDistance {
  double one_norm;  // ||A - B||_1, the quantity all bounds here use
  double half;      // (1/2) ||A - B||_1
};

TraceDistance trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Von Neumann entropy in bits. Throws std::invalid_argument if m is not a
// density matrix within `tol`.
double entropy(const DensityMatrix& m, const Tolerances& tol = {});
// Same, from a spectrum; negative eigenvalues above -tol.psd clamp to zero.
double entropy_from_spectrum(const std::vector<double>& eigenvalues, const Tolerances& tol = {});

double binary_entropy(double p);

}  // namespace catalytic
