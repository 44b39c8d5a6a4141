#include "catalytic/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "catalytic/kernels.hpp"

namespace catalytic {

namespace {

void require_hermitian(const CMatrix& m, double tol) {
  const double r = m.hermiticity_residual();
  if (!(r <= tol))
    throw std::invalid_argument("matrix is not Hermitian (residual " + std::to_string(r) + ")");
}

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.side(); ++r)
    for (std::size_t c = 0; c < a.side(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace

Eigensystem jacobi_eigensystem(const CMatrix& m, const JacobiOptions& opts) {
  const std::size_t n = m.side();
  CMatrix a = m + m.adjoint();
  a *= 0.5;
  CMatrix v = CMatrix::identity(n);
  const double threshold = opts.relative_threshold * a.frobenius_norm();

  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const complex phase = apq / g;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const complex sp = s * phase;
        const complex cpc = c * std::conj(phase);
        const complex spc = s * std::conj(phase);

        // A <- A J, V <- V J with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - spc * akq;
          a(k, q) = s * akp + cpc * akq;
          const complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - spc * vkq;
          v(k, q) = s * vkp + cpc * vkq;
        }
        // A <- J^H A
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  Eigensystem es;
  es.sweeps = sweep;
  es.values.resize(n);
  es.vectors = CMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    es.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) es.vectors(k, j) = v(k, order[j]);
  }
  return es;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m, EigenMethod method, double hermitian_tol) {
  require_hermitian(m, hermitian_tol);
  std::vector<double> values;
  if (m.is_diagonal()) {
    values.reserve(m.side());
    for (std::size_t i = 0; i < m.side(); ++i) values.push_back(m(i, i).real());
  } else {
    if (method == EigenMethod::automatic)
      method = m.side() <= kJacobiCutoff ? EigenMethod::jacobi : EigenMethod::tridiagonal;
    if (method == EigenMethod::jacobi) {
      values = jacobi_eigensystem(m).values;
    } else {
      CMatrix h = m + m.adjoint();
      h *= 0.5;
      values = kernels::tridiagonal_eigenvalues(kernels::parallel::tridiagonalize(std::move(h)));
    }
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double trace_norm(const CMatrix& a, double hermitian_tol) {
  double s = 0.0;
  for (const double x : hermitian_eigenvalues(a, EigenMethod::automatic, hermitian_tol)) s += std::abs(x);
  return s;
}

TraceDistance trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("trace distance between states of dimension " + std::to_string(a.dimension()) +
                                " and " + std::to_string(b.dimension()));
  const double t = trace_norm(a.entries() - b.entries());
  return {t, 0.5 * t};
}

double entropy_from_spectrum(const std::vector<double>& eigenvalues, const Tolerances& tol) {
  double s = 0.0;
  for (double x : eigenvalues) {
    if (x < -tol.psd) throw std::invalid_argument("negative eigenvalue " + std::to_string(x) + " in entropy");
    x = std::min(x, 1.0);
    if (x <= tol.eigen) continue;
    s -= x * std::log2(x);
  }
  return s;
}

double entropy(const DensityMatrix& m, const Tolerances& tol) {
  const auto& e = m.entries();
  const double tr_res = std::abs(e.trace() - 1.0);
  if (tr_res > tol.trace) throw std::invalid_argument("entropy of a matrix with trace residual " + std::to_string(tr_res));
  return entropy_from_spectrum(hermitian_eigenvalues(e, EigenMethod::automatic, tol.hermitian), tol);
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace catalytic
