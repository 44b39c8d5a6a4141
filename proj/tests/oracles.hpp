#pragma once

// Slow, independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "catalytic/matrix.hpp"

namespace oracle {

using catalytic::CMatrix;
using catalytic::complex;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.side() * b.side();
  CMatrix out(n);
  for (std::size_t i = 0; i < a.side(); ++i)
    for (std::size_t j = 0; j < a.side(); ++j)
      for (std::size_t k = 0; k < b.side(); ++k)
        for (std::size_t l = 0; l < b.side(); ++l) out(i * b.side() + k, j * b.side() + l) = a(i, j) * b(k, l);
  return out;
}

inline CMatrix kron_chain(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> d(shape.size());
  for (std::size_t i = shape.size(); i-- > 0;) {
    d[i] = index % shape[i];
    index /= shape[i];
  }
  return d;
}

inline std::size_t index_of(const std::vector<std::size_t>& d, const std::vector<std::size_t>& shape) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) idx = idx * shape[i] + d[i];
  return idx;
}

// Explicit permutation matrix P with P|x_0 ... x_{k-1}> = |y> where y_{image[i]} = x_i.
inline CMatrix permutation_unitary(const std::vector<std::size_t>& shape, const std::vector<std::size_t>& image) {
  std::vector<std::size_t> out_shape(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) out_shape[image[i]] = shape[i];
  std::size_t dim = 1;
  for (auto s : shape) dim *= s;
  CMatrix u(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const auto dx = digits(x, shape);
    std::vector<std::size_t> dy(shape.size());
    for (std::size_t i = 0; i < shape.size(); ++i) dy[image[i]] = dx[i];
    u(index_of(dy, out_shape), x) = 1.0;
  }
  return u;
}

inline CMatrix conjugate(const CMatrix& u, const CMatrix& m) { return catalytic::matmul(catalytic::matmul(u, m), u.adjoint()); }

// Tr over all registers not in keep (keep ascending), by contracting with basis vectors.
inline CMatrix partial_trace(const CMatrix& m, const std::vector<std::size_t>& shape, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> kept_shape;
  for (auto k : keep) kept_shape.push_back(shape[k]);
  std::size_t kd = 1;
  for (auto s : kept_shape) kd *= s;
  CMatrix out(kd);
  for (std::size_t r = 0; r < m.side(); ++r)
    for (std::size_t c = 0; c < m.side(); ++c) {
      const auto dr = digits(r, shape);
      const auto dc = digits(c, shape);
      bool traced_equal = true;
      for (std::size_t i = 0; i < shape.size(); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end() && dr[i] != dc[i]) traced_equal = false;
      if (!traced_equal) continue;
      std::vector<std::size_t> kr, kc;
      for (auto k : keep) {
        kr.push_back(dr[k]);
        kc.push_back(dc[k]);
      }
      out(index_of(kr, kept_shape), index_of(kc, kept_shape)) += m(r, c);
    }
  return out;
}

// Number of eigenvalues of the real symmetric matrix a below x, by Sylvester's
// law of inertia applied to an LDL^T factorization of a - x I.
inline std::size_t count_below(std::vector<std::vector<double>> a, double x) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i][i] -= x;
  std::size_t negative = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double pivot = a[k][k];
    if (pivot == 0.0) pivot = 1e-300;
    if (pivot < 0) ++negative;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return negative;
}

// Eigenvalues of a Hermitian matrix, descending, by bisection on the real
// 2n x 2n embedding [[Re, -Im], [Im, Re]] (every eigenvalue appears twice).
inline std::vector<double> eigenvalues(const CMatrix& h) {
  const std::size_t n = h.side();
  std::vector<std::vector<double>> a(2 * n, std::vector<double>(2 * n));
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a[i][j] = a[n + i][n + j] = z.real();
      a[i][n + j] = -z.imag();
      a[n + i][j] = z.imag();
      row += std::abs(z);
    }
    radius = std::max(radius, row);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    // the (2k+1)-th smallest eigenvalue of the embedding
    double lo = -radius - 1.0, hi = radius + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, radius); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(a, mid) >= 2 * k + 1)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline double trace_norm(const CMatrix& h) {
  double s = 0.0;
  for (double v : eigenvalues(h)) s += std::abs(v);
  return s;
}

inline double entropy(const CMatrix& h) {
  double s = 0.0;
  for (double v : eigenvalues(h))
    if (v > 1e-12) s -= v * std::log2(v);
  return s;
}

// Random Hermitian matrix with entries in the unit box.
inline CMatrix random_hermitian(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = u(gen);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = complex(u(gen), u(gen));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// sum over all words of length `total` of |prod q_w - prod p_w|, enumerated one by one.
inline double word_sum(const std::vector<double>& p, const std::vector<double>& q, std::size_t total) {
  const std::size_t d = p.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < total; ++i) count *= d;
  double s = 0.0;
  for (std::size_t w = 0; w < count; ++w) {
    double pp = 1.0, qq = 1.0;
    std::size_t x = w;
    for (std::size_t i = 0; i < total; ++i) {
      pp *= p[x % d];
      qq *= q[x % d];
      x /= d;
    }
    s += std::abs(qq - pp);
  }
  return s;
}

// ||Gamma - Gamma'||_1 for diagonal rho = diag(p), sigma = diag(q), summing
// |Gamma_xx - Gamma'_xx| over all d^n basis strings x.
inline double diagonal_catalyst_distance(const std::vector<double>& p, const std::vector<double>& q, std::size_t n) {
  const std::size_t d = p.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= d;
  std::vector<std::size_t> x(n);
  double total = 0.0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t y = idx;
    for (std::size_t i = n; i-- > 0;) {
      x[i] = y % d;
      y /= d;
    }
    auto word = [&](std::size_t r) {
      double v = 1.0;
      for (std::size_t i = 0; i < n; ++i) v *= i < r ? p[x[i]] : q[x[i]];
      return v;
    };
    double g = 0.0, gs = 0.0;
    for (std::size_t r = 1; r < n; ++r) g += word(r);
    for (std::size_t r = 2; r <= n; ++r) gs += word(r);
    total += std::abs(g - gs);
  }
  return total / static_cast<double>(n - 1);
}

}  // namespace oracle
