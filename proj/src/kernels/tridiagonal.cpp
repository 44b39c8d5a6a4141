#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "catalytic/kernels.hpp"

namespace catalytic::kernels {

namespace {

struct Reflector {
  complex tau = 0.0;
  double beta = 0.0;
};

// Builds H = I - tau v v^H with H^H (alpha, x)^T = (beta, 0)^T, beta real.
// On return x holds v(1:), v(0) = 1 implicitly.
Reflector make_reflector(complex alpha, std::span<complex> x) {
  double xnorm2 = 0.0;
  for (const auto& z : x) xnorm2 += std::norm(z);
  const double ar = alpha.real(), ai = alpha.imag();
  if (xnorm2 == 0.0 && ai == 0.0) return {0.0, ar};
  const double norm = std::sqrt(ar * ar + ai * ai + xnorm2);
  const double beta = ar >= 0.0 ? -norm : norm;
  const complex tau((beta - ar) / beta, -ai / beta);
  const complex scale = 1.0 / (alpha - beta);
  for (auto& z : x) z *= scale;
  return {tau, beta};
}

}  // namespace

namespace serial {

Tridiagonal tridiagonalize(CMatrix a) {
  const std::size_t n = a.side();
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  if (n == 0) return t;

  std::vector<complex> v, w;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t m = n - k - 1;
    v.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    const Reflector h = make_reflector(v[0], std::span<complex>(v).subspan(1));
    t.diag[k] = a(k, k).real();
    t.off[k] = h.beta;
    if (h.tau == 0.0) continue;
    v[0] = 1.0;

    // w = tau A22 v
    w.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) w[i] += a(k + 1 + i, k + 1 + j) * v[j];
    complex wv = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] *= h.tau;
      wv += std::conj(w[i]) * v[i];
    }
    const complex alpha = -0.5 * h.tau * wv;
    for (std::size_t i = 0; i < m; ++i) w[i] += alpha * v[i];

    // A22 -= v w^H + w v^H
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        a(k + 1 + i, k + 1 + j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
  }
  t.diag[n - 1] = a(n - 1, n - 1).real();
  return t;
}

}  // namespace serial

namespace parallel {

Tridiagonal tridiagonalize(CMatrix a) {
  const std::size_t n = a.side();
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  if (n == 0) return t;

  complex* pa = a.data().data();
  std::vector<complex> v, w;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t m = n - k - 1;
    const std::size_t base = k + 1;
    v.resize(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = pa[(base + i) * n + k];
    const Reflector h = make_reflector(v[0], std::span<complex>(v).subspan(1));
    t.diag[k] = pa[k * n + k].real();
    t.off[k] = h.beta;
    if (h.tau == 0.0) continue;
    v[0] = 1.0;

    w.resize(m);
    const complex* pv = v.data();
    complex* pw = w.data();
    const complex tau = h.tau;
    const auto rows = static_cast<std::int64_t>(m);

#pragma omp parallel for schedule(static) if (m >= 96)
    for (std::int64_t i = 0; i < rows; ++i) {
      const complex* arow = pa + (base + static_cast<std::size_t>(i)) * n + base;
      complex acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += arow[j] * pv[j];
      pw[i] = tau * acc;
    }

    complex wv = 0.0;
    for (std::size_t i = 0; i < m; ++i) wv += std::conj(w[i]) * v[i];
    const complex alpha = -0.5 * tau * wv;
    for (std::size_t i = 0; i < m; ++i) w[i] += alpha * v[i];

#pragma omp parallel for schedule(static) if (m >= 96)
    for (std::int64_t i = 0; i < rows; ++i) {
      complex* arow = pa + (base + static_cast<std::size_t>(i)) * n + base;
      const complex vi = pv[i], wi = pw[i];
      for (std::size_t j = 0; j < m; ++j) arow[j] -= vi * std::conj(pw[j]) + wi * std::conj(pv[j]);
    }
  }
  t.diag[n - 1] = pa[(n - 1) * n + (n - 1)].real();
  return t;
}

}  // namespace parallel

std::vector<double> tridiagonal_eigenvalues(Tridiagonal t) {
  auto& d = t.diag;
  const std::size_t n = d.size();
  if (n == 0) return {};
  std::vector<double> e(n, 0.0);
  std::copy(t.off.begin(), t.off.end(), e.begin());
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]) + 2.0 * std::abs(e[i]));
  const double eps = std::numeric_limits<double>::epsilon();
  const double abs_floor = eps * scale;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= abs_floor) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiagonal QL did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace catalytic::kernels
