#include "catalytic/kernels.hpp"

#include <cstdint>

namespace catalytic::kernels {

namespace serial {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.side(), nb = b.side();
  CMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace serial

namespace parallel {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.side(), nb = b.side();
  const std::size_t n = na * nb;
  CMatrix out(n);
  const complex* pa = a.data().data();
  const complex* pb = b.data().data();
  complex* po = out.data().data();
  const auto rows = static_cast<std::int64_t>(n);

#pragma omp parallel for schedule(static) if (n >= 128)
  for (std::int64_t row = 0; row < rows; ++row) {
    const std::size_t i = static_cast<std::size_t>(row) / nb;
    const std::size_t k = static_cast<std::size_t>(row) % nb;
    const complex* arow = pa + i * na;
    const complex* brow = pb + k * nb;
    complex* orow = po + static_cast<std::size_t>(row) * n;
    for (std::size_t j = 0; j < na; ++j) {
      const complex aij = arow[j];
      complex* dst = orow + j * nb;
      for (std::size_t l = 0; l < nb; ++l) dst[l] = aij * brow[l];
    }
  }
  return out;
}

}  // namespace parallel

}  // namespace catalytic::kernels
