#include "catalytic/kernels.hpp"

#include <cstdint>

namespace catalytic::kernels {

namespace {

std::vector<std::size_t> strides_of(const Shape& shape) {
  std::vector<std::size_t> strides(shape.size());
  std::size_t s = 1;
  for (std::size_t i = shape.size(); i-- > 0;) {
    strides[i] = s;
    s *= shape[i];
  }
  return strides;
}

// Full-index offsets of every multi-index over the given registers, in
// row-major order over those registers.
std::vector<std::size_t> offsets_over(const Shape& shape, const std::vector<std::size_t>& strides,
                                      const std::vector<std::size_t>& registers) {
  std::vector<std::size_t> offsets{0};
  for (const std::size_t reg : registers) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * shape[reg]);
    for (const std::size_t base : offsets)
      for (std::size_t v = 0; v < shape[reg]; ++v) next.push_back(base + v * strides[reg]);
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<std::size_t> complement(std::size_t k, std::span<const std::size_t> keep) {
  std::vector<bool> kept(k, false);
  for (const std::size_t r : keep) kept[r] = true;
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < k; ++r)
    if (!kept[r]) out.push_back(r);
  return out;
}

}  // namespace

namespace serial {

CMatrix partial_trace(const CMatrix& in, const Shape& shape, std::span<const std::size_t> keep) {
  const std::size_t k = shape.size();
  const std::vector<std::size_t> traced = complement(k, keep);
  std::size_t kept_dim = 1;
  for (const std::size_t r : keep) kept_dim *= shape[r];

  auto digits_of = [&](std::size_t x) {
    std::vector<std::size_t> d(k);
    for (std::size_t pos = k; pos-- > 0;) {
      d[pos] = x % shape[pos];
      x /= shape[pos];
    }
    return d;
  };

  CMatrix out(kept_dim);
  const std::size_t n = in.side();
  for (std::size_t x = 0; x < n; ++x) {
    const auto dx = digits_of(x);
    for (std::size_t y = 0; y < n; ++y) {
      const auto dy = digits_of(y);
      bool diagonal_in_traced = true;
      for (const std::size_t r : traced) diagonal_in_traced = diagonal_in_traced && dx[r] == dy[r];
      if (!diagonal_in_traced) continue;
      std::size_t a = 0, b = 0;
      for (const std::size_t r : keep) {
        a = a * shape[r] + dx[r];
        b = b * shape[r] + dy[r];
      }
      out(a, b) += in(x, y);
    }
  }
  return out;
}

}  // namespace serial

namespace parallel {

CMatrix partial_trace(const CMatrix& in, const Shape& shape, std::span<const std::size_t> keep) {
  const auto strides = strides_of(shape);
  const std::vector<std::size_t> kept(keep.begin(), keep.end());
  const auto keep_off = offsets_over(shape, strides, kept);
  const auto trace_off = offsets_over(shape, strides, complement(shape.size(), keep));

  const std::size_t m = keep_off.size();
  const std::size_t n = in.side();
  CMatrix out(m);
  const complex* pin = in.data().data();
  complex* po = out.data().data();
  const auto rows = static_cast<std::int64_t>(m);

#pragma omp parallel for schedule(static) if (m * trace_off.size() >= 4096)
  for (std::int64_t a = 0; a < rows; ++a) {
    const std::size_t ra = keep_off[static_cast<std::size_t>(a)];
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t cb = keep_off[b];
      complex acc = 0.0;
      for (const std::size_t t : trace_off) acc += pin[(ra + t) * n + cb + t];
      po[static_cast<std::size_t>(a) * m + b] = acc;
    }
  }
  return out;
}

}  // namespace parallel

}  // namespace catalytic::kernels
