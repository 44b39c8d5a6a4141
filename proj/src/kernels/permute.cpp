#include "catalytic/kernels.hpp"

#include <cstdint>

namespace catalytic::kernels {

namespace {

Shape permuted_shape(const Shape& shape, std::span<const std::size_t> image) {
  Shape out(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) out[image[i]] = shape[i];
  return out;
}

// Mixed-radix decode of y (radices out_shape), relabel, encode with radices shape.
std::size_t source_index(std::size_t y, const Shape& shape, const Shape& out_shape,
                         std::span<const std::size_t> image, std::vector<std::size_t>& digits) {
  const std::size_t k = shape.size();
  for (std::size_t pos = k; pos-- > 0;) {
    digits[pos] = y % out_shape[pos];
    y /= out_shape[pos];
  }
  std::size_t x = 0;
  for (std::size_t i = 0; i < k; ++i) x = x * shape[i] + digits[image[i]];
  return x;
}

}  // namespace

namespace serial {

CMatrix permute_registers(const CMatrix& in, const Shape& shape, std::span<const std::size_t> image) {
  const Shape out_shape = permuted_shape(shape, image);
  const std::size_t n = in.side();
  std::vector<std::size_t> digits(shape.size());
  CMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t xr = source_index(r, shape, out_shape, image, digits);
      const std::size_t xc = source_index(c, shape, out_shape, image, digits);
      out(r, c) = in(xr, xc);
    }
  return out;
}

}  // namespace serial

namespace parallel {

CMatrix permute_registers(const CMatrix& in, const Shape& shape, std::span<const std::size_t> image) {
  const Shape out_shape = permuted_shape(shape, image);
  const std::size_t n = in.side();
  std::vector<std::size_t> src(n);
  {
    std::vector<std::size_t> digits(shape.size());
    for (std::size_t y = 0; y < n; ++y) src[y] = source_index(y, shape, out_shape, image, digits);
  }

  CMatrix out(n);
  const complex* pin = in.data().data();
  complex* po = out.data().data();
  const auto rows = static_cast<std::int64_t>(n);

#pragma omp parallel for schedule(static) if (n >= 128)
  for (std::int64_t r = 0; r < rows; ++r) {
    const complex* srow = pin + src[static_cast<std::size_t>(r)] * n;
    complex* orow = po + static_cast<std::size_t>(r) * n;
    for (std::size_t c = 0; c < n; ++c) orow[c] = srow[src[c]];
  }
  return out;
}

}  // namespace parallel

}  // namespace catalytic::kernels
