#include "qlab/ff/kernels.hpp"

namespace qlab::ff::kernels {
namespace {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
                 std::uint32_t p) {
  if (c == 0) return;
  const std::uint64_t cc = c;
  for (std::size_t k = 0; k < n; ++k) {
    dst[k] = static_cast<std::uint32_t>((dst[k] + cc * src[k]) % p);
  }
}

void scale_scalar(std::uint32_t* dst, std::uint32_t c, std::size_t n, std::uint32_t p) {
  const std::uint64_t cc = c;
  for (std::size_t k = 0; k < n; ++k) {
    dst[k] = static_cast<std::uint32_t>((cc * dst[k]) % p);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{axpy_scalar, scale_scalar, Isa::Scalar, "scalar"};
  return table;
}

}  // namespace qlab::ff::kernels
