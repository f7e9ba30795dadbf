#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Row kernels for dense arithmetic over a prime field F_p, p < 2^31.
// Every entry handed to a kernel must already be reduced into [0, p).
namespace qlab::ff::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  // dst[k] <- dst[k] + c * src[k]  (mod p)
  void (*axpy)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
               std::uint32_t p);
  // dst[k] <- c * dst[k]  (mod p)
  void (*scale)(std::uint32_t* dst, std::uint32_t c, std::size_t n, std::uint32_t p);
  Isa isa;
  std::string_view name;
};

const KernelTable& scalar_table();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

// The table used by Matrix and the elimination routines. Chosen once at startup:
// AVX2 when available unless QLAB_KERNEL=scalar is set in the environment.
const KernelTable& active();

// Forces a particular table; returns false (and changes nothing) if unavailable.
bool select(Isa isa);

}  // namespace qlab::ff::kernels
