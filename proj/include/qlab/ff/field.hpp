#pragma once

#include <cstdint>

namespace qlab::ff {

bool is_prime(std::uint64_t n);

// Arithmetic in F_p for a prime p < 2^31. Values are canonical representatives in [0, p).
class Field {
 public:
  using value_type = std::uint32_t;

  explicit Field(std::uint32_t p);

  std::uint32_t prime() const noexcept { return p_; }

  value_type reduce(std::int64_t x) const noexcept {
    const std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  value_type add(value_type a, value_type b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type pow(value_type a, std::uint64_t e) const noexcept;
  // a must be nonzero.
  value_type inv(value_type a) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace qlab::ff
