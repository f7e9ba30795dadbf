#include "qlab/ff/field.hpp"

#include "qlab/error.hpp"

namespace qlab::ff {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    fail(ErrorKind::BadParameter, "field characteristic " + std::to_string(p) +
                                      " is not a prime below 2^31");
  }
}

Field::value_type Field::pow(value_type a, std::uint64_t e) const noexcept {
  std::uint64_t result = 1 % p_;
  std::uint64_t base = a % p_;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<value_type>(result);
}

Field::value_type Field::inv(value_type a) const {
  if (a % p_ == 0) fail(ErrorKind::Internal, "inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on (a, p).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    const std::int64_t tt = t - q * new_t;
    t = new_t;
    new_t = tt;
    const std::int64_t rr = r - q * new_r;
    r = new_r;
    new_r = rr;
  }
  return reduce(t);
}

}  // namespace qlab::ff
