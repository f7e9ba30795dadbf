#include "doctest.h"

#include <random>
#include <vector>

#include "qlab/error.hpp"
#include "qlab/ff/field.hpp"
#include "qlab/ff/kernels.hpp"
#include "qlab/ff/matrix.hpp"

using namespace qlab;
using namespace qlab::ff;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937_64& rng, int zero_pct = 0) {
  Matrix m(r, c, p);
  std::uniform_int_distribution<std::uint32_t> val(0, p - 1);
  std::uniform_int_distribution<int> pct(0, 99);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = pct(rng) < zero_pct ? 0 : val(rng);
  return m;
}

Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols(), a.prime());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      unsigned __int128 s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<std::uint64_t>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<std::uint32_t>(s % a.prime());
    }
  return c;
}

struct KernelGuard {
  ~KernelGuard() {
    if (!kernels::select(kernels::Isa::Avx2)) kernels::select(kernels::Isa::Scalar);
  }
};

}  // namespace

TEST_CASE("field arithmetic") {
  CHECK(is_prime(2));
  CHECK(is_prime(101));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  Field f(101);
  for (std::uint32_t a = 1; a < 101; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.reduce(-1) == 100);
  CHECK(f.pow(3, 100) == 1);
  CHECK(f.sub(3, 5) == 99);
  CHECK(f.neg(0) == 0);
  CHECK_THROWS_AS(Field(100), Error);
}

TEST_CASE("scalar and avx2 kernels agree") {
  const auto& s = kernels::scalar_table();
  const auto* v = kernels::avx2_table();
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 101u, 65521u, 2147483647u}) {
    std::uniform_int_distribution<std::uint32_t> val(0, p - 1);
    for (std::size_t n : {0, 1, 3, 7, 8, 9, 15, 16, 17, 31, 64, 65, 130}) {
      std::vector<std::uint32_t> dst(n), src(n);
      for (auto& x : dst) x = val(rng);
      for (auto& x : src) x = val(rng);
      const std::uint32_t c = val(rng);
      auto expect = dst;
      for (std::size_t k = 0; k < n; ++k)
        expect[k] = static_cast<std::uint32_t>((expect[k] + static_cast<std::uint64_t>(c) * src[k]) % p);
      auto a = dst;
      s.axpy(a.data(), src.data(), c, n, p);
      CHECK(a == expect);
      auto sc = dst;
      s.scale(sc.data(), c, n, p);
      for (std::size_t k = 0; k < n; ++k) CHECK(sc[k] == static_cast<std::uint64_t>(c) * dst[k] % p);
      if (v) {
        auto b = dst;
        v->axpy(b.data(), src.data(), c, n, p);
        CHECK(b == expect);
        auto vs = dst;
        v->scale(vs.data(), c, n, p);
        CHECK(vs == sc);
      }
    }
  }
}

TEST_CASE("matrix routines are kernel independent") {
  KernelGuard guard;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(9 + trial % 5, 23, 101, rng, 40);
    const auto b = random_matrix(23, 19, 101, rng);
    REQUIRE(kernels::select(kernels::Isa::Scalar));
    const auto ps = a * b;
    const auto es = rref(a);
    const auto ns = nullspace(a);
    if (kernels::select(kernels::Isa::Avx2)) {
      CHECK(a * b == ps);
      CHECK(rref(a).reduced == es.reduced);
      CHECK(nullspace(a) == ns);
    }
    CHECK(ps == naive_product(a, b));
  }
}

TEST_CASE("elimination") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t p = trial % 2 ? 101 : 3;
    const auto a = random_matrix(1 + trial % 7, 1 + trial % 11, p, rng, 50);
    const auto n = nullspace(a);
    CHECK(n.cols() + rank(a) == a.cols());
    CHECK((a * n).is_zero());
    CHECK(rank(n) == n.cols());
    const auto e = rref(a);
    CHECK(e.pivots.size() == rank(a));
    for (std::size_t k = 0; k < e.pivots.size(); ++k) CHECK(e.reduced(k, e.pivots[k]) == 1);
    const auto x = random_matrix(a.cols(), 2, p, rng);
    const auto rhs = a * x;
    const auto sol = solve(a, rhs);
    REQUIRE(sol);
    CHECK(a * *sol == rhs);
  }
  const auto m = Matrix::from_rows({{1, 2}, {3, 4}}, 2, 101);
  const auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(m * *inv == Matrix::identity(2, 101));
  CHECK_FALSE(inverse(Matrix::from_rows({{1, 2}, {2, 4}}, 2, 101)));
  CHECK_FALSE(solve(Matrix::from_rows({{1, 1}, {1, 1}}, 2, 101), Matrix::from_rows({{1}, {2}}, 1, 101)));
  const Matrix empty(0, 3, 101);
  CHECK(nullspace(empty) == Matrix::identity(3, 101));
}

TEST_CASE("one-sided inverses and complements") {
  std::mt19937_64 rng(5);
  const auto b = random_matrix(7, 3, 101, rng);
  REQUIRE(rank(b) == 3);
  CHECK(left_inverse(b) * b == Matrix::identity(3, 101));
  const auto a = b.transpose();
  CHECK(a * right_inverse(a) == Matrix::identity(3, 101));
  const auto idx = complement_indices(b, 7);
  REQUIRE(idx.size() == 4);
  Matrix full = b;
  for (auto k : idx) {
    Matrix e(7, 1, 101);
    e(k, 0) = 1;
    full = hstack(full, e);
  }
  CHECK(is_invertible(full));
  CHECK(rank(column_space(a)) == 3);
}
