#include "qlab/ff/matrix.hpp"

#include <algorithm>
#include <utility>

#include "qlab/error.hpp"
#include "qlab/ff/kernels.hpp"

namespace qlab::ff {

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
  if (a.prime() != b.prime()) {
    fail(ErrorKind::Internal, std::string("matrix field mismatch in ") + op);
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n, std::uint32_t p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                         std::uint32_t p) {
  const Field f(p);
  Matrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorKind::Internal, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.reduce(rows[r][c]);
  }
  return m;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](value_type v) { return v == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::column(std::size_t c) const { return submatrix(0, c, rows_, 1); }

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix s(nr, nc, p_);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) s(r, c) = (*this)(r0 + r, c0 + c);
  return s;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix s(rows_, cols.size(), p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) s(r, c) = (*this)(r, cols[c]);
  return s;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix s(rows.size(), cols_, p_);
  for (std::size_t r = 0; r < rows.size(); ++r)
    std::copy_n(row(rows[r]).begin(), cols_, s.row(r).begin());
  return s;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) (*this)(r0 + r, c0 + c) = block(r, c);
}

void Matrix::add_row_multiple(std::size_t r, std::size_t s, value_type c) {
  kernels::active().axpy(row(r).data(), row(s).data(), c, cols_, p_);
}

void Matrix::scale_row(std::size_t r, value_type c) {
  kernels::active().scale(row(r).data(), c, cols_, p_);
}

void Matrix::swap_rows(std::size_t r, std::size_t s) {
  if (r == s) return;
  std::swap_ranges(row(r).begin(), row(r).end(), row(s).begin());
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "product");
  if (a.cols() != b.rows()) fail(ErrorKind::Internal, "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols(), a.prime());
  if (b.cols() == 0) return c;
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto* dst = c.row(i).data();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (const auto v = a(i, j)) k.axpy(dst, b.row(j).data(), v, b.cols(), a.prime());
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "sum");
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::Internal, "sum shape mismatch");
  Matrix c = a;
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < a.rows(); ++i) k.axpy(c.row(i).data(), b.row(i).data(), 1, a.cols(), a.prime());
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "difference");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Internal, "difference shape mismatch");
  Matrix c = a;
  const auto& k = kernels::active();
  const std::uint32_t minus_one = a.prime() - 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    k.axpy(c.row(i).data(), b.row(i).data(), minus_one, a.cols(), a.prime());
  return c;
}

Matrix scaled(const Matrix& a, std::uint32_t c) {
  Matrix s = a;
  for (std::size_t i = 0; i < a.rows(); ++i) s.scale_row(i, c % a.prime());
  return s;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "hstack");
  if (a.rows() != b.rows()) fail(ErrorKind::Internal, "hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols(), a.prime());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "vstack");
  if (a.cols() != b.cols()) fail(ErrorKind::Internal, "vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols(), a.prime());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "block_diagonal");
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.prime());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Echelon rref(Matrix m) {
  const Field f(m.prime());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    if (m(r, c) != 1) m.scale_row(r, f.inv(m(r, c)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m(i, c) != 0) m.add_row_multiple(i, r, f.neg(m(i, c)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return rref(m).pivots.size();
}

Matrix nullspace(const Matrix& a) {
  const Field f(a.prime());
  const auto [red, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix n(a.cols(), free.size(), a.prime());
  for (std::size_t k = 0; k < free.size(); ++k) {
    n(free[k], k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) n(pivots[i], k) = f.neg(red(i, free[k]));
  }
  return n;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "solve");
  if (a.rows() != b.rows()) fail(ErrorKind::Internal, "solve shape mismatch");
  const auto [red, pivots] = rref(hstack(a, b));
  Matrix x(a.cols(), b.cols(), a.prime());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= a.cols()) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(pivots[i], c) = red(i, a.cols() + c);
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  const auto [red, pivots] = rref(hstack(a, Matrix::identity(n, a.prime())));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  return red.submatrix(0, n, n, n);
}

bool is_invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

std::vector<std::size_t> independent_columns(const Matrix& a) {
  if (a.empty()) return {};
  return rref(a).pivots;
}

Matrix column_space(const Matrix& a) {
  const auto cols = independent_columns(a);
  return a.select_columns(cols);
}

std::vector<std::size_t> complement_indices(const Matrix& basis, std::size_t n) {
  const Matrix aug = hstack(basis.rows() == n ? basis : Matrix(n, 0, basis.prime()),
                            Matrix::identity(n, basis.prime()));
  std::vector<std::size_t> out;
  for (auto c : rref(aug).pivots) {
    if (c >= basis.cols()) out.push_back(c - basis.cols());
  }
  return out;
}

Matrix left_inverse(const Matrix& b) {
  // Pick rows R of B with B_R invertible; L has B_R^{-1} in columns R.
  const auto rows = independent_columns(b.transpose());
  if (rows.size() != b.cols()) fail(ErrorKind::Internal, "left_inverse: columns are dependent");
  const auto inv = inverse(b.select_rows(rows));
  Matrix l(b.cols(), b.rows(), b.prime());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < b.cols(); ++i) l(i, rows[j]) = (*inv)(i, j);
  return l;
}

Matrix right_inverse(const Matrix& a) { return left_inverse(a.transpose()).transpose(); }

}  // namespace qlab::ff
