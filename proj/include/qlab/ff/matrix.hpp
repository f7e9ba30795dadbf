#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qlab/ff/field.hpp"

namespace qlab::ff {

// Dense row-major matrix over F_p. Entries are kept reduced in [0, p).
// Zero-row and zero-column shapes are valid and common (zero-dimensional vertex spaces).
class Matrix {
 public:
  using value_type = std::uint32_t;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, std::uint32_t p);
  // Rows given as nested lists of integers (reduced mod p).
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                          std::uint32_t p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t prime() const noexcept { return p_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  value_type operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<value_type> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const value_type> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<value_type>& data() const noexcept { return data_; }

  bool is_zero() const noexcept;
  Matrix transpose() const;
  Matrix column(std::size_t c) const;
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block);

  // row r <- row r + c * row s
  void add_row_multiple(std::size_t r, std::size_t s, value_type c);
  void scale_row(std::size_t r, value_type c);
  void swap_rows(std::size_t r, std::size_t s);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<value_type> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, std::uint32_t c);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);

struct Echelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

// Reduced row echelon form. Pivots are searched left to right, so callers that
// want "largest first" leading terms order their columns accordingly.
Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

// Columns form a basis of {x : A x = 0}; deterministic (one column per free
// variable of the RREF, free variable set to 1).
Matrix nullspace(const Matrix& a);

// Some X with A X = B, or nullopt when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);

// Indices of a maximal set of linearly independent columns (leftmost choice).
std::vector<std::size_t> independent_columns(const Matrix& a);
// Basis (as columns) of the column space, built from independent_columns.
Matrix column_space(const Matrix& a);
// Standard basis vectors e_k completing the columns of `basis` (assumed
// independent) to a basis of F_p^n; returned as the chosen indices k.
std::vector<std::size_t> complement_indices(const Matrix& basis, std::size_t n);
// For B with independent columns: L with L B = I.
Matrix left_inverse(const Matrix& b);
// For A with independent rows: R with A R = I.
Matrix right_inverse(const Matrix& a);

bool is_invertible(const Matrix& a);

}  // namespace qlab::ff
