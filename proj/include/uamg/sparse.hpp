#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uamg {

using Vector = std::vector<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Compressed sparse row matrix. Columns are strictly increasing within a
// row and no explicit zeros are stored. Symmetric operators keep both
// triangles.
class SparseMatrix {
public:
  SparseMatrix() = default;

  // Takes ownership of raw CSR arrays; throws InvalidInput when the
  // storage invariants do not hold.
  SparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices, std::vector<double> values);

  static SparseMatrix identity(std::size_t n);

  std::size_t nrows() const noexcept { return nrows_; }
  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  std::span<const std::size_t> row_cols(std::size_t i) const noexcept {
    return {col_indices_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }
  std::span<const double> row_values(std::size_t i) const noexcept {
    return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }

  // Stored value or 0.
  double at(std::size_t i, std::size_t j) const;

  std::size_t max_row_nnz() const noexcept;

  bool is_symmetric() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

// Sums duplicates, sorts rows and drops entries that sum to exactly zero.
SparseMatrix assemble(std::size_t nrows, std::size_t ncols, std::span<const Triplet> triplets);

// Square overload; dimension is 1 + the largest index seen.
SparseMatrix assemble(std::span<const Triplet> triplets);

SparseMatrix transpose(const SparseMatrix& a);

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y);
Vector spmv(const SparseMatrix& a, std::span<const double> x);

// y = b - A x
void residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b,
              std::span<double> y);

// max_i sum_j |a_ij|
double inf_norm(const SparseMatrix& a);

Vector diagonal(const SparseMatrix& a);

// Small helpers over contiguous vectors.
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);

// Removes the component of x along k.
void project_out(std::span<double> x, std::span<const double> k);

} // namespace uamg
