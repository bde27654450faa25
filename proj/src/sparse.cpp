#include "uamg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uamg/error.hpp"

namespace uamg {

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols,
                           std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices, std::vector<double> values)
    : nrows_(nrows), ncols_(ncols), row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)), values_(std::move(values)) {
  if (row_offsets_.size() != nrows_ + 1 || row_offsets_.front() != 0 ||
      row_offsets_.back() != values_.size() || col_indices_.size() != values_.size()) {
    throw InvalidInput("CSR arrays have inconsistent lengths");
  }
  for (std::size_t i = 0; i < nrows_; ++i) {
    const auto begin = row_offsets_[i];
    const auto end = row_offsets_[i + 1];
    if (end < begin) throw InvalidInput("row offsets decrease at row " + std::to_string(i));
    for (auto k = begin; k < end; ++k) {
      if (col_indices_[k] >= ncols_) throw InvalidInput("column index out of range");
      if (k > begin && col_indices_[k] <= col_indices_[k - 1])
        throw InvalidInput("columns not strictly increasing in row " + std::to_string(i));
      if (values_[k] == 0.0) throw InvalidInput("explicit zero stored");
    }
  }
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), std::size_t{0});
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return values_[row_offsets_[i] + static_cast<std::size_t>(it - cols.begin())];
}

std::size_t SparseMatrix::max_row_nnz() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 0; i < nrows_; ++i)
    best = std::max(best, row_offsets_[i + 1] - row_offsets_[i]);
  return best;
}

bool SparseMatrix::is_symmetric() const {
  if (nrows_ != ncols_) return false;
  return transpose(*this) == *this;
}

SparseMatrix assemble(std::size_t nrows, std::size_t ncols, std::span<const Triplet> triplets) {
  std::vector<std::size_t> counts(nrows + 1, 0);
  for (const auto& t : triplets) {
    if (t.row >= nrows || t.col >= ncols)
      throw InvalidInput("triplet index (" + std::to_string(t.row) + ", " +
                         std::to_string(t.col) + ") out of range");
    ++counts[t.row + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  // Bucket by row, then sort and merge inside each row.
  std::vector<std::pair<std::size_t, double>> bucket(triplets.size());
  std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
  for (const auto& t : triplets) bucket[fill[t.row]++] = {t.col, t.value};

  std::vector<std::size_t> offsets(nrows + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (std::size_t i = 0; i < nrows; ++i) {
    auto first = bucket.begin() + static_cast<std::ptrdiff_t>(counts[i]);
    auto last = bucket.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
    std::stable_sort(first, last,
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last;) {
      const auto col = it->first;
      double sum = 0.0;
      for (; it != last && it->first == col; ++it) sum += it->second;
      if (sum != 0.0) {
        cols.push_back(col);
        vals.push_back(sum);
      }
    }
    offsets[i + 1] = cols.size();
  }
  return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix assemble(std::span<const Triplet> triplets) {
  std::size_t n = 0;
  for (const auto& t : triplets) n = std::max({n, t.row + 1, t.col + 1});
  return assemble(n, n, triplets);
}

SparseMatrix transpose(const SparseMatrix& a) {
  std::vector<std::size_t> offsets(a.ncols() + 1, 0);
  for (auto c : a.col_indices()) ++offsets[c + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> cols(a.nnz());
  std::vector<double> vals(a.nnz());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const auto rc = a.row_cols(i);
    const auto rv = a.row_values(i);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      const auto dst = fill[rc[k]]++;
      cols[dst] = i;
      vals[dst] = rv[k];
    }
  }
  return SparseMatrix(a.ncols(), a.nrows(), std::move(offsets), std::move(cols), std::move(vals));
}

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.ncols() || y.size() != a.nrows())
    throw DimensionMismatch("spmv: matrix is " + std::to_string(a.nrows()) + "x" +
                            std::to_string(a.ncols()) + ", x has " + std::to_string(x.size()));
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    double sum = 0.0;
    for (auto k = offsets[i]; k < offsets[i + 1]; ++k) sum += vals[k] * x[cols[k]];
    y[i] = sum;
  }
}

Vector spmv(const SparseMatrix& a, std::span<const double> x) {
  Vector y(a.nrows());
  spmv(a, x, y);
  return y;
}

void residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b,
              std::span<double> y) {
  if (x.size() != a.ncols() || b.size() != a.nrows() || y.size() != a.nrows())
    throw DimensionMismatch("residual: operand sizes do not match the matrix");
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    double sum = 0.0;
    for (auto k = offsets[i]; k < offsets[i + 1]; ++k) sum += vals[k] * x[cols[k]];
    y[i] = b[i] - sum;
  }
}

double inf_norm(const SparseMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    double sum = 0.0;
    for (double v : a.row_values(i)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

Vector diagonal(const SparseMatrix& a) {
  Vector d(std::min(a.nrows(), a.ncols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.at(i, i);
  return d;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (auto& v : x) v *= alpha;
}

void project_out(std::span<double> x, std::span<const double> k) {
  const double kk = dot(k, k);
  if (kk == 0.0) return;
  const double c = dot(x, k) / kk;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * k[i];
}

} // namespace uamg
