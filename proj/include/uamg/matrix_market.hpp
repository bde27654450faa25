#pragma once

#include <filesystem>
#include <iosfwd>

#include "uamg/sparse.hpp"

namespace uamg {

enum class MatrixSymmetry { general, symmetric };

// Coordinate-format Matrix Market. Indices are 1-based on disk. Symmetric
// files store the lower triangle and are expanded on read. `pattern`
// files get unit values.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

void write_matrix_market(std::ostream& out, const SparseMatrix& a,
                         MatrixSymmetry symmetry = MatrixSymmetry::symmetric);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a,
                         MatrixSymmetry symmetry = MatrixSymmetry::symmetric);

} // namespace uamg
