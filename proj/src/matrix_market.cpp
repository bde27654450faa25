#include "uamg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "uamg/error.hpp"

namespace uamg {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

} // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("matrix market: empty input");

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix")
    throw ParseError("matrix market: missing %%MatrixMarket matrix banner");
  if (lower(format) != "coordinate")
    throw ParseError("matrix market: only coordinate format is supported");
  field = lower(field);
  symmetry = lower(symmetry);
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer" && field != "double")
    throw ParseError("matrix market: unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError("matrix market: unsupported symmetry '" + symmetry + "'");
  const bool symmetric = symmetry == "symmetric";

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::size_t nrows = 0, ncols = 0, entries = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> nrows >> ncols >> entries))
      throw ParseError("matrix market: malformed size line");
  }
  if (symmetric && nrows != ncols) throw ParseError("matrix market: symmetric but not square");

  std::vector<Triplet> triplets;
  triplets.reserve(symmetric ? 2 * entries : entries);
  std::size_t read = 0;
  while (read < entries && std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    std::size_t i = 0, j = 0;
    double v = 1.0;
    if (!(entry >> i >> j) || (!pattern && !(entry >> v)))
      throw ParseError("matrix market: malformed entry '" + line + "'");
    if (i == 0 || j == 0 || i > nrows || j > ncols)
      throw ParseError("matrix market: entry index out of range");
    triplets.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) triplets.push_back({j - 1, i - 1, v});
    ++read;
  }
  if (read != entries) throw ParseError("matrix market: fewer entries than declared");
  return assemble(nrows, ncols, triplets);
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a, MatrixSymmetry symmetry) {
  const bool sym = symmetry == MatrixSymmetry::symmetric;
  if (sym && !a.is_symmetric())
    throw InvalidInput("matrix market: cannot write a nonsymmetric matrix as symmetric");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (auto j : a.row_cols(i))
      if (!sym || j <= i) ++count;

  out << "%%MatrixMarket matrix coordinate real " << (sym ? "symmetric" : "general") << '\n';
  out << a.nrows() << ' ' << a.ncols() << ' ' << count << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (sym && cols[k] > i) continue;
      out << i + 1 << ' ' << cols[k] + 1 << ' ' << vals[k] << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a,
                         MatrixSymmetry symmetry) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  write_matrix_market(out, a, symmetry);
}

} // namespace uamg
