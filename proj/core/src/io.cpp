#include "giamg/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace giamg {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, long line, const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  long lineno = 0;
  std::string line;

  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, fmt, field, symmetry;
  header >> banner >> object >> fmt >> field >> symmetry;
  if (banner != "%%MatrixMarket") parse_fail(path, lineno, "missing %%MatrixMarket banner");
  object = lowercase(object);
  fmt = lowercase(fmt);
  field = lowercase(field);
  symmetry = lowercase(symmetry);
  if (object != "matrix" || fmt != "coordinate")
    parse_fail(path, lineno, "expected 'matrix coordinate' header, got '" + object + " " + fmt + "'");
  if (field != "real")
    parse_fail(path, lineno, "unsupported field '" + field + "' (only real)");
  if (symmetry != "general" && symmetry != "symmetric")
    parse_fail(path, lineno, "unsupported symmetry '" + symmetry + "' (general or symmetric)");
  const bool mirror = symmetry == "symmetric";

  // Skip comment and blank lines up to the size line.
  index_t nrows = -1, ncols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream sizes(line);
    if (!(sizes >> nrows >> ncols >> nnz)) parse_fail(path, lineno, "bad size line");
    break;
  }
  if (nrows < 0) parse_fail(path, lineno, "missing size line");

  std::vector<CooTriplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mirror ? 2 * nnz : nnz));
  index_t read = 0;
  while (read < nnz) {
    if (!std::getline(in, line)) parse_fail(path, lineno + 1, "unexpected end of file");
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    index_t r, c;
    double v;
    if (!(entry >> r >> c >> v)) parse_fail(path, lineno, "bad entry line");
    if (r < 1 || r > nrows || c < 1 || c > ncols)
      parse_fail(path, lineno, "index out of range");
    triplets.push_back({r - 1, c - 1, v});
    if (mirror && r != c) triplets.push_back({c - 1, r - 1, v});
    ++read;
  }
  SparseMatrix A = coo_to_csr_sum(std::move(triplets), nrows, ncols);
  validate(A);
  return A;
}

void write_matrix_market(const SparseMatrix& A, const std::filesystem::path& path, bool symmetric) {
  std::string out;
  out.reserve(static_cast<std::size_t>(A.nnz()) * 32 + 128);
  out += "%%MatrixMarket matrix coordinate real ";
  out += symmetric ? "symmetric\n" : "general\n";

  std::string body;
  body.reserve(static_cast<std::size_t>(A.nnz()) * 32);
  index_t written = 0;
  for (index_t i = 0; i < A.nrows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t j = A.col_indices[k];
      if (symmetric && j > i) continue;  // store the lower triangle
      body += std::to_string(i + 1);
      body += ' ';
      body += std::to_string(j + 1);
      body += ' ';
      body += format_double(A.values[k]);
      body += '\n';
      ++written;
    }
  }
  out += std::to_string(A.nrows) + " " + std::to_string(A.ncols) + " " + std::to_string(written) +
         "\n";
  out += body;
  atomic_write_text(path, out);
}

std::vector<double> read_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<double> v;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double x;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), x);
    if (ec != std::errc{}) parse_fail(path, lineno, "bad value '" + line + "'");
    (void)ptr;
    v.push_back(x);
  }
  return v;
}

void write_vector(std::span<const double> v, const std::filesystem::path& path) {
  std::string out;
  out.reserve(v.size() * 26);
  for (double x : v) {
    out += format_double(x);
    out += '\n';
  }
  atomic_write_text(path, out);
}

}  // namespace giamg
