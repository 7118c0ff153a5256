#ifndef GIAMG_IO_HPP
#define GIAMG_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "giamg/sparse.hpp"

namespace giamg {

// Writes content to path atomically: a sibling temp file is written first
// and renamed into place, so readers never see a partial artifact.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

// Matrix Market coordinate format, real, general or symmetric, 1-based.
// Reading a symmetric file mirrors the stored triangle. Values are written
// with 17 significant digits so a write/read round trip is bit-exact.
SparseMatrix read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const SparseMatrix& A, const std::filesystem::path& path,
                         bool symmetric = false);

// Vector files: one decimal value per line, 17 significant digits.
std::vector<double> read_vector(const std::filesystem::path& path);
void write_vector(std::span<const double> v, const std::filesystem::path& path);

// Shortest round-trippable representation helpers.
std::string format_double(double v);

}  // namespace giamg

#endif
