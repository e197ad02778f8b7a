#pragma once

#include <filesystem>
#include <iosfwd>

#include "csrpoly/csr.hpp"

namespace csrpoly {

/// Reads a `matrix coordinate real general` Matrix Market file. Entries may
/// appear in any order; duplicates are summed and explicit zeros kept. Lines
/// starting with `%` after the banner are skipped.
///
/// Throws ParseError, IndexError or UnsupportedError.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes the banner, the `rows cols nnz` size line and one `row col value`
/// line per stored entry in row-major order, 1-based, with shortest
/// round-trip decimal values.
void write_matrix_market(const CsrMatrix& m, std::ostream& out);
void write_matrix_market(const CsrMatrix& m, const std::filesystem::path& path);

}  // namespace csrpoly
