#include "csrpoly/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "csrpoly/format.hpp"

namespace csrpoly {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

void parse_banner(const std::string& line) {
  auto tok = split_ws(line);
  if (tok.empty() || tok[0] != "%%MatrixMarket") {
    throw ParseError("missing %%MatrixMarket banner");
  }
  if (tok.size() != 5) {
    throw ParseError("banner must have the form '%%MatrixMarket matrix coordinate real general'");
  }
  const std::string object = lower(tok[1]);
  const std::string format = lower(tok[2]);
  const std::string field = lower(tok[3]);
  const std::string symmetry = lower(tok[4]);
  if (object != "matrix") throw UnsupportedError("unsupported object '" + object + "'");
  if (format != "coordinate") throw UnsupportedError("unsupported format '" + format + "'");
  if (field != "real") throw UnsupportedError("unsupported field '" + field + "'");
  if (symmetry != "general") throw UnsupportedError("unsupported symmetry '" + symmetry + "'");
}

}  // namespace

CsrMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market input");
  parse_banner(line);

  std::size_t line_no = 1;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (!out.empty() && out[0] == '%') continue;
      if (is_blank(out)) continue;
      return true;
    }
    return false;
  };
  auto where = [&] { return " at line " + std::to_string(line_no); };

  if (!next_content_line(line)) throw ParseError("missing size line");
  auto size_tok = split_ws(line);
  index_t n_rows = 0, n_cols = 0, nnz = 0;
  if (size_tok.size() != 3 || !parse_int(size_tok[0], n_rows) ||
      !parse_int(size_tok[1], n_cols) || !parse_int(size_tok[2], nnz) || n_rows < 0 ||
      n_cols < 0 || nnz < 0) {
    throw ParseError("malformed size line" + where());
  }

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(std::min<index_t>(nnz, 1 << 24)));
  for (index_t k = 0; k < nnz; ++k) {
    if (!next_content_line(line)) {
      throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                       std::to_string(k));
    }
    auto tok = split_ws(line);
    index_t r = 0, c = 0;
    double v = 0.0;
    if (tok.size() != 3 || !parse_int(tok[0], r) || !parse_int(tok[1], c) ||
        !parse_double(tok[2], v)) {
      throw ParseError("malformed entry line" + where());
    }
    if (r < 1 || r > n_rows || c < 1 || c > n_cols) {
      throw IndexError("entry (" + std::to_string(r) + ", " + std::to_string(c) +
                       ") outside declared shape" + where());
    }
    triplets.push_back({r - 1, c - 1, v});
  }
  if (next_content_line(line)) {
    throw ParseError("more entries than declared" + where());
  }
  // Explicit zeros in the file are stored zeros, so they survive a round trip.
  return canonicalize(n_rows, n_cols, triplets, ZeroPolicy::Keep);
}

CsrMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(const CsrMatrix& m, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  std::string buf;
  for (index_t i = 0; i < m.rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      buf.clear();
      buf += std::to_string(i + 1);
      buf += ' ';
      buf += std::to_string(cols[k] + 1);
      buf += ' ';
      buf += format_double(vals[k]);
      buf += '\n';
      out << buf;
    }
  }
}

void write_matrix_market(const CsrMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_matrix_market(m, out);
  if (!out) throw Error("write to " + path.string() + " failed");
}

}  // namespace csrpoly
