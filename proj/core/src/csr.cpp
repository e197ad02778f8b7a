#include "csrpoly/csr.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <string>

namespace csrpoly {

namespace {

std::string at_row(index_t row) { return " (row " + std::to_string(row) + ")"; }

void check_dims(index_t n_rows, index_t n_cols) {
  if (n_rows < 0 || n_cols < 0) {
    throw StructureError("matrix dimensions must be non-negative");
  }
}

}  // namespace

CsrMatrix::CsrMatrix() : row_ptr_{0} {}

CsrMatrix::CsrMatrix(index_t n_rows, index_t n_cols, std::vector<index_t> row_ptr,
                     std::vector<index_t> col_indices, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_ptr_(std::move(row_ptr)),
      col_indices_(col_indices.begin(), col_indices.end()),
      values_(values.begin(), values.end()) {
  validate();
}

CsrMatrix::CsrMatrix(detail::TrustedTag, index_t n_rows, index_t n_cols,
                     std::vector<index_t> row_ptr, detail::Buffer<index_t> col_indices,
                     detail::Buffer<double> values) noexcept
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_ptr_(std::move(row_ptr)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {}

void CsrMatrix::validate() const {
  check_dims(n_rows_, n_cols_);
  if (row_ptr_.size() != static_cast<std::size_t>(n_rows_) + 1) {
    throw StructureError("row_ptr must have n_rows + 1 entries, got " +
                         std::to_string(row_ptr_.size()));
  }
  if (col_indices_.size() != values_.size()) {
    throw StructureError("col_indices and values differ in length");
  }
  if (row_ptr_.front() != 0) {
    throw StructureError("row_ptr[0] must be 0");
  }
  for (index_t i = 0; i < n_rows_; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) {
      throw StructureError("row_ptr is decreasing" + at_row(i));
    }
  }
  if (row_ptr_.back() != nnz()) {
    throw StructureError("row_ptr[n_rows] = " + std::to_string(row_ptr_.back()) +
                         " but " + std::to_string(nnz()) + " entries are stored");
  }
  for (index_t i = 0; i < n_rows_; ++i) {
    index_t prev = -1;
    for (index_t c : row_cols(i)) {
      if (c < 0 || c >= n_cols_) {
        throw IndexError("column " + std::to_string(c) + " outside [0, " +
                         std::to_string(n_cols_) + ")" + at_row(i));
      }
      if (c <= prev) {
        throw NonCanonicalError("column indices not strictly increasing" + at_row(i));
      }
      prev = c;
    }
  }
}

bool CsrMatrix::identical_to(const CsrMatrix& other) const noexcept {
  return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_ &&
         row_ptr_ == other.row_ptr_ && col_indices_ == other.col_indices_ &&
         values_.size() == other.values_.size() &&
         (values_.empty() ||
          std::memcmp(values_.data(), other.values_.data(),
                      values_.size() * sizeof(double)) == 0);
}

DenseMatrix::DenseMatrix(index_t n_rows, index_t n_cols) : n_rows_(n_rows), n_cols_(n_cols) {
  check_dims(n_rows, n_cols);
  entries_.assign(static_cast<std::size_t>(checked::mul(n_rows, n_cols, "dense size")), 0.0);
}

DenseMatrix::DenseMatrix(index_t n_rows, index_t n_cols, std::vector<double> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
  check_dims(n_rows, n_cols);
  if (static_cast<index_t>(entries_.size()) != checked::mul(n_rows, n_cols, "dense size")) {
    throw StructureError("dense entries length does not match shape");
  }
}

CsrMatrix canonicalize(index_t n_rows, index_t n_cols, std::span<const Triplet> triplets,
                       ZeroPolicy zeros) {
  check_dims(n_rows, n_cols);
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
      throw IndexError("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside " + std::to_string(n_rows) + "x" + std::to_string(n_cols));
    }
  }

  std::vector<std::size_t> order(triplets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = triplets[a];
    const auto& tb = triplets[b];
    return ta.row != tb.row ? ta.row < tb.row : ta.col < tb.col;
  });

  std::vector<index_t> row_ptr(static_cast<std::size_t>(n_rows) + 1, 0);
  detail::Buffer<index_t> cols;
  detail::Buffer<double> vals;
  cols.reserve(triplets.size());
  vals.reserve(triplets.size());

  std::size_t k = 0;
  while (k < order.size()) {
    const auto& first = triplets[order[k]];
    double sum = first.value;
    std::size_t next = k + 1;
    while (next < order.size() && triplets[order[next]].row == first.row &&
           triplets[order[next]].col == first.col) {
      sum += triplets[order[next]].value;
      ++next;
    }
    if (sum != 0.0 || zeros == ZeroPolicy::Keep) {
      cols.push_back(first.col);
      vals.push_back(sum);
      ++row_ptr[static_cast<std::size_t>(first.row) + 1];
    }
    k = next;
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return {detail::TrustedTag{}, n_rows, n_cols, std::move(row_ptr), std::move(cols),
          std::move(vals)};
}

DenseMatrix to_dense(const CsrMatrix& m) {
  DenseMatrix out(m.rows(), m.cols());
  for (index_t i = 0; i < m.rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      out(i, cols[k]) = vals[k];
    }
  }
  return out;
}

CsrMatrix from_dense(const DenseMatrix& m) {
  std::vector<index_t> row_ptr;
  row_ptr.reserve(static_cast<std::size_t>(m.rows()) + 1);
  row_ptr.push_back(0);
  detail::Buffer<index_t> cols;
  detail::Buffer<double> vals;
  for (index_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    for (index_t j = 0; j < m.cols(); ++j) {
      if (row[j] != 0.0) {
        cols.push_back(j);
        vals.push_back(row[j]);
      }
    }
    row_ptr.push_back(static_cast<index_t>(cols.size()));
  }
  return {detail::TrustedTag{}, m.rows(), m.cols(), std::move(row_ptr), std::move(cols),
          std::move(vals)};
}

}  // namespace csrpoly
