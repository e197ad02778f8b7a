#pragma once

#include <cstdint>
#include <memory>
#include <new>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "csrpoly/checked.hpp"

namespace csrpoly {

namespace detail {
/// Tag for constructors that skip validation. Only for producers that build
/// canonical output by construction (canonicalize, expansion, ...).
struct TrustedTag {};

/// Allocator whose value-construction leaves trivial types uninitialized, so
/// resize() on a buffer that is about to be overwritten does not touch it.
template <class T>
struct DefaultInitAllocator : std::allocator<T> {
  template <class U>
  struct rebind {
    using other = DefaultInitAllocator<U>;
  };
  using std::allocator<T>::allocator;

  template <class U>
  void construct(U* p) noexcept(std::is_nothrow_default_constructible_v<U>) {
    ::new (static_cast<void*>(p)) U;
  }
  template <class U, class... Args>
  void construct(U* p, Args&&... args) {
    ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
  }
};

template <class T>
using Buffer = std::vector<T, DefaultInitAllocator<T>>;
}  // namespace detail

/// Compressed sparse row matrix of doubles.
///
/// Invariants, checked on construction:
///  - row_ptr has n_rows + 1 entries, starts at 0, is non-decreasing and ends
///    at nnz() == col_indices.size() == values.size();
///  - each row's column indices are strictly increasing and < n_cols.
///
/// Stored zeros are allowed. Instances are immutable.
class CsrMatrix {
 public:
  /// Empty 0x0 matrix.
  CsrMatrix();

  /// Validating constructor. Throws StructureError, IndexError or
  /// NonCanonicalError.
  CsrMatrix(index_t n_rows, index_t n_cols, std::vector<index_t> row_ptr,
            std::vector<index_t> col_indices, std::vector<double> values);

  CsrMatrix(detail::TrustedTag, index_t n_rows, index_t n_cols,
            std::vector<index_t> row_ptr, detail::Buffer<index_t> col_indices,
            detail::Buffer<double> values) noexcept;

  index_t rows() const noexcept { return n_rows_; }
  index_t cols() const noexcept { return n_cols_; }
  index_t nnz() const noexcept { return static_cast<index_t>(values_.size()); }

  std::span<const index_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const index_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  index_t row_nnz(index_t row) const noexcept {
    return row_ptr_[row + 1] - row_ptr_[row];
  }
  std::span<const index_t> row_cols(index_t row) const noexcept {
    return {col_indices_.data() + row_ptr_[row],
            static_cast<std::size_t>(row_nnz(row))};
  }
  std::span<const double> row_values(index_t row) const noexcept {
    return {values_.data() + row_ptr_[row], static_cast<std::size_t>(row_nnz(row))};
  }

  /// Re-checks every invariant; throws on the first violation.
  void validate() const;

  /// Structural equality with values compared by bit pattern.
  bool identical_to(const CsrMatrix& other) const noexcept;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  index_t n_rows_ = 0;
  index_t n_cols_ = 0;
  std::vector<index_t> row_ptr_;
  detail::Buffer<index_t> col_indices_;
  detail::Buffer<double> values_;
};

/// Row-major dense matrix; used by the baseline expansion and as an oracle.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  /// Zero-filled matrix. Throws OverflowError if n_rows * n_cols does not fit.
  DenseMatrix(index_t n_rows, index_t n_cols);
  /// Throws StructureError if entries.size() != n_rows * n_cols.
  DenseMatrix(index_t n_rows, index_t n_cols, std::vector<double> entries);

  index_t rows() const noexcept { return n_rows_; }
  index_t cols() const noexcept { return n_cols_; }

  double operator()(index_t r, index_t c) const noexcept {
    return entries_[static_cast<std::size_t>(r * n_cols_ + c)];
  }
  double& operator()(index_t r, index_t c) noexcept {
    return entries_[static_cast<std::size_t>(r * n_cols_ + c)];
  }

  std::span<const double> row(index_t r) const noexcept {
    return {entries_.data() + r * n_cols_, static_cast<std::size_t>(n_cols_)};
  }
  std::span<double> row(index_t r) noexcept {
    return {entries_.data() + r * n_cols_, static_cast<std::size_t>(n_cols_)};
  }

  std::span<const double> entries() const noexcept { return entries_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  index_t n_rows_ = 0;
  index_t n_cols_ = 0;
  std::vector<double> entries_;
};

struct Triplet {
  index_t row;
  index_t col;
  double value;
};

enum class ZeroPolicy { Drop, Keep };

/// Builds a canonical matrix from unordered (row, col, value) entries.
/// Duplicates are summed in input order. Sums that are exactly 0.0 are
/// dropped unless `zeros` is Keep.
CsrMatrix canonicalize(index_t n_rows, index_t n_cols, std::span<const Triplet> triplets,
                       ZeroPolicy zeros = ZeroPolicy::Drop);

DenseMatrix to_dense(const CsrMatrix& m);

/// Stores every entry that compares unequal to 0.0.
CsrMatrix from_dense(const DenseMatrix& m);

/// Random matrix with each cell independently nonzero with probability
/// `density`, values uniform on (0, 1].
///
/// The generator is std::mt19937_64 seeded with `seed`; only its raw 64-bit
/// output is consumed (no std distributions), so results are identical on
/// every platform. Cells are visited row-major. For each cell one draw x
/// gives u = (x >> 11) * 2^-53 in [0, 1); the cell is stored when
/// u < density, and then a second draw y gives the value
/// ((y >> 11) + 1) * 2^-53.
///
/// Throws ArgumentError if density is outside [0, 1] or a dimension is
/// negative.
CsrMatrix random_csr(index_t n_rows, index_t n_cols, double density, std::uint64_t seed);

}  // namespace csrpoly
