#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

#include "csrpoly/checked.hpp"

namespace csrpoly {

/// Polynomial expansions allow repeated indices (squares, cubes);
/// interaction expansions only use distinct columns.
enum class Mode { Polynomial, Interaction };

/// "poly" / "inter".
std::string_view to_string(Mode mode) noexcept;
/// Accepts "poly", "polynomial", "inter", "interaction". Throws ArgumentError.
Mode parse_mode(std::string_view text);

/// Expansion degree (2 or 3) and mode.
class MappingKind {
 public:
  /// Throws ArgumentError unless degree is 2 or 3.
  MappingKind(int degree, Mode mode);

  int degree() const noexcept { return degree_; }
  Mode mode() const noexcept { return mode_; }

  friend bool operator==(const MappingKind&, const MappingKind&) = default;

 private:
  int degree_;
  Mode mode_;
};

/// e.g. "poly2", "inter3".
std::string to_string(MappingKind kind);

/// Ordered tuple of up to three input column indices.
class FeatureTuple {
 public:
  static constexpr std::size_t kMaxSize = 3;

  FeatureTuple() = default;
  /// Throws ArgumentError for more than kMaxSize indices.
  FeatureTuple(std::initializer_list<index_t> indices);
  explicit FeatureTuple(std::span<const index_t> indices);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  index_t operator[](std::size_t k) const noexcept { return idx_[k]; }
  index_t& operator[](std::size_t k) noexcept { return idx_[k]; }
  const index_t* begin() const noexcept { return idx_.data(); }
  const index_t* end() const noexcept { return idx_.data() + size_; }

  friend bool operator==(const FeatureTuple& a, const FeatureTuple& b) noexcept {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
  /// Lexicographic.
  friend std::strong_ordering operator<=>(const FeatureTuple& a,
                                          const FeatureTuple& b) noexcept {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<index_t, kMaxSize> idx_{};
  std::size_t size_ = 0;
};

/// Comma separated, e.g. "1,2,4".
std::string to_string(const FeatureTuple& t);

// Simplex numbers and binomials. All throw OverflowError when the result
// does not fit in index_t and DomainError on negative arguments.

/// n(n+1)/2
index_t triangle(index_t n);
/// n(n+1)(n+2)/6
index_t tetrahedral(index_t n);
/// C(n, k); 0 when k > n.
index_t binomial(index_t n, index_t k);

namespace detail {

// Unchecked forms. Callers guarantee the arguments lie in the mapping
// domain and that the matching expanded_dim fits in index_t; under those
// conditions no intermediate overflows.

constexpr index_t tri(index_t n) noexcept {
  return (n % 2 == 0) ? (n / 2) * (n + 1) : n * ((n + 1) / 2);
}

constexpr index_t tet(index_t n) noexcept {
  const auto w = static_cast<wide_index_t>(n);
  return static_cast<index_t>(w * (w + 1) * (w + 2) / 6);
}

constexpr index_t map2_interaction(index_t i, index_t j, index_t dim) noexcept {
  return tri(dim - 1) - (tri(dim - i - 1) - (j - i - 1));
}

constexpr index_t map2_polynomial(index_t i, index_t j, index_t dim) noexcept {
  return tri(dim) - (tri(dim - i) - (j - i));
}

constexpr index_t map3_interaction(index_t i, index_t j, index_t k, index_t dim) noexcept {
  return tet(dim - 2) - (tet(dim - i - 3) + tri(dim - j - 1) - (k - j - 1));
}

constexpr index_t map3_polynomial(index_t i, index_t j, index_t k, index_t dim) noexcept {
  return tet(dim) - (tet(dim - i - 1) + tri(dim - j) - (k - j));
}

/// Dispatch on kind; t must be valid for (dim, kind).
index_t forward_map(const FeatureTuple& t, index_t dim, MappingKind kind) noexcept;

}  // namespace detail

// Closed-form bijections from column tuples to expanded column indices.
// Each preserves lexicographic order and throws DomainError when the tuple
// violates its ordering or range precondition.

/// 0 <= i < j < dim
index_t map2_interaction(index_t i, index_t j, index_t dim);
/// 0 <= i <= j < dim
index_t map2_polynomial(index_t i, index_t j, index_t dim);
/// 0 <= i < j < k < dim
index_t map3_interaction(index_t i, index_t j, index_t k, index_t dim);
/// 0 <= i <= j <= k < dim
index_t map3_polynomial(index_t i, index_t j, index_t k, index_t dim);

/// True when t has kind.degree() indices, all in [0, dim), non-decreasing
/// (Polynomial) or strictly increasing (Interaction).
bool is_valid_tuple(const FeatureTuple& t, index_t dim, MappingKind kind) noexcept;

/// Forward map selected by kind. Throws DomainError for invalid tuples.
index_t forward_map(const FeatureTuple& t, index_t dim, MappingKind kind);

/// Number of expanded columns: T2(D), C(D,2), T3(D) or C(D,3).
index_t expanded_dim(index_t dim, MappingKind kind);

/// Products generated for a row with `nnz` stored entries:
/// C(nnz + K - 1, K) for Polynomial, C(nnz, K) for Interaction.
index_t row_output_nnz(index_t nnz, MappingKind kind);

/// Inverse of forward_map, found by binary search one position at a time.
/// Throws DomainError when col is outside [0, expanded_dim(dim, kind)).
FeatureTuple invert_map(index_t col, index_t dim, MappingKind kind);

}  // namespace csrpoly
