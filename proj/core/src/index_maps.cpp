#include "csrpoly/index_maps.hpp"

#include <limits>

namespace csrpoly {

namespace {

constexpr auto kIndexMax = std::numeric_limits<index_t>::max();

index_t narrow_or_throw(wide_index_t v, const char* what) {
  if (v > kIndexMax) throw OverflowError(std::string(what) + " overflows 64-bit index range");
  return static_cast<index_t>(v);
}

void require_non_negative(index_t n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + " requires a non-negative argument");
}

[[noreturn]] void bad_tuple(const FeatureTuple& t, index_t dim, MappingKind kind) {
  throw DomainError("tuple (" + to_string(t) + ") is not a valid " + to_string(kind) +
                    " tuple for dimension " + std::to_string(dim));
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Polynomial ? "poly" : "inter";
}

Mode parse_mode(std::string_view text) {
  if (text == "poly" || text == "polynomial") return Mode::Polynomial;
  if (text == "inter" || text == "interaction") return Mode::Interaction;
  throw ArgumentError("unknown mode '" + std::string(text) + "' (expected poly or inter)");
}

MappingKind::MappingKind(int degree, Mode mode) : degree_(degree), mode_(mode) {
  if (degree != 2 && degree != 3) {
    throw ArgumentError("degree must be 2 or 3, got " + std::to_string(degree));
  }
}

std::string to_string(MappingKind kind) {
  return std::string(to_string(kind.mode())) + std::to_string(kind.degree());
}

FeatureTuple::FeatureTuple(std::initializer_list<index_t> indices)
    : FeatureTuple(std::span<const index_t>(indices.begin(), indices.size())) {}

FeatureTuple::FeatureTuple(std::span<const index_t> indices) {
  if (indices.size() > kMaxSize) {
    throw ArgumentError("feature tuples hold at most 3 indices");
  }
  std::copy(indices.begin(), indices.end(), idx_.begin());
  size_ = indices.size();
}

std::string to_string(const FeatureTuple& t) {
  std::string out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(t[k]);
  }
  return out;
}

index_t triangle(index_t n) {
  require_non_negative(n, "triangle");
  const auto w = static_cast<wide_index_t>(n);
  return narrow_or_throw(w * (w + 1) / 2, "triangle number");
}

index_t tetrahedral(index_t n) {
  require_non_negative(n, "tetrahedral");
  // n^3 fits in 128 bits only while n < 2^42; beyond that T3 overflows anyway.
  if (n > (index_t{1} << 42)) throw OverflowError("tetrahedral number overflows 64-bit index range");
  const auto w = static_cast<wide_index_t>(n);
  return narrow_or_throw(w * (w + 1) * (w + 2) / 6, "tetrahedral number");
}

index_t binomial(index_t n, index_t k) {
  require_non_negative(n, "binomial");
  require_non_negative(k, "binomial");
  if (k > n) return 0;
  k = std::min(k, n - k);
  wide_index_t r = 1;
  for (index_t step = 1; step <= k; ++step) {
    // r == C(n - k + step - 1, step - 1); the division is exact.
    r = r * (n - k + step) / step;
    narrow_or_throw(r, "binomial coefficient");
  }
  return static_cast<index_t>(r);
}

bool is_valid_tuple(const FeatureTuple& t, index_t dim, MappingKind kind) noexcept {
  if (t.size() != static_cast<std::size_t>(kind.degree())) return false;
  const bool strict = kind.mode() == Mode::Interaction;
  for (std::size_t p = 0; p < t.size(); ++p) {
    if (t[p] < 0 || t[p] >= dim) return false;
    if (p > 0 && (strict ? t[p] <= t[p - 1] : t[p] < t[p - 1])) return false;
  }
  return true;
}

index_t detail::forward_map(const FeatureTuple& t, index_t dim, MappingKind kind) noexcept {
  if (kind.degree() == 2) {
    return kind.mode() == Mode::Polynomial ? map2_polynomial(t[0], t[1], dim)
                                           : map2_interaction(t[0], t[1], dim);
  }
  return kind.mode() == Mode::Polynomial ? map3_polynomial(t[0], t[1], t[2], dim)
                                         : map3_interaction(t[0], t[1], t[2], dim);
}

index_t forward_map(const FeatureTuple& t, index_t dim, MappingKind kind) {
  if (!is_valid_tuple(t, dim, kind)) bad_tuple(t, dim, kind);
  expanded_dim(dim, kind);  // overflow guard for the unchecked closed form
  return detail::forward_map(t, dim, kind);
}

index_t map2_interaction(index_t i, index_t j, index_t dim) {
  return forward_map({i, j}, dim, {2, Mode::Interaction});
}

index_t map2_polynomial(index_t i, index_t j, index_t dim) {
  return forward_map({i, j}, dim, {2, Mode::Polynomial});
}

index_t map3_interaction(index_t i, index_t j, index_t k, index_t dim) {
  return forward_map({i, j, k}, dim, {3, Mode::Interaction});
}

index_t map3_polynomial(index_t i, index_t j, index_t k, index_t dim) {
  return forward_map({i, j, k}, dim, {3, Mode::Polynomial});
}

index_t expanded_dim(index_t dim, MappingKind kind) {
  require_non_negative(dim, "expanded_dim");
  const bool poly = kind.mode() == Mode::Polynomial;
  if (kind.degree() == 2) {
    if (poly) return triangle(dim);
    return dim < 2 ? 0 : triangle(dim - 1);
  }
  if (poly) return tetrahedral(dim);
  return dim < 3 ? 0 : tetrahedral(dim - 2);
}

index_t row_output_nnz(index_t nnz, MappingKind kind) {
  require_non_negative(nnz, "row_output_nnz");
  const index_t k = kind.degree();
  if (kind.mode() == Mode::Interaction) return binomial(nnz, k);
  if (nnz == 0) return 0;
  return binomial(checked::add(nnz, k - 1), k);
}

FeatureTuple invert_map(index_t col, index_t dim, MappingKind kind) {
  const index_t size = expanded_dim(dim, kind);
  if (col < 0 || col >= size) {
    throw DomainError("column " + std::to_string(col) + " outside [0, " +
                      std::to_string(size) + ") for " + to_string(kind) + " with dimension " +
                      std::to_string(dim));
  }
  const int degree = kind.degree();
  const index_t step = kind.mode() == Mode::Interaction ? 1 : 0;

  FeatureTuple t;
  {
    std::array<index_t, 3> init{};
    for (int p = 0; p < degree; ++p) init[p] = p * step;
    t = FeatureTuple(std::span<const index_t>(init.data(), static_cast<std::size_t>(degree)));
  }

  // Fix one position at a time: the largest value v whose smallest
  // completion (v, v+step, ...) still maps at or below col. The forward map
  // is increasing in v for a fixed prefix, so binary search applies.
  for (int p = 0; p < degree; ++p) {
    const index_t remaining = degree - 1 - p;
    index_t lo = p == 0 ? 0 : t[p - 1] + step;
    index_t hi = dim - 1 - remaining * step;
    auto smallest_with = [&](index_t v) {
      FeatureTuple probe = t;
      for (index_t q = 0; q <= remaining; ++q) probe[p + q] = v + q * step;
      return probe;
    };
    while (lo < hi) {
      const index_t mid = lo + (hi - lo + 1) / 2;
      if (detail::forward_map(smallest_with(mid), dim, kind) <= col) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    t = smallest_with(lo);
  }
  return t;
}

}  // namespace csrpoly
